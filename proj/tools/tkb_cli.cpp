// tableau-kb command line front end.
//
// Exit codes: 0 success/consistent/entailed; 1 a semantic "no" (inconsistent,
// not entailed, no model); 2 input error (syntax, validation, unsafe rule);
// 3 resource limit reached (node cap, oracle budget).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tkb/errors.hpp"
#include "tkb/oracle.hpp"
#include "tkb/parser.hpp"
#include "tkb/reasoner.hpp"
#include "tkb/rules.hpp"
#include "tkb/tableau.hpp"
#include "tkb/turtle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceLimit = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tkb::Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

enum class Format { Dl, Ttl };

Format format_for(const std::string& path, const std::string& override_format) {
    if (override_format == "dl") return Format::Dl;
    if (override_format == "ttl") return Format::Ttl;
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".ttl") return Format::Ttl;
    return Format::Dl;
}

tkb::KnowledgeBase load_kb(const std::string& path, const std::string& override_format) {
    const std::string text = read_file(path);
    if (format_for(path, override_format) == Format::Ttl) {
        auto result = tkb::from_turtle(text);
        for (const auto& d : result.diagnostics) {
            std::cerr << path << ": " << d.to_string() << "\n";
        }
        return std::move(result.kb);
    }
    return tkb::parse_dl(text);
}

// Validation gate shared by the reasoning commands.
bool validate_or_report(const tkb::KnowledgeBase& kb, const std::string& path,
                        bool strict_rules) {
    auto diagnostics = tkb::validate(kb, strict_rules);
    bool errors = false;
    for (const auto& d : diagnostics) {
        std::cerr << path << ": " << d.to_string() << "\n";
        errors = errors || d.severity == tkb::Diagnostic::Severity::Error;
    }
    return !errors;
}

std::size_t max_nodes_default() {
    if (const char* env = std::getenv("TABLEAUKB_MAX_NODES")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 100000;
}

tkb::KnowledgeBase facts_as_kb(const tkb::FactStore& store) {
    std::vector<tkb::Axiom> axioms;
    for (const auto& f : store.facts) {
        if (f.kind == tkb::GroundFact::Kind::Concept) {
            axioms.push_back(tkb::Axiom::concept_assertion(tkb::atomic(f.predicate), f.subject));
        } else {
            axioms.push_back(tkb::Axiom::role_assertion(tkb::RoleExpr::named(f.predicate),
                                                        f.subject, f.object));
        }
    }
    return tkb::KnowledgeBase(std::move(axioms), {});
}

tkb::KnowledgeBase hierarchy_as_kb(const tkb::ConceptHierarchy& hierarchy) {
    auto as_concept = [](const std::string& name) -> tkb::ConceptPtr {
        if (name == tkb::kTopClass) return tkb::top();
        if (name == tkb::kBottomClass) return tkb::bottom();
        return tkb::atomic(name);
    };
    std::vector<tkb::Axiom> axioms;
    for (const auto& node : hierarchy.nodes) {
        for (std::size_t i = 1; i < node.members.size(); ++i) {
            axioms.push_back(tkb::Axiom::concept_equivalence(as_concept(node.members[0]),
                                                             as_concept(node.members[i])));
        }
    }
    for (const auto& [parent, child] : hierarchy.edges) {
        axioms.push_back(
            tkb::Axiom::concept_inclusion(as_concept(hierarchy.nodes[child].members.front()),
                                          as_concept(hierarchy.nodes[parent].members.front())));
    }
    return tkb::KnowledgeBase(std::move(axioms), {});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tableau-kb: a description-logic knowledge-base engine"};
    app.require_subcommand(1);

    std::string input, output_path, format_override, output_format = "text";
    std::string mode = "asserted";
    bool strict_rules = false, trace = false, serial = false;
    std::size_t max_nodes = max_nodes_default();
    int oracle_bound = 4;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "input file (.dl or .ttl)")->required();
        cmd->add_option("--format", format_override, "override input format")
            ->check(CLI::IsMember({"dl", "ttl"}));
    };

    auto* cmd_check = app.add_subcommand("check", "tableau consistency check");
    add_input(cmd_check);
    cmd_check->add_option("--max-nodes", max_nodes, "tableau node cap");
    cmd_check->add_flag("--trace", trace, "print the rule application trace");

    auto* cmd_validate = app.add_subcommand("validate", "admissibility diagnostics");
    add_input(cmd_validate);
    cmd_validate->add_flag("--strict-rules", strict_rules, "reject non-DL-safe rules");

    auto* cmd_classify = app.add_subcommand("classify", "concept hierarchy");
    add_input(cmd_classify);
    cmd_classify->add_option("--max-nodes", max_nodes, "tableau node cap");
    cmd_classify->add_option("--output", output_format, "output format")
        ->check(CLI::IsMember({"text", "ttl"}));

    auto* cmd_realize = app.add_subcommand("realize", "most-specific concepts per individual");
    add_input(cmd_realize);
    cmd_realize->add_option("--max-nodes", max_nodes, "tableau node cap");

    auto* cmd_materialize = app.add_subcommand("materialize", "rule/chain fixpoint");
    add_input(cmd_materialize);
    cmd_materialize->add_option("--mode", mode, "DL-atom evaluation mode")
        ->check(CLI::IsMember({"asserted", "entailment"}));
    cmd_materialize->add_flag("--strict-rules", strict_rules, "reject non-DL-safe rules");
    cmd_materialize->add_flag("--trace", trace, "append provenance comments");
    cmd_materialize->add_option("--max-nodes", max_nodes, "tableau node cap");
    cmd_materialize->add_option("--output", output_format, "output format")
        ->check(CLI::IsMember({"text", "ttl"}));

    auto* cmd_convert = app.add_subcommand("convert", "translate between .dl and .ttl");
    add_input(cmd_convert);
    cmd_convert->add_option("output", output_path, "output file (.dl or .ttl)")->required();

    auto* cmd_oracle = app.add_subcommand("oracle", "brute-force finite model search");
    add_input(cmd_oracle);
    cmd_oracle->add_option("--oracle-bound", oracle_bound, "maximum domain size");
    cmd_oracle->add_flag("--serial", serial, "disable parallel search");

    CLI11_PARSE(app, argc, argv);

    try {
        tkb::KnowledgeBase kb = load_kb(input, format_override);

        if (cmd_validate->parsed()) {
            auto diagnostics = tkb::validate(kb, strict_rules);
            bool errors = false;
            for (const auto& d : diagnostics) {
                std::cerr << input << ": " << d.to_string() << "\n";
                errors = errors || d.severity == tkb::Diagnostic::Severity::Error;
            }
            if (errors) {
                std::cout << diagnostics.size() << " problem(s) found\n";
                return kExitInputError;
            }
            std::cout << "ok\n";
            return kExitOk;
        }

        if (cmd_convert->parsed()) {
            std::ofstream out(output_path, std::ios::binary);
            if (!out) throw tkb::Error("cannot open '" + output_path + "'");
            if (format_for(output_path, "") == Format::Ttl) {
                out << tkb::to_turtle_text(kb);
            } else {
                out << tkb::serialize_dl(kb);
            }
            return kExitOk;
        }

        if (cmd_oracle->parsed()) {
            tkb::OracleOptions options;
            options.parallel = !serial;
            auto model = tkb::find_model(kb, oracle_bound, options);
            if (!model) {
                std::cout << "no model within domain bound " << oracle_bound << "\n";
                return kExitNo;
            }
            std::cout << model->to_table();
            return kExitOk;
        }

        // The reasoning commands require an admissible KB.
        if (!validate_or_report(kb, input, strict_rules)) return kExitInputError;

        tkb::TableauOptions topts;
        topts.max_nodes = max_nodes;

        if (cmd_check->parsed()) {
            auto verdict = tkb::is_consistent(kb, topts);
            if (verdict.possibly_incomplete) {
                std::cerr << input << ": warning [possibly-incomplete] "
                          << verdict.incompleteness_note << "\n";
            }
            if (trace) {
                for (const auto& line : verdict.trace) std::cout << line << "\n";
            }
            switch (verdict.outcome) {
            case tkb::TableauOutcome::Satisfiable:
                std::cout << "consistent\n";
                return kExitOk;
            case tkb::TableauOutcome::Unsatisfiable:
                std::cout << "inconsistent\n";
                return kExitNo;
            case tkb::TableauOutcome::Inconclusive:
                std::cout << "inconclusive (node cap " << max_nodes << " reached)\n";
                return kExitResourceLimit;
            }
        }

        if (cmd_classify->parsed()) {
            auto hierarchy = tkb::classify(kb, topts);
            if (output_format == "ttl") {
                std::cout << tkb::to_turtle_text(hierarchy_as_kb(hierarchy));
            } else {
                std::cout << hierarchy.to_text();
            }
            if (hierarchy.inconsistent) {
                std::cerr << input << ": error [inconsistent] knowledge base is inconsistent; "
                          << "hierarchy is degenerate\n";
                return kExitNo;
            }
            return kExitOk;
        }

        if (cmd_realize->parsed()) {
            auto base = tkb::is_consistent(kb, topts);
            if (base.outcome == tkb::TableauOutcome::Unsatisfiable) {
                std::cerr << input << ": error [inconsistent] cannot realize an inconsistent "
                          << "knowledge base\n";
                return kExitNo;
            }
            if (base.outcome == tkb::TableauOutcome::Inconclusive) {
                std::cout << "inconclusive (node cap " << max_nodes << " reached)\n";
                return kExitResourceLimit;
            }
            for (const auto& [individual, concepts] : tkb::realize(kb, topts)) {
                std::cout << individual << ":";
                for (const auto& c : concepts) std::cout << " " << c;
                std::cout << "\n";
            }
            return kExitOk;
        }

        if (cmd_materialize->parsed()) {
            tkb::MaterializeOptions mopts;
            mopts.mode = mode == "entailment" ? tkb::MaterializeMode::Entailment
                                              : tkb::MaterializeMode::Asserted;
            mopts.safety = strict_rules ? tkb::SafetyMode::Strict : tkb::SafetyMode::Auto;
            mopts.tableau_max_nodes = max_nodes;
            auto store = tkb::materialize(kb, mopts);
            if (output_format == "ttl") {
                std::cout << tkb::to_turtle_text(facts_as_kb(store));
            } else {
                std::cout << store.to_dl_text();
            }
            if (trace) std::cout << store.provenance_report();
            if (store.incomplete) {
                std::cerr << input << ": warning [incomplete] materialization timed out\n";
                return kExitResourceLimit;
            }
            return kExitOk;
        }
    } catch (const tkb::ParseError& e) {
        std::cerr << input << ":" << e.what() << "\n";
        return kExitInputError;
    } catch (const tkb::UnsafeRuleError& e) {
        std::cerr << input << ": error [unsafe-rule] " << e.what() << "\n";
        return kExitInputError;
    } catch (const tkb::InconsistentKbError& e) {
        std::cerr << input << ": error [inconsistent] " << e.what() << "\n";
        return kExitNo;
    } catch (const tkb::BudgetExceededError& e) {
        std::cerr << input << ": error [budget] " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const tkb::ResourceLimitError& e) {
        std::cerr << input << ": error [node-cap] " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const tkb::Error& e) {
        std::cerr << input << ": error " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
