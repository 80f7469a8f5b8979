#include "tkb/rules.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "tkb/errors.hpp"
#include "tkb/normalize.hpp"
#include "tkb/tableau.hpp"

namespace tkb {

bool FactStore::insert(const GroundFact& f, Provenance prov) {
    provenance[f].push_back(std::move(prov));
    return facts.insert(f).second;
}

std::string FactStore::to_dl_text() const {
    std::string out;
    for (const auto& f : facts) {
        out += f.to_statement();
        out += "\n";
    }
    return out;
}

std::string FactStore::provenance_report() const {
    std::string out;
    for (const auto& [fact, provs] : provenance) {
        for (const auto& p : provs) {
            out += "# " + fact.to_statement() + " <- " + p.origin;
            for (std::size_t i = 0; i < p.bindings.size(); ++i) {
                out += (i ? ", " : " with ") + ("?" + p.bindings[i].first) + "=" +
                       p.bindings[i].second;
            }
            out += "\n";
        }
    }
    return out;
}

std::map<std::string, std::string> individual_representatives(const KnowledgeBase& kb) {
    std::map<std::string, std::string> parent;
    for (const auto& name : kb.signature().individuals) parent[name] = name;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) {
        std::string root = x;
        while (parent[root] != root) root = parent[root];
        return root;
    };
    for (const auto& ax : kb.abox()) {
        if (ax.kind != AxiomKind::SameIndividual) continue;
        std::string a = find(ax.i1), b = find(ax.i2);
        if (a == b) continue;
        if (b < a) std::swap(a, b);
        parent[b] = a; // smaller name wins
    }
    std::map<std::string, std::string> reps;
    for (const auto& [name, ignored] : parent) {
        (void)ignored;
        reps[name] = find(name);
    }
    return reps;
}

DlSafeRule make_safe(const DlSafeRule& rule, SafetyMode mode) {
    std::vector<std::string> vars;
    auto note = [&](const Atom& atom) {
        for (const auto& t : atom.terms) {
            if (t.is_variable() && std::find(vars.begin(), vars.end(), t.name) == vars.end()) {
                vars.push_back(t.name);
            }
        }
    };
    note(rule.head);
    for (const auto& atom : rule.body) note(atom);

    DlSafeRule safe = rule;
    for (const auto& v : vars) {
        bool guarded = false;
        for (const auto& atom : rule.body) {
            if (atom.is_dl()) continue;
            for (const auto& t : atom.terms) {
                if (t.is_variable() && t.name == v) { guarded = true; break; }
            }
            if (guarded) break;
        }
        if (guarded) continue;
        if (mode == SafetyMode::Strict) {
            throw UnsafeRuleError(v, "rule is not DL-safe: variable ?" + v +
                                         " does not occur in a non-DL body atom: " +
                                         rule.to_string());
        }
        safe.body.push_back(Atom::non_dl_atom(kGuardPredicate, {Term::variable(v)}));
    }
    return safe;
}

namespace {

// A relation index over the fact set plus the asserted ABox.
struct FactIndex {
    std::map<std::string, std::set<std::string>> concept_rel;
    std::map<std::string, std::set<std::pair<std::string, std::string>>> role_rel;
    std::vector<std::string> individuals; // representatives, sorted

    std::size_t relation_size(const Atom& atom) const {
        switch (atom.kind) {
        case Atom::Kind::Concept: {
            auto it = concept_rel.find(atom.predicate);
            return it == concept_rel.end() ? 0 : it->second.size();
        }
        case Atom::Kind::Role: {
            auto it = role_rel.find(atom.predicate);
            return it == role_rel.end() ? 0 : it->second.size();
        }
        case Atom::Kind::NonDl:
            return atom.predicate == kGuardPredicate ? individuals.size() : 0;
        }
        return 0;
    }
};

struct EntailmentChecker {
    const KnowledgeBase* base = nullptr;
    KnowledgeBase working; // base + facts derived so far
    std::size_t max_nodes = 100000;
    std::map<std::pair<std::string, std::string>, bool> positive; // monotone
    std::map<std::pair<std::string, std::string>, bool> negative_this_round;

    void rebuild(const KnowledgeBase& kb, const FactStore& store) {
        std::vector<Axiom> axioms = kb.all_axioms();
        for (const auto& f : store.facts) {
            if (f.kind == GroundFact::Kind::Concept) {
                axioms.push_back(Axiom::concept_assertion(atomic(f.predicate), f.subject));
            } else {
                axioms.push_back(
                    Axiom::role_assertion(RoleExpr::named(f.predicate), f.subject, f.object));
            }
        }
        working = KnowledgeBase(std::move(axioms), {});
        negative_this_round.clear();
    }

    bool concept_entailed(const std::string& concept_name, const std::string& individual) {
        const auto key = std::make_pair(concept_name, individual);
        if (auto it = positive.find(key); it != positive.end()) return true;
        if (auto it = negative_this_round.find(key); it != negative_this_round.end()) {
            return false;
        }
        TableauOptions options;
        options.max_nodes = max_nodes;
        auto verdict = is_satisfiable_concept(
            working, conjunction({nominal({individual}), negation(atomic(concept_name))}),
            options);
        const bool entailed = verdict.outcome == TableauOutcome::Unsatisfiable;
        if (entailed) positive[key] = true;
        else negative_this_round[key] = true;
        return entailed;
    }
};

struct RuleEvaluator {
    const FactIndex& index;
    const std::map<std::string, std::string>& reps;
    EntailmentChecker* entailment = nullptr; // null in asserted mode
    const std::set<GroundFact>* delta = nullptr; // semi-naive restriction when set

    std::string resolve(const Term& t, const std::map<std::string, std::string>& binding) const {
        if (t.is_variable()) {
            auto it = binding.find(t.name);
            return it == binding.end() ? std::string() : it->second;
        }
        auto it = reps.find(t.name);
        return it == reps.end() ? t.name : it->second;
    }

    bool in_delta(const GroundFact& f) const { return delta && delta->count(f) > 0; }

    // Enumerates bindings satisfying body[pos..]; calls sink for each
    // complete binding (with a flag telling whether some atom matched the
    // delta set).
    void join(const std::vector<Atom>& body, std::size_t pos,
              std::map<std::string, std::string>& binding, bool delta_used,
              const std::function<void(const std::map<std::string, std::string>&, bool)>& sink) {
        if (pos == body.size()) {
            sink(binding, delta_used);
            return;
        }
        const Atom& atom = body[pos];
        switch (atom.kind) {
        case Atom::Kind::NonDl: {
            if (atom.predicate != kGuardPredicate) return; // empty relation
            const Term& t = atom.terms[0];
            std::string bound = resolve(t, binding);
            if (!bound.empty()) {
                join(body, pos + 1, binding, delta_used, sink);
                return;
            }
            for (const auto& ind : index.individuals) {
                binding[t.name] = ind;
                join(body, pos + 1, binding, delta_used, sink);
                binding.erase(t.name);
            }
            return;
        }
        case Atom::Kind::Concept: {
            const Term& t = atom.terms[0];
            std::string bound = resolve(t, binding);
            auto rel = index.concept_rel.find(atom.predicate);
            if (!bound.empty()) {
                const bool in_store =
                    rel != index.concept_rel.end() && rel->second.count(bound) > 0;
                bool holds = in_store;
                if (!holds && entailment) {
                    holds = entailment->concept_entailed(atom.predicate, bound);
                }
                if (holds) {
                    const bool d = in_store &&
                                   in_delta(GroundFact::concept_fact(atom.predicate, bound));
                    join(body, pos + 1, binding, delta_used || d, sink);
                }
                return;
            }
            if (entailment) {
                for (const auto& ind : index.individuals) {
                    const bool in_store =
                        rel != index.concept_rel.end() && rel->second.count(ind) > 0;
                    if (!in_store && !entailment->concept_entailed(atom.predicate, ind)) {
                        continue;
                    }
                    binding[t.name] = ind;
                    const bool d =
                        in_store && in_delta(GroundFact::concept_fact(atom.predicate, ind));
                    join(body, pos + 1, binding, delta_used || d, sink);
                    binding.erase(t.name);
                }
                return;
            }
            if (rel == index.concept_rel.end()) return;
            for (const auto& ind : rel->second) {
                binding[t.name] = ind;
                const bool d = in_delta(GroundFact::concept_fact(atom.predicate, ind));
                join(body, pos + 1, binding, delta_used || d, sink);
                binding.erase(t.name);
            }
            return;
        }
        case Atom::Kind::Role: {
            auto rel = index.role_rel.find(atom.predicate);
            if (rel == index.role_rel.end()) return;
            const Term& ts = atom.terms[0];
            const Term& to = atom.terms[1];
            const std::string bs = resolve(ts, binding);
            const std::string bo = resolve(to, binding);
            for (const auto& [s, o] : rel->second) {
                if (!bs.empty() && s != bs) continue;
                if (!bo.empty() && o != bo) continue;
                bool added_s = false, added_o = false;
                if (bs.empty()) { // unbound variable
                    binding[ts.name] = s;
                    added_s = true;
                }
                if (bo.empty()) {
                    // r(?x, ?x): the first bind may have fixed this term too.
                    const std::string now = resolve(to, binding);
                    if (now.empty()) {
                        binding[to.name] = o;
                        added_o = true;
                    } else if (now != o) {
                        if (added_s) binding.erase(ts.name);
                        continue;
                    }
                }
                const bool d = in_delta(GroundFact::role_fact(atom.predicate, s, o));
                join(body, pos + 1, binding, delta_used || d, sink);
                if (added_o) binding.erase(to.name);
                if (added_s) binding.erase(ts.name);
            }
            return;
        }
        }
    }

    // Body atoms sorted by ascending relation size; ties by predicate name,
    // then original position.
    std::vector<Atom> evaluation_order(const DlSafeRule& rule) const {
        std::vector<std::pair<std::tuple<std::size_t, std::string, std::size_t>, Atom>> keyed;
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            keyed.emplace_back(
                std::make_tuple(index.relation_size(rule.body[i]), rule.body[i].predicate, i),
                rule.body[i]);
        }
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Atom> out;
        out.reserve(keyed.size());
        for (auto& [key, atom] : keyed) {
            (void)key;
            out.push_back(std::move(atom));
        }
        return out;
    }

    std::vector<std::pair<GroundFact, Provenance>> evaluate(const DlSafeRule& rule,
                                                            const std::string& origin,
                                                            bool require_delta) {
        std::vector<std::pair<GroundFact, Provenance>> out;
        auto ordered = evaluation_order(rule);
        std::map<std::string, std::string> binding;
        join(ordered, 0, binding, false, [&](const std::map<std::string, std::string>& b,
                                             bool delta_used) {
            if (require_delta && !delta_used) return;
            GroundFact fact =
                rule.head.kind == Atom::Kind::Concept
                    ? GroundFact::concept_fact(rule.head.predicate, resolve(rule.head.terms[0], b))
                    : GroundFact::role_fact(rule.head.predicate, resolve(rule.head.terms[0], b),
                                            resolve(rule.head.terms[1], b));
            Provenance prov;
            prov.origin = origin;
            for (const auto& [var, value] : b) prov.bindings.emplace_back(var, value);
            out.emplace_back(std::move(fact), std::move(prov));
        });
        return out;
    }
};

FactIndex build_index(const FactStore& store, const std::map<std::string, std::string>& reps) {
    FactIndex index;
    std::set<std::string> inds;
    for (const auto& [name, rep] : reps) {
        (void)name;
        inds.insert(rep);
    }
    index.individuals.assign(inds.begin(), inds.end());
    for (const auto& f : store.facts) {
        if (f.kind == GroundFact::Kind::Concept) {
            index.concept_rel[f.predicate].insert(f.subject);
        } else {
            index.role_rel[f.predicate].insert({f.subject, f.object});
        }
    }
    return index;
}

// Asserted ABox facts over representatives. Only atomic concept assertions
// become facts; complex assertions take part via entailment checks only.
void seed_asserted(const KnowledgeBase& kb, const std::map<std::string, std::string>& reps,
                   FactStore& store) {
    auto rep = [&](const std::string& n) {
        auto it = reps.find(n);
        return it == reps.end() ? n : it->second;
    };
    for (const auto& ax : kb.abox()) {
        if (ax.kind == AxiomKind::ConceptAssertion && ax.c1->kind() == ConceptKind::Atomic) {
            store.insert(GroundFact::concept_fact(ax.c1->name(), rep(ax.i1)), {"asserted", {}});
        } else if (ax.kind == AxiomKind::RoleAssertion) {
            store.insert(GroundFact::role_fact(ax.r1.name, rep(ax.i1), rep(ax.i2)),
                         {"asserted", {}});
        }
    }
}

} // namespace

std::set<GroundFact> apply_rule(const DlSafeRule& rule, const KnowledgeBase& kb,
                                const FactStore& store) {
    auto reps = individual_representatives(kb);
    FactStore combined = store;
    seed_asserted(kb, reps, combined);
    FactIndex index = build_index(combined, reps);
    RuleEvaluator evaluator{index, reps, nullptr, nullptr};
    std::set<GroundFact> out;
    for (auto& [fact, prov] : evaluator.evaluate(rule, rule.to_string(), false)) {
        (void)prov;
        if (!combined.contains(fact)) out.insert(fact);
    }
    return out;
}

FactStore materialize(const KnowledgeBase& kb, const MaterializeOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    auto reps = individual_representatives(kb);

    std::vector<DlSafeRule> rules;
    for (const auto& rule : kb.rules()) rules.push_back(make_safe(rule, options.safety));
    for (const auto& rule : compile_chains_to_rules(kb)) rules.push_back(rule);

    EntailmentChecker checker;
    const bool entailment = options.mode == MaterializeMode::Entailment;
    if (entailment) {
        TableauOptions topts;
        topts.max_nodes = options.tableau_max_nodes;
        auto verdict = is_consistent(kb, topts);
        if (verdict.outcome == TableauOutcome::Unsatisfiable) {
            throw InconsistentKbError(
                "refusing to materialize over an inconsistent knowledge base");
        }
        checker.max_nodes = options.tableau_max_nodes;
    }

    FactStore store;
    seed_asserted(kb, reps, store);

    // Upper bound on rounds: one new fact per round at worst.
    const auto& sig = kb.signature();
    const std::size_t n_inds = sig.individuals.size();
    const std::size_t fact_bound =
        sig.concepts.size() * n_inds + sig.roles.size() * n_inds * n_inds + 1;

    std::set<GroundFact> delta = store.facts;
    for (std::size_t round = 0; round < fact_bound; ++round) {
        if (options.timeout_seconds > 0) {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            if (elapsed.count() > options.timeout_seconds) {
                store.incomplete = true;
                return store;
            }
        }
        if (entailment) checker.rebuild(kb, store);
        FactIndex index = build_index(store, reps);

        std::vector<std::pair<GroundFact, Provenance>> fresh;
        for (const auto& rule : rules) {
            RuleEvaluator evaluator{index, reps, entailment ? &checker : nullptr,
                                    entailment ? nullptr : &delta};
            // Entailment checks can flip with any store growth, so entailment
            // mode re-evaluates naively; asserted mode is semi-naive.
            const bool require_delta = !entailment && round > 0;
            for (auto& hit : evaluator.evaluate(rule, rule.to_string(), require_delta)) {
                if (!store.contains(hit.first)) fresh.push_back(std::move(hit));
            }
        }
        if (fresh.empty()) break;
        delta.clear();
        for (auto& [fact, prov] : fresh) {
            if (store.insert(fact, std::move(prov))) delta.insert(fact);
        }
    }

    // Facts that also follow from the base KB alone get a second provenance
    // entry, so rule-derived and ontology-derived knowledge stay separable.
    if (entailment) {
        EntailmentChecker base_checker;
        base_checker.max_nodes = options.tableau_max_nodes;
        FactStore empty;
        base_checker.rebuild(kb, empty);

        std::set<GroundFact> base_role_closure;
        {
            FactStore base;
            seed_asserted(kb, reps, base);
            const RoleClosure closure = role_closure(kb);
            for (const auto& f : base.facts) {
                if (f.kind != GroundFact::Kind::Role) continue;
                auto it = closure.supers.find(RoleExpr::named(f.predicate));
                if (it == closure.supers.end()) continue;
                for (const auto& sup : it->second) {
                    if (!sup.is_inverse()) {
                        base_role_closure.insert(
                            GroundFact::role_fact(sup.name, f.subject, f.object));
                    } else {
                        base_role_closure.insert(
                            GroundFact::role_fact(sup.name, f.object, f.subject));
                    }
                }
            }
        }
        for (const auto& f : store.facts) {
            const auto& provs = store.provenance[f];
            bool rule_derived = false;
            for (const auto& p : provs) {
                if (p.origin != "asserted" && p.origin != "entailed") rule_derived = true;
            }
            if (!rule_derived) continue;
            bool base_entailed = false;
            if (f.kind == GroundFact::Kind::Concept) {
                base_entailed = base_checker.concept_entailed(f.predicate, f.subject);
            } else {
                base_entailed = base_role_closure.count(f) > 0;
            }
            if (base_entailed) store.provenance[f].push_back({"entailed", {}});
        }
    }
    return store;
}

} // namespace tkb
