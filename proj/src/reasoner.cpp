#include "tkb/reasoner.hpp"

#include <algorithm>
#include <functional>

#include "tkb/errors.hpp"
#include "tkb/normalize.hpp"
#include "tkb/rules.hpp"

namespace tkb {

int ConceptHierarchy::node_of(const std::string& concept_name) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& m = nodes[i].members;
        if (std::find(m.begin(), m.end(), concept_name) != m.end()) return static_cast<int>(i);
    }
    return -1;
}

bool ConceptHierarchy::below(const std::string& sub, const std::string& sup) const {
    const int from = node_of(sub), to = node_of(sup);
    if (from < 0 || to < 0) return false;
    if (from == to) return true;
    // upward reachability from `from` to `to`
    std::vector<int> stack{from};
    std::set<int> seen{from};
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (const auto& [parent, child] : edges) {
            if (child == cur && !seen.count(parent)) {
                if (parent == to) return true;
                seen.insert(parent);
                stack.push_back(parent);
            }
        }
    }
    return false;
}

std::string ConceptHierarchy::to_text() const {
    std::string out;
    std::function<void(int, int)> print = [&](int node, int depth) {
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        const auto& members = nodes[node].members;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i) out += " = ";
            out += members[i];
        }
        out += "\n";
        std::vector<int> children;
        for (const auto& [parent, child] : edges) {
            if (parent == node) children.push_back(child);
        }
        std::sort(children.begin(), children.end(), [&](int a, int b) {
            return nodes[a].members.front() < nodes[b].members.front();
        });
        for (int child : children) print(child, depth + 1);
    };
    if (!nodes.empty()) print(0, 0);
    return out;
}

std::string ConceptHierarchy::to_dl_text() const {
    std::string out;
    for (const auto& [parent, child] : edges) {
        auto render = [](const std::string& name) { return name; };
        out += render(nodes[child].members.front()) + " SUBCLASS " +
               render(nodes[parent].members.front()) + ".\n";
    }
    return out;
}

bool entails(const KnowledgeBase& kb, const Axiom& ax, const TableauOptions& options) {
    switch (ax.kind) {
    case AxiomKind::ConceptInclusion:
        return subsumes(kb, ax.c2, ax.c1, options);
    case AxiomKind::ConceptAssertion: {
        auto verdict = is_satisfiable_concept(
            kb, conjunction({nominal({ax.i1}), negation(ax.c1)}), options);
        if (verdict.outcome == TableauOutcome::Inconclusive) {
            throw ResourceLimitError(options.max_nodes);
        }
        return verdict.outcome == TableauOutcome::Unsatisfiable;
    }
    case AxiomKind::RoleAssertion: {
        MaterializeOptions mopts;
        mopts.mode = MaterializeMode::Entailment;
        mopts.tableau_max_nodes = options.max_nodes;
        try {
            FactStore store = materialize(kb, mopts);
            auto reps = individual_representatives(kb);
            auto rep = [&](const std::string& n) {
                auto it = reps.find(n);
                return it == reps.end() ? n : it->second;
            };
            return store.contains(GroundFact::role_fact(ax.r1.name, rep(ax.i1), rep(ax.i2)));
        } catch (const InconsistentKbError&) {
            return true; // everything follows from an inconsistent KB
        }
    }
    default:
        throw UnsupportedConstructError("entails supports concept inclusions, concept "
                                        "assertions and role assertions only");
    }
}

namespace {

// Reflexive-transitive closure of the told subsumptions between atomic
// concepts. Sound positives only; everything else goes to the tableau.
std::set<std::pair<std::string, std::string>> told_subsumptions(const KnowledgeBase& kb) {
    std::set<std::pair<std::string, std::string>> told;
    auto add = [&](const ConceptPtr& sub, const ConceptPtr& sup) {
        if (sub->kind() == ConceptKind::Atomic && sup->kind() == ConceptKind::Atomic) {
            told.insert({sub->name(), sup->name()});
        }
    };
    for (const auto& ax : kb.tbox()) {
        if (ax.kind == AxiomKind::ConceptInclusion) add(ax.c1, ax.c2);
        if (ax.kind == AxiomKind::ConceptEquivalence) {
            add(ax.c1, ax.c2);
            add(ax.c2, ax.c1);
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b] : std::set<std::pair<std::string, std::string>>(told)) {
            for (const auto& [c, d] : std::set<std::pair<std::string, std::string>>(told)) {
                if (b == c && !told.count({a, d})) {
                    told.insert({a, d});
                    changed = true;
                }
            }
        }
    }
    return told;
}

} // namespace

ConceptHierarchy classify(const KnowledgeBase& kb, const TableauOptions& options) {
    ConceptHierarchy hierarchy;
    std::vector<std::string> names(kb.signature().concepts.begin(),
                                   kb.signature().concepts.end());

    auto base = is_consistent(kb, options);
    if (base.outcome == TableauOutcome::Inconclusive) throw ResourceLimitError(options.max_nodes);
    if (base.outcome == TableauOutcome::Unsatisfiable) {
        hierarchy.inconsistent = true;
        hierarchy.nodes.push_back({{kTopClass}});
        ConceptHierarchy::Node bottom_node;
        bottom_node.members.push_back(kBottomClass);
        for (const auto& n : names) bottom_node.members.push_back(n);
        std::sort(bottom_node.members.begin(), bottom_node.members.end());
        hierarchy.nodes.push_back(std::move(bottom_node));
        hierarchy.edges.emplace_back(0, 1);
        return hierarchy;
    }

    // Matrix slots 0..n-1 are the names; n is TOP, n+1 is BOTTOM.
    const std::size_t n = names.size();
    const std::size_t top_i = n, bot_i = n + 1;
    std::vector<std::vector<char>> sub(n + 2, std::vector<char>(n + 2, 0));
    for (std::size_t i = 0; i < n + 2; ++i) {
        sub[i][i] = 1;
        sub[i][top_i] = 1;  // everything below top
        sub[bot_i][i] = 1;  // bottom below everything
    }
    sub[top_i][bot_i] = 0; // consistent KB

    const auto told = told_subsumptions(kb);
    auto concept_of = [&](std::size_t i) -> ConceptPtr {
        if (i == top_i) return top();
        if (i == bot_i) return bottom();
        return atomic(names[i]);
    };

    struct Task {
        std::size_t i, j;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < n + 2; ++i) {
        for (std::size_t j = 0; j < n + 2; ++j) {
            if (sub[i][j]) continue;
            if (i < n && j < n && told.count({names[i], names[j]})) {
                sub[i][j] = 1;
                continue;
            }
            tasks.push_back({i, j});
        }
    }
    std::vector<char> results(tasks.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long t = 0; t < static_cast<long long>(tasks.size()); ++t) {
        results[t] = subsumes(kb, concept_of(tasks[t].j), concept_of(tasks[t].i), options) ? 1 : 0;
    }
    for (std::size_t t = 0; t < tasks.size(); ++t) sub[tasks[t].i][tasks[t].j] = results[t];

    // Equivalence classes keyed by the lexicographically smallest member;
    // TOP and BOTTOM stay in their own classes for rendering.
    std::vector<int> class_of(n + 2, -1);
    auto display = [&](std::size_t i) {
        return i == top_i ? kTopClass : (i == bot_i ? kBottomClass : names[i]);
    };
    std::vector<std::size_t> order(n + 2);
    order[0] = top_i;
    for (std::size_t i = 0; i < n; ++i) order[i + 1] = i;
    order[n + 1] = bot_i;

    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        std::size_t i = order[oi];
        if (class_of[i] >= 0) continue;
        const int id = static_cast<int>(hierarchy.nodes.size());
        ConceptHierarchy::Node node;
        for (std::size_t j : order) {
            if (class_of[j] < 0 && sub[i][j] && sub[j][i]) {
                class_of[j] = id;
                node.members.push_back(display(j));
            }
        }
        std::sort(node.members.begin(), node.members.end());
        hierarchy.nodes.push_back(std::move(node));
    }

    const int classes = static_cast<int>(hierarchy.nodes.size());
    std::vector<std::vector<char>> class_sub(classes, std::vector<char>(classes, 0));
    for (std::size_t i = 0; i < n + 2; ++i) {
        for (std::size_t j = 0; j < n + 2; ++j) {
            if (sub[i][j]) class_sub[class_of[i]][class_of[j]] = 1;
        }
    }
    for (int a = 0; a < classes; ++a) {
        for (int b = 0; b < classes; ++b) {
            if (a == b || !class_sub[b][a]) continue; // a is a superclass of b?
            bool direct = true;
            for (int c = 0; c < classes; ++c) {
                if (c == a || c == b) continue;
                if (class_sub[b][c] && class_sub[c][a]) { // b <= c <= a strictly between
                    direct = false;
                    break;
                }
            }
            if (direct) hierarchy.edges.emplace_back(a, b);
        }
    }
    std::sort(hierarchy.edges.begin(), hierarchy.edges.end());
    return hierarchy;
}

std::map<std::string, std::set<std::string>> realize(const KnowledgeBase& kb,
                                                     const TableauOptions& options) {
    std::map<std::string, std::set<std::string>> out;
    const auto& sig = kb.signature();
    if (sig.individuals.empty()) return out;

    std::vector<std::string> names(sig.concepts.begin(), sig.concepts.end());
    auto reps = individual_representatives(kb);
    std::set<std::string> rep_set;
    for (const auto& [name, rep] : reps) {
        (void)name;
        rep_set.insert(rep);
    }
    std::vector<std::string> individuals(rep_set.begin(), rep_set.end());

    std::vector<char> entailed(names.size() * individuals.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long t = 0; t < static_cast<long long>(entailed.size()); ++t) {
        const std::size_t ci = t / individuals.size();
        const std::size_t ii = t % individuals.size();
        entailed[t] = entails(
            kb, Axiom::concept_assertion(atomic(names[ci]), individuals[ii]), options);
    }

    const auto hierarchy = classify(kb, options);
    for (std::size_t ii = 0; ii < individuals.size(); ++ii) {
        std::set<std::string> memberships;
        for (std::size_t ci = 0; ci < names.size(); ++ci) {
            if (entailed[ci * individuals.size() + ii]) memberships.insert(names[ci]);
        }
        std::set<std::string> most_specific;
        for (const auto& c : memberships) {
            bool has_stricter = false;
            for (const auto& d : memberships) {
                if (d == c) continue;
                if (hierarchy.below(d, c) && !hierarchy.below(c, d)) {
                    has_stricter = true;
                    break;
                }
            }
            if (!has_stricter) most_specific.insert(c);
        }
        out[individuals[ii]] = most_specific;
    }
    // Merged individuals share their representative's result.
    for (const auto& [name, rep] : reps) {
        if (name != rep) out[name] = out[rep];
    }
    return out;
}

} // namespace tkb
