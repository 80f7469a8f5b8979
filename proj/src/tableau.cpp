#include "tkb/tableau.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "tkb/errors.hpp"
#include "tkb/normalize.hpp"

namespace tkb {

namespace {

using NodeId = std::uint32_t;
constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct GraphNode {
    bool named = false;
    std::vector<std::string> names;     // merged individual names, sorted
    NodeId pred = kNoNode;              // tree predecessor of anonymous nodes
    std::set<ConceptPtr, ConceptLess> label;
    bool alive = true;
    NodeId merged_into = kNoNode;
};

struct Graph {
    std::vector<GraphNode> nodes;
    std::map<std::pair<NodeId, NodeId>, std::set<RoleExpr>> edges;
    std::set<std::pair<NodeId, NodeId>> distinct; // normalized (min, max)

    NodeId rep(NodeId x) const {
        while (nodes[x].merged_into != kNoNode) x = nodes[x].merged_into;
        return x;
    }
    bool is_distinct(NodeId a, NodeId b) const {
        return distinct.count({std::min(a, b), std::max(a, b)}) > 0;
    }
    void add_distinct(NodeId a, NodeId b) {
        distinct.insert({std::min(a, b), std::max(a, b)});
    }
};

std::string node_tag(NodeId x) { return "n" + std::to_string(x); }

class Engine {
public:
    Engine(const KnowledgeBase& kb, const TableauOptions& options)
        : kb_(kb), options_(options), closure_(role_closure(kb)) {
        gcis_ = gci_disjunctions(kb.tbox());
        for (const auto& ax : kb.rbox()) {
            switch (ax.kind) {
            case AxiomKind::DisjointRoles: disjoint_.emplace_back(ax.r1, ax.r2); break;
            case AxiomKind::AsymmetricRole: asymmetric_.push_back(ax.r1); break;
            case AxiomKind::ReflexiveRole: reflexive_.push_back(ax.r1); break;
            case AxiomKind::IrreflexiveRole: irreflexive_.push_back(ax.r1); break;
            default: break;
            }
        }
    }

    TableauVerdict run(const ConceptPtr& extra_concept) {
        TableauVerdict verdict;
        detect_possible_incompleteness(extra_concept, verdict);

        try {
            Graph g;
            if (auto clash = initialize(g, extra_concept)) {
                trace_.push_back(*clash);
                verdict.outcome = TableauOutcome::Unsatisfiable;
                verdict.clash_trace = trace_;
                verdict.trace = std::move(trace_);
                verdict.backtracks = backtracks_;
                verdict.nodes_created = nodes_created_;
                return verdict;
            }
            auto model_graph = expand(std::move(g));
            if (model_graph) {
                trace_.push_back("model nodes=" + std::to_string(live_count(*model_graph)));
                verdict.outcome = TableauOutcome::Satisfiable;
                verdict.model = extract_model(*model_graph);
            } else {
                verdict.outcome = TableauOutcome::Unsatisfiable;
                verdict.clash_trace = trace_;
            }
        } catch (const ResourceLimitError&) {
            trace_.push_back("node cap exceeded");
            verdict.outcome = TableauOutcome::Inconclusive;
        }
        verdict.trace = std::move(trace_);
        verdict.backtracks = backtracks_;
        verdict.nodes_created = nodes_created_;
        return verdict;
    }

private:
    // ----- setup -------------------------------------------------------------

    void detect_possible_incompleteness(const ConceptPtr& extra, TableauVerdict& verdict) {
        bool has_nominal = false, has_inverse = false, has_number = false;
        std::function<void(const ConceptPtr&)> walk = [&](const ConceptPtr& c) {
            if (!c) return;
            switch (c->kind()) {
            case ConceptKind::Nominal: has_nominal = true; break;
            case ConceptKind::Not: walk(c->child()); break;
            case ConceptKind::And:
            case ConceptKind::Or:
                for (const auto& a : c->args()) walk(a);
                break;
            case ConceptKind::AtLeast:
            case ConceptKind::AtMost:
                has_number = true;
                [[fallthrough]];
            case ConceptKind::Exists:
            case ConceptKind::ForAll:
                if (c->role().is_inverse()) has_inverse = true;
                if (c->filler()) walk(c->filler());
                break;
            case ConceptKind::Self:
                if (c->role().is_inverse()) has_inverse = true;
                break;
            default: break;
            }
        };
        for (const auto& ax : kb_.all_axioms()) {
            walk(ax.c1);
            walk(ax.c2);
            if (ax.r1.is_inverse() || ax.r2.is_inverse()) has_inverse = true;
            for (const auto& r : ax.chain) {
                if (r.is_inverse()) has_inverse = true;
            }
        }
        walk(extra);
        if (has_nominal && has_inverse && has_number) {
            verdict.possibly_incomplete = true;
            verdict.incompleteness_note =
                "nominals combined with inverse roles and number restrictions may require "
                "the NI rule, which this engine does not implement";
        }
    }

    NodeId create_node(Graph& g, bool named, NodeId pred) {
        if (++nodes_created_ > options_.max_nodes) throw ResourceLimitError(options_.max_nodes);
        GraphNode node;
        node.named = named;
        node.pred = pred;
        for (const auto& gci : gcis_) node.label.insert(gci);
        g.nodes.push_back(std::move(node));
        return static_cast<NodeId>(g.nodes.size() - 1);
    }

    void add_edge_role(Graph& g, NodeId u, NodeId v, const RoleExpr& r) {
        if (r.is_universal()) {
            throw UnsupportedConstructError("universal role reached by reasoning");
        }
        g.edges[{u, v}].insert(r);
    }

    // Builds the initial graph; returns a clash line if the ABox is already
    // contradictory at the equality level.
    std::optional<std::string> initialize(Graph& g, const ConceptPtr& extra_concept) {
        std::set<std::string> individuals = kb_.signature().individuals;
        std::function<void(const ConceptPtr&)> collect = [&](const ConceptPtr& c) {
            if (!c) return;
            if (c->kind() == ConceptKind::Nominal) {
                for (const auto& i : c->individuals()) individuals.insert(i);
            }
            if (c->kind() == ConceptKind::Not) collect(c->child());
            for (const auto& a : c->args()) collect(a);
            if (c->filler()) collect(c->filler());
        };
        collect(extra_concept);

        for (const auto& name : individuals) {
            NodeId id = create_node(g, true, kNoNode);
            g.nodes[id].names = {name};
            g.nodes[id].label.insert(nominal({name}));
            named_node_[name] = id;
        }
        for (const auto& ax : kb_.abox()) {
            if (ax.kind == AxiomKind::SameIndividual) {
                NodeId a = g.rep(named_node_.at(ax.i1)), b = g.rep(named_node_.at(ax.i2));
                if (a != b) {
                    if (!merge_nodes(g, std::max(a, b), std::min(a, b))) {
                        return trace_.back(); // unreachable: no inequalities yet
                    }
                }
            }
        }
        for (const auto& ax : kb_.abox()) {
            switch (ax.kind) {
            case AxiomKind::ConceptAssertion:
                g.nodes[g.rep(named_node_.at(ax.i1))].label.insert(nnf(ax.c1));
                break;
            case AxiomKind::RoleAssertion:
                add_edge_role(g, g.rep(named_node_.at(ax.i1)), g.rep(named_node_.at(ax.i2)),
                              ax.r1);
                break;
            case AxiomKind::NegatedRoleAssertion:
                if (ax.r1.is_universal()) {
                    throw UnsupportedConstructError("universal role reached by reasoning");
                }
                forbidden_.emplace_back(ax.r1, ax.i1, ax.i2);
                break;
            case AxiomKind::DifferentIndividuals: {
                NodeId a = g.rep(named_node_.at(ax.i1)), b = g.rep(named_node_.at(ax.i2));
                if (a == b) {
                    return "clash inequality " + node_tag(a) + " (" + ax.i1 + " DIFF " + ax.i2 +
                           ")";
                }
                g.add_distinct(a, b);
                break;
            }
            default:
                break;
            }
        }
        if (extra_concept) {
            NodeId id = create_node(g, true, kNoNode); // fresh root, never blocked
            g.nodes[id].label.insert(nnf(extra_concept));
            trace_.push_back("assert " + node_tag(id) + " (" + to_string(nnf(extra_concept)) +
                             ")");
        }
        return std::nullopt;
    }

    // ----- label / neighbor helpers ------------------------------------------

    const ConceptPtr& complement_of(const ConceptPtr& c) {
        auto it = neg_cache_.find(c);
        if (it != neg_cache_.end()) return it->second;
        return neg_cache_.emplace(c, nnf_complement(c)).first->second;
    }

    static bool in_label(const Graph& g, NodeId x, const ConceptPtr& c) {
        return g.nodes[x].label.count(c) > 0;
    }

    bool pair_in_role(const Graph& g, NodeId x, NodeId y, const RoleExpr& r) const {
        auto it = g.edges.find({x, y});
        if (it != g.edges.end()) {
            for (const auto& s : it->second) {
                if (closure_.subsumed(s, r)) return true;
            }
        }
        it = g.edges.find({y, x});
        if (it != g.edges.end()) {
            const RoleExpr inv = r.inverse();
            for (const auto& s : it->second) {
                if (closure_.subsumed(s, inv)) return true;
            }
        }
        return false;
    }

    std::vector<NodeId> role_neighbors(const Graph& g, NodeId x, const RoleExpr& r) const {
        std::set<NodeId> out;
        const RoleExpr inv = r.inverse();
        for (const auto& [key, roles] : g.edges) {
            if (key.first == x) {
                for (const auto& s : roles) {
                    if (closure_.subsumed(s, r)) { out.insert(key.second); break; }
                }
            }
            if (key.second == x) {
                for (const auto& s : roles) {
                    if (closure_.subsumed(s, inv)) { out.insert(key.first); break; }
                }
            }
        }
        return {out.begin(), out.end()};
    }

    static std::size_t live_count(const Graph& g) {
        std::size_t n = 0;
        for (const auto& node : g.nodes) n += node.alive ? 1 : 0;
        return n;
    }

    // Is there a subset of `candidates` of size k that is pairwise distinct?
    static bool has_distinct_clique(const Graph& g, const std::vector<NodeId>& candidates,
                                    std::size_t k, std::size_t from = 0,
                                    std::vector<NodeId>* picked = nullptr) {
        std::vector<NodeId> local;
        if (!picked) picked = &local;
        if (picked->size() == k) return true;
        for (std::size_t i = from; i < candidates.size(); ++i) {
            bool ok = true;
            for (NodeId other : *picked) {
                if (!g.is_distinct(candidates[i], other)) { ok = false; break; }
            }
            if (!ok) continue;
            picked->push_back(candidates[i]);
            if (has_distinct_clique(g, candidates, k, i + 1, picked)) return true;
            picked->pop_back();
        }
        return false;
    }

    // ----- blocking -----------------------------------------------------------

    // Pairwise blocking, recomputed per scan: anonymous x with predecessor x'
    // is directly blocked by an anonymous ancestor y (predecessor y') when
    // L(x)=L(y), L(x')=L(y') and the connecting edge labels coincide.
    void compute_blocking(const Graph& g, std::vector<bool>& direct,
                          std::vector<bool>& indirect) const {
        const std::size_t n = g.nodes.size();
        direct.assign(n, false);
        indirect.assign(n, false);
        for (NodeId x = 0; x < n; ++x) {
            const auto& node = g.nodes[x];
            if (!node.alive || node.named || node.pred == kNoNode) continue;
            const NodeId xp = node.pred;
            auto ex = g.edges.find({xp, x});
            for (NodeId y = node.pred; y != kNoNode; y = g.nodes[y].pred) {
                const auto& anc = g.nodes[y];
                if (anc.named || anc.pred == kNoNode) continue;
                const NodeId yp = anc.pred;
                if (g.nodes[x].label != anc.label) continue;
                if (g.nodes[xp].label != g.nodes[yp].label) continue;
                auto ey = g.edges.find({yp, y});
                const bool ex_ok = ex != g.edges.end();
                const bool ey_ok = ey != g.edges.end();
                if (ex_ok != ey_ok) continue;
                if (ex_ok && ex->second != ey->second) continue;
                direct[x] = true;
                break;
            }
        }
        for (NodeId x = 0; x < n; ++x) {
            const auto& node = g.nodes[x];
            if (!node.alive || node.named) continue;
            for (NodeId y = node.pred; y != kNoNode; y = g.nodes[y].pred) {
                if (direct[y]) { indirect[x] = true; break; }
            }
        }
    }

    // ----- merging ------------------------------------------------------------

    void prune_subtree(Graph& g, NodeId root) {
        std::vector<NodeId> doomed;
        for (const auto& [key, roles] : g.edges) {
            (void)roles;
            if (key.first == root && key.second != root) {
                const auto& child = g.nodes[key.second];
                if (child.alive && !child.named && child.pred == root) {
                    doomed.push_back(key.second);
                }
            }
        }
        for (NodeId c : doomed) {
            prune_subtree(g, c);
            g.nodes[c].alive = false;
            for (auto it = g.edges.begin(); it != g.edges.end();) {
                if (it->first.first == c || it->first.second == c) it = g.edges.erase(it);
                else ++it;
            }
            for (auto it = g.distinct.begin(); it != g.distinct.end();) {
                if (it->first == c || it->second == c) it = g.distinct.erase(it);
                else ++it;
            }
        }
    }

    // Merges src into dst (callers pass dst = the lower id). Returns false
    // and records the clash when src and dst are asserted distinct.
    bool merge_nodes(Graph& g, NodeId src, NodeId dst) {
        src = g.rep(src);
        dst = g.rep(dst);
        if (src == dst) return true;
        if (src < dst) std::swap(src, dst);
        if (g.is_distinct(src, dst)) {
            trace_.push_back("clash inequality " + node_tag(dst) + " " + node_tag(src) +
                             " (merge under inequality)");
            return false;
        }
        trace_.push_back("merge " + node_tag(src) + " -> " + node_tag(dst));

        prune_subtree(g, src);

        auto& s = g.nodes[src];
        auto& t = g.nodes[dst];
        t.label.insert(s.label.begin(), s.label.end());
        t.names.insert(t.names.end(), s.names.begin(), s.names.end());
        std::sort(t.names.begin(), t.names.end());
        t.names.erase(std::unique(t.names.begin(), t.names.end()), t.names.end());
        t.named = t.named || s.named;

        std::map<std::pair<NodeId, NodeId>, std::set<RoleExpr>> rewritten;
        for (auto it = g.edges.begin(); it != g.edges.end();) {
            if (it->first.first == src || it->first.second == src) {
                NodeId u = it->first.first == src ? dst : it->first.first;
                NodeId v = it->first.second == src ? dst : it->first.second;
                rewritten[{u, v}].insert(it->second.begin(), it->second.end());
                it = g.edges.erase(it);
            } else {
                ++it;
            }
        }
        for (auto& [key, roles] : rewritten) {
            g.edges[key].insert(roles.begin(), roles.end());
        }
        for (auto& node : g.nodes) {
            if (node.alive && node.pred == src) node.pred = dst;
        }

        std::vector<std::pair<NodeId, NodeId>> new_distinct;
        for (auto it = g.distinct.begin(); it != g.distinct.end();) {
            if (it->first == src || it->second == src) {
                NodeId a = it->first == src ? dst : it->first;
                NodeId b = it->second == src ? dst : it->second;
                new_distinct.emplace_back(std::min(a, b), std::max(a, b));
                it = g.distinct.erase(it);
            } else {
                ++it;
            }
        }
        g.distinct.insert(new_distinct.begin(), new_distinct.end());

        s.alive = false;
        s.merged_into = dst;
        return true;
    }

    // ----- clash detection ----------------------------------------------------

    std::optional<std::string> find_clash(const Graph& g) {
        for (NodeId x = 0; x < g.nodes.size(); ++x) {
            const auto& node = g.nodes[x];
            if (!node.alive) continue;
            for (const auto& c : node.label) {
                if (c->kind() == ConceptKind::Bottom) {
                    return "clash bottom " + node_tag(x);
                }
                const auto& comp = complement_of(c);
                if (compare(c, comp) < 0 && node.label.count(comp)) {
                    const char* kind =
                        c->kind() == ConceptKind::Atomic || comp->kind() == ConceptKind::Atomic
                            ? "atomic"
                            : "complement";
                    return std::string("clash ") + kind + " " + node_tag(x) + " (" +
                           to_string(c) + ")";
                }
                if (c->kind() == ConceptKind::Not) {
                    const auto& inner = c->child();
                    if (inner->kind() == ConceptKind::Self &&
                        pair_in_role(g, x, x, inner->role())) {
                        return "clash self " + node_tag(x) + " (" + to_string(c) + ")";
                    }
                    if (inner->kind() == ConceptKind::Nominal) {
                        for (const auto& name : inner->individuals()) {
                            auto it = named_node_.find(name);
                            if (it != named_node_.end() && g.rep(it->second) == x) {
                                return "clash nominal " + node_tag(x) + " (" + to_string(c) + ")";
                            }
                        }
                    }
                }
                if (c->kind() == ConceptKind::AtMost) {
                    auto candidates = filtered_neighbors(g, x, c->role(), c->filler());
                    if (candidates.size() > c->cardinality() &&
                        has_distinct_clique(g, candidates, c->cardinality() + 1)) {
                        return "clash at-most " + node_tag(x) + " (" + to_string(c) + ")";
                    }
                }
            }
        }
        for (const auto& [r, s] : disjoint_) {
            for (const auto& [key, roles] : g.edges) {
                (void)roles;
                const auto [u, v] = key;
                if ((pair_in_role(g, u, v, r) && pair_in_role(g, u, v, s)) ||
                    (pair_in_role(g, v, u, r) && pair_in_role(g, v, u, s))) {
                    return "clash disjoint-roles " + node_tag(u) + " " + node_tag(v) + " (DIS " +
                           r.to_string() + " " + s.to_string() + ")";
                }
            }
        }
        for (const auto& r : irreflexive_) {
            for (NodeId x = 0; x < g.nodes.size(); ++x) {
                if (g.nodes[x].alive && pair_in_role(g, x, x, r)) {
                    return "clash irreflexive " + node_tag(x) + " (IRR " + r.to_string() + ")";
                }
            }
        }
        for (const auto& r : asymmetric_) {
            for (const auto& [key, roles] : g.edges) {
                (void)roles;
                const auto [u, v] = key;
                if (pair_in_role(g, u, v, r) && pair_in_role(g, v, u, r)) {
                    return "clash asymmetric " + node_tag(u) + " " + node_tag(v) + " (ASY " +
                           r.to_string() + ")";
                }
            }
        }
        for (const auto& [r, subj, obj] : forbidden_) {
            NodeId u = g.rep(named_node_.at(subj)), v = g.rep(named_node_.at(obj));
            if (pair_in_role(g, u, v, r)) {
                return "clash negated-role-assertion " + node_tag(u) + " " + node_tag(v) + " (" +
                       subj + " NOT " + r.to_string() + " " + obj + ")";
            }
        }
        return std::nullopt;
    }

    std::vector<NodeId> filtered_neighbors(const Graph& g, NodeId x, const RoleExpr& r,
                                           const ConceptPtr& filler) {
        std::vector<NodeId> out;
        for (NodeId y : role_neighbors(g, x, r)) {
            if (in_label(g, y, filler)) out.push_back(y);
        }
        return out;
    }

    // ----- the expansion loop ---------------------------------------------------

    struct Branch {
        std::string description;
        std::vector<std::function<bool(Graph&)>> alternatives; // false: immediate clash
        std::vector<std::string> labels;
    };

    enum class StepKind { Progress, Clash, Branched, Saturated };

    struct Step {
        StepKind kind = StepKind::Saturated;
        Branch branch;
    };

    // Applies the first applicable rule. Oldest node first; per node the
    // priority order from the header comment.
    Step scan(Graph& g) {
        if (auto clash = find_clash(g)) {
            trace_.push_back(*clash);
            return {StepKind::Clash, {}};
        }
        std::vector<bool> blocked_direct, blocked_indirect;
        compute_blocking(g, blocked_direct, blocked_indirect);

        for (NodeId x = 0; x < g.nodes.size(); ++x) {
            if (!g.nodes[x].alive) continue;
            const bool gen_blocked = blocked_direct[x] || blocked_indirect[x];
            const bool all_blocked = blocked_indirect[x];
            if (!all_blocked) {
                if (auto step = rule_and(g, x)) return *step;
                if (auto step = rule_neg_nominal(g, x)) return *step;
                if (auto step = rule_nominal(g, x)) return *step;
                if (auto step = rule_at_most_merge(g, x)) return *step;
                if (auto step = rule_or(g, x)) return *step;
            }
            if (!gen_blocked) {
                if (auto step = rule_exists(g, x)) return *step;
                if (auto step = rule_at_least(g, x)) return *step;
            }
            if (!all_blocked) {
                if (auto step = rule_forall(g, x)) return *step;
                if (auto step = rule_forall_transitive(g, x)) return *step;
                if (auto step = rule_choose(g, x)) return *step;
            }
            if (!gen_blocked) {
                if (auto step = rule_self(g, x)) return *step;
                if (auto step = rule_reflexive(g, x)) return *step;
            }
        }
        return {StepKind::Saturated, {}};
    }

    std::optional<Step> rule_and(Graph& g, NodeId x) {
        for (const auto& c : g.nodes[x].label) {
            if (c->kind() != ConceptKind::And) continue;
            bool missing = false;
            for (const auto& arg : c->args()) {
                if (!in_label(g, x, arg)) { missing = true; break; }
            }
            if (!missing) continue;
            for (const auto& arg : c->args()) g.nodes[x].label.insert(arg);
            trace_.push_back("and-rule " + node_tag(x) + " (" + to_string(c) + ")");
            return Step{StepKind::Progress, {}};
        }
        return std::nullopt;
    }

    std::optional<Step> rule_neg_nominal(Graph& g, NodeId x) {
        for (const auto& c : g.nodes[x].label) {
            if (c->kind() != ConceptKind::Not || c->child()->kind() != ConceptKind::Nominal) {
                continue;
            }
            for (const auto& name : c->child()->individuals()) {
                NodeId t = g.rep(named_node_.at(name));
                if (t != x && !g.is_distinct(x, t)) {
                    g.add_distinct(x, t);
                    trace_.push_back("neq-rule " + node_tag(x) + " != " + node_tag(t) + " (" +
                                     to_string(c) + ")");
                    return Step{StepKind::Progress, {}};
                }
            }
        }
        return std::nullopt;
    }

    std::optional<Step> rule_nominal(Graph& g, NodeId x) {
        for (const auto& c : g.nodes[x].label) {
            if (c->kind() != ConceptKind::Nominal) continue;
            std::set<NodeId> targets;
            for (const auto& name : c->individuals()) targets.insert(g.rep(named_node_.at(name)));
            if (targets.count(x)) continue; // satisfied
            std::vector<NodeId> viable;
            for (NodeId t : targets) {
                if (!g.is_distinct(x, t)) viable.push_back(t);
            }
            if (viable.empty()) {
                trace_.push_back("clash nominal " + node_tag(x) + " (" + to_string(c) + ")");
                return Step{StepKind::Clash, {}};
            }
            if (viable.size() == 1) {
                NodeId t = viable.front();
                trace_.push_back("nominal-rule " + node_tag(x) + " -> " + node_tag(t) + " (" +
                                 to_string(c) + ")");
                if (!merge_nodes(g, x, t)) return Step{StepKind::Clash, {}};
                return Step{StepKind::Progress, {}};
            }
            Branch branch;
            branch.description = "nominal-branch " + node_tag(x) + " (" + to_string(c) + ")";
            for (NodeId t : viable) {
                branch.labels.push_back("merge with " + node_tag(t));
                branch.alternatives.push_back(
                    [this, x, t](Graph& gg) { return merge_nodes(gg, x, t); });
            }
            return Step{StepKind::Branched, std::move(branch)};
        }
        return std::nullopt;
    }

    std::optional<Step> rule_at_most_merge(Graph& g, NodeId x) {
        for (const auto& c : g.nodes[x].label) {
            if (c->kind() != ConceptKind::AtMost) continue;
            if (c->role().is_universal()) {
                throw UnsupportedConstructError("universal role reached by reasoning");
            }
            auto candidates = filtered_neighbors(g, x, c->role(), c->filler());
            if (candidates.size() <= c->cardinality()) continue;
            Branch branch;
            branch.description = "le-branch " + node_tag(x) + " (" + to_string(c) + ")";
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                for (std::size_t j = i + 1; j < candidates.size(); ++j) {
                    NodeId a = candidates[i], b = candidates[j];
                    if (g.is_distinct(a, b)) continue;
                    branch.labels.push_back("merge " + node_tag(std::max(a, b)) + " -> " +
                                            node_tag(std::min(a, b)));
                    branch.alternatives.push_back([this, a, b](Graph& gg) {
                        return merge_nodes(gg, std::max(a, b), std::min(a, b));
                    });
                }
            }
            if (branch.alternatives.empty()) continue; // clash scan handles the clique
            return Step{StepKind::Branched, std::move(branch)};
        }
        return std::nullopt;
    }

    std::optional<Step> rule_or(Graph& g, NodeId x) {
        // Stage one: an unsatisfied disjunction with every disjunct falsified
        // is a clash, regardless of where it sits in the label.
        for (const auto& c : g.nodes[x].label) {
            if (c->kind() != ConceptKind::Or) continue;
            bool satisfied = false, any_live = false;
            for (const auto& d : c->args()) {
                if (in_label(g, x, d)) { satisfied = true; break; }
                if (!in_label(g, x, complement_of(d))) any_live = true;
            }
            if (!satisfied && !any_live) {
                trace_.push_back("clash disjunction " + node_tag(x) + " (" + to_string(c) + ")");
                return Step{StepKind::Clash, {}};
            }
        }
        // Stage two: expand the first unsatisfied disjunction; a single live
        // disjunct is forced, otherwise the live disjuncts open a branch.
        for (const auto& c : g.nodes[x].label) {
            if (c->kind() != ConceptKind::Or) continue;
            bool satisfied = false;
            std::vector<ConceptPtr> live;
            for (const auto& d : c->args()) {
                if (in_label(g, x, d)) { satisfied = true; break; }
                if (!in_label(g, x, complement_of(d))) live.push_back(d);
            }
            if (satisfied) continue;
            if (live.size() == 1) {
                g.nodes[x].label.insert(live.front());
                trace_.push_back("or-rule " + node_tag(x) + " forced (" + to_string(live.front()) +
                                 ") of (" + to_string(c) + ")");
                return Step{StepKind::Progress, {}};
            }
            Branch branch;
            branch.description = "or-branch " + node_tag(x) + " (" + to_string(c) + ")";
            for (const auto& d : live) {
                branch.labels.push_back(to_string(d));
                branch.alternatives.push_back([x, d](Graph& gg) {
                    gg.nodes[x].label.insert(d);
                    return true;
                });
            }
            return Step{StepKind::Branched, std::move(branch)};
        }
        return std::nullopt;
    }

    std::optional<Step> rule_exists(Graph& g, NodeId x) {
        for (const auto& c : g.nodes[x].label) {
            if (c->kind() != ConceptKind::Exists) continue;
            if (c->role().is_universal()) {
                throw UnsupportedConstructError("universal role reached by reasoning");
            }
            if (!filtered_neighbors(g, x, c->role(), c->filler()).empty()) continue;
            NodeId y = create_node(g, false, x);
            g.nodes[y].label.insert(c->filler());
            add_edge_role(g, x, y, c->role());
            trace_.push_back("exists-rule " + node_tag(x) + " -> " + node_tag(y) + " (" +
                             to_string(c) + ")");
            return Step{StepKind::Progress, {}};
        }
        return std::nullopt;
    }

    std::optional<Step> rule_at_least(Graph& g, NodeId x) {
        for (const auto& c : g.nodes[x].label) {
            if (c->kind() != ConceptKind::AtLeast || c->cardinality() == 0) continue;
            if (c->role().is_universal()) {
                throw UnsupportedConstructError("universal role reached by reasoning");
            }
            const std::size_t n = c->cardinality();
            auto candidates = filtered_neighbors(g, x, c->role(), c->filler());
            if (candidates.size() >= n && has_distinct_clique(g, candidates, n)) continue;
            std::vector<NodeId> fresh;
            for (std::size_t i = 0; i < n; ++i) {
                NodeId y = create_node(g, false, x);
                g.nodes[y].label.insert(c->filler());
                add_edge_role(g, x, y, c->role());
                fresh.push_back(y);
            }
            for (std::size_t i = 0; i < fresh.size(); ++i) {
                for (std::size_t j = i + 1; j < fresh.size(); ++j) {
                    g.add_distinct(fresh[i], fresh[j]);
                }
            }
            trace_.push_back("ge-rule " + node_tag(x) + " -> " + node_tag(fresh.front()) + ".." +
                             node_tag(fresh.back()) + " (" + to_string(c) + ")");
            return Step{StepKind::Progress, {}};
        }
        return std::nullopt;
    }

    std::optional<Step> rule_forall(Graph& g, NodeId x) {
        for (const auto& c : g.nodes[x].label) {
            if (c->kind() != ConceptKind::ForAll) continue;
            if (c->role().is_universal()) {
                throw UnsupportedConstructError("universal role reached by reasoning");
            }
            for (NodeId y : role_neighbors(g, x, c->role())) {
                if (!in_label(g, y, c->filler())) {
                    g.nodes[y].label.insert(c->filler());
                    trace_.push_back("forall-rule " + node_tag(x) + " " + node_tag(y) + " (" +
                                     to_string(c) + ")");
                    return Step{StepKind::Progress, {}};
                }
            }
        }
        return std::nullopt;
    }

    std::optional<Step> rule_forall_transitive(Graph& g, NodeId x) {
        for (const auto& c : g.nodes[x].label) {
            if (c->kind() != ConceptKind::ForAll) continue;
            for (const auto& r : closure_.transitive) {
                if (!closure_.subsumed(r, c->role())) continue;
                const auto propagated = forall(r, c->filler());
                for (NodeId y : role_neighbors(g, x, r)) {
                    if (!in_label(g, y, propagated)) {
                        g.nodes[y].label.insert(propagated);
                        trace_.push_back("forallplus-rule " + node_tag(x) + " " + node_tag(y) +
                                         " (" + to_string(propagated) + ")");
                        return Step{StepKind::Progress, {}};
                    }
                }
            }
        }
        return std::nullopt;
    }

    std::optional<Step> rule_choose(Graph& g, NodeId x) {
        for (const auto& c : g.nodes[x].label) {
            if (c->kind() != ConceptKind::AtMost) continue;
            for (NodeId y : role_neighbors(g, x, c->role())) {
                const auto& filler = c->filler();
                const auto& comp = complement_of(filler);
                if (in_label(g, y, filler) || in_label(g, y, comp)) continue;
                Branch branch;
                branch.description =
                    "choose-branch " + node_tag(x) + " " + node_tag(y) + " (" + to_string(c) + ")";
                branch.labels = {to_string(filler), to_string(comp)};
                branch.alternatives.push_back([y, filler](Graph& gg) {
                    gg.nodes[y].label.insert(filler);
                    return true;
                });
                branch.alternatives.push_back([y, comp](Graph& gg) {
                    gg.nodes[y].label.insert(comp);
                    return true;
                });
                return Step{StepKind::Branched, std::move(branch)};
            }
        }
        return std::nullopt;
    }

    std::optional<Step> rule_self(Graph& g, NodeId x) {
        for (const auto& c : g.nodes[x].label) {
            if (c->kind() != ConceptKind::Self) continue;
            if (c->role().is_universal()) {
                throw UnsupportedConstructError("universal role reached by reasoning");
            }
            if (pair_in_role(g, x, x, c->role())) continue;
            add_edge_role(g, x, x, c->role());
            trace_.push_back("self-rule " + node_tag(x) + " (" + to_string(c) + ")");
            return Step{StepKind::Progress, {}};
        }
        return std::nullopt;
    }

    std::optional<Step> rule_reflexive(Graph& g, NodeId x) {
        for (const auto& r : reflexive_) {
            if (pair_in_role(g, x, x, r)) continue;
            add_edge_role(g, x, x, r);
            trace_.push_back("ref-rule " + node_tag(x) + " (REF " + r.to_string() + ")");
            return Step{StepKind::Progress, {}};
        }
        return std::nullopt;
    }

    // Depth-first search with chronological backtracking. Returns the
    // saturated graph of the first successful branch.
    std::optional<Graph> expand(Graph g) {
        while (true) {
            Step step = scan(g);
            switch (step.kind) {
            case StepKind::Progress:
                continue;
            case StepKind::Clash:
                return std::nullopt;
            case StepKind::Saturated:
                return g;
            case StepKind::Branched: {
                const auto& branch = step.branch;
                const std::size_t n = branch.alternatives.size();
                for (std::size_t i = 0; i < n; ++i) {
                    trace_.push_back(branch.description + " " + std::to_string(i + 1) + "/" +
                                     std::to_string(n) + " " + branch.labels[i]);
                    Graph attempt = g;
                    std::optional<Graph> result;
                    if (branch.alternatives[i](attempt)) {
                        result = expand(std::move(attempt));
                    }
                    if (result) return result;
                    if (i + 1 < n) {
                        trace_.push_back("backtrack " + branch.description + " " +
                                         std::to_string(i + 1) + "/" + std::to_string(n));
                        ++backtracks_;
                    }
                }
                return std::nullopt;
            }
            }
        }
    }

    TableauModel extract_model(const Graph& g) const {
        TableauModel model;
        std::map<NodeId, std::size_t> renumber;
        for (NodeId x = 0; x < g.nodes.size(); ++x) {
            if (!g.nodes[x].alive) continue;
            TableauModel::Node node;
            node.id = renumber.size();
            node.named = g.nodes[x].named;
            node.individuals = g.nodes[x].names;
            for (const auto& c : g.nodes[x].label) node.label.push_back(to_string(c));
            renumber[x] = node.id;
            model.nodes.push_back(std::move(node));
        }
        for (const auto& [key, roles] : g.edges) {
            TableauModel::Edge edge;
            edge.from = renumber.at(key.first);
            edge.to = renumber.at(key.second);
            for (const auto& r : roles) edge.roles.push_back(r.to_string());
            model.edges.push_back(std::move(edge));
        }
        return model;
    }

    const KnowledgeBase& kb_;
    TableauOptions options_;
    RoleClosure closure_;
    std::vector<ConceptPtr> gcis_;
    std::vector<std::pair<RoleExpr, RoleExpr>> disjoint_;
    std::vector<RoleExpr> asymmetric_, reflexive_, irreflexive_;
    std::vector<std::tuple<RoleExpr, std::string, std::string>> forbidden_;
    std::map<std::string, NodeId> named_node_;
    std::map<ConceptPtr, ConceptPtr, ConceptLess> neg_cache_;
    std::vector<std::string> trace_;
    std::size_t backtracks_ = 0;
    std::size_t nodes_created_ = 0;
};

} // namespace

std::string TableauModel::to_text() const {
    std::string out;
    for (const auto& node : nodes) {
        out += "node n" + std::to_string(node.id);
        if (!node.individuals.empty()) {
            out += " [";
            for (std::size_t i = 0; i < node.individuals.size(); ++i) {
                if (i) out += " ";
                out += node.individuals[i];
            }
            out += "]";
        }
        out += ":";
        for (const auto& c : node.label) out += " " + c;
        out += "\n";
    }
    for (const auto& edge : edges) {
        out += "edge n" + std::to_string(edge.from) + " -> n" + std::to_string(edge.to) + ":";
        for (const auto& r : edge.roles) out += " " + r;
        out += "\n";
    }
    return out;
}

TableauVerdict is_consistent(const KnowledgeBase& kb, const TableauOptions& options) {
    Engine engine(kb, options);
    return engine.run(nullptr);
}

TableauVerdict is_satisfiable_concept(const KnowledgeBase& kb, const ConceptPtr& c,
                                      const TableauOptions& options) {
    Engine engine(kb, options);
    return engine.run(c);
}

bool subsumes(const KnowledgeBase& kb, const ConceptPtr& sup, const ConceptPtr& sub,
              const TableauOptions& options) {
    auto verdict = is_satisfiable_concept(kb, conjunction({sub, negation(sup)}), options);
    if (verdict.outcome == TableauOutcome::Inconclusive) {
        throw ResourceLimitError(options.max_nodes);
    }
    return verdict.outcome == TableauOutcome::Unsatisfiable;
}

} // namespace tkb
