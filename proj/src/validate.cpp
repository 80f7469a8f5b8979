#include <functional>

#include "tkb/errors.hpp"
#include "tkb/kb.hpp"
#include "tkb/normalize.hpp"
#include "tkb/rules.hpp"

namespace tkb {

namespace {

void check_simple_in_concept(const ConceptPtr& c, const RoleClosure& closure,
                             std::vector<Diagnostic>& out) {
    if (!c) return;
    std::function<void(const ConceptPtr&)> walk = [&](const ConceptPtr& node) {
        if (!node) return;
        switch (node->kind()) {
        case ConceptKind::AtLeast:
        case ConceptKind::AtMost:
        case ConceptKind::Self:
            if (!node->role().is_universal() && !closure.is_simple(node->role())) {
                out.push_back({Diagnostic::Severity::Error, "non-simple-role",
                               "role '" + node->role().to_string() +
                                   "' is implied by a composition and cannot be used in '" +
                                   to_string(node) + "'"});
            }
            if (node->filler()) walk(node->filler());
            break;
        case ConceptKind::Not:
            walk(node->child());
            break;
        case ConceptKind::And:
        case ConceptKind::Or:
            for (const auto& a : node->args()) walk(a);
            break;
        case ConceptKind::Exists:
        case ConceptKind::ForAll:
            walk(node->filler());
            break;
        default:
            break;
        }
    };
    walk(c);
}

bool concept_uses_universal(const ConceptPtr& c) {
    if (!c) return false;
    if (c->kind() == ConceptKind::Not) return concept_uses_universal(c->child());
    for (const auto& a : c->args()) {
        if (concept_uses_universal(a)) return true;
    }
    switch (c->kind()) {
    case ConceptKind::Exists:
    case ConceptKind::ForAll:
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost:
    case ConceptKind::Self:
        if (c->role().is_universal()) return true;
        return concept_uses_universal(c->filler());
    default:
        return false;
    }
}

} // namespace

std::vector<Diagnostic> validate(const KnowledgeBase& kb, bool strict_rules) {
    std::vector<Diagnostic> out;

    auto regularity = check_regularity(kb.rbox());
    if (!regularity.regular) {
        std::string detail;
        for (const auto& ax : regularity.offending) {
            if (!detail.empty()) detail += "; ";
            detail += ax;
        }
        out.push_back({Diagnostic::Severity::Error, "non-regular-rbox",
                       "complex role inclusions admit no regular order: " + detail});
    }

    const RoleClosure closure = role_closure(kb);
    auto require_simple = [&](const RoleExpr& r, const std::string& where) {
        if (!r.is_universal() && !closure.is_simple(r)) {
            out.push_back({Diagnostic::Severity::Error, "non-simple-role",
                           "role '" + r.to_string() +
                               "' is implied by a composition and cannot be used in " + where});
        }
    };

    bool universal_used = false;
    for (const auto& ax : kb.all_axioms()) {
        if (concept_uses_universal(ax.c1) || concept_uses_universal(ax.c2)) universal_used = true;
        if (ax.r1.is_universal() || ax.r2.is_universal()) universal_used = true;
        for (const auto& r : ax.chain) {
            if (r.is_universal()) universal_used = true;
        }
        check_simple_in_concept(ax.c1, closure, out);
        check_simple_in_concept(ax.c2, closure, out);
        switch (ax.kind) {
        case AxiomKind::DisjointRoles:
            require_simple(ax.r1, to_string(ax));
            require_simple(ax.r2, to_string(ax));
            break;
        case AxiomKind::NegatedRoleAssertion:
        case AxiomKind::IrreflexiveRole:
        case AxiomKind::AsymmetricRole:
            require_simple(ax.r1, to_string(ax));
            break;
        default:
            break;
        }
    }
    if (universal_used) {
        out.push_back({Diagnostic::Severity::Error, "universal-role",
                       "the universal role parses but cannot take part in reasoning"});
    }

    if (strict_rules) {
        for (const auto& rule : kb.rules()) {
            try {
                make_safe(rule, SafetyMode::Strict);
            } catch (const UnsafeRuleError& e) {
                out.push_back({Diagnostic::Severity::Error, "unsafe-rule", e.what()});
            }
        }
    }
    return out;
}

} // namespace tkb
