// Concept and role expression trees.
//
// Concepts are immutable shared nodes built through the factory functions
// below. Construction performs the structural normalization the rest of the
// engine relies on:
//
//   - conjunction/disjunction flatten nested same-kind arguments, drop the
//     neutral element, collapse on the absorbing element, and de-duplicate
//     structurally equal members (first occurrence kept);
//   - argument lists of length one collapse to the single member, empty
//     lists to the neutral element;
//   - nominal member sets are sorted, de-duplicated and never empty;
//   - role inversion is an involution: inverse(inverse(r)) is r.
//
// Structural order (compare/equal) is a total order used for deterministic
// set containers throughout the engine.

#ifndef TKB_AST_HPP
#define TKB_AST_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace tkb {

enum class ConceptKind : std::uint8_t {
    Atomic,
    Top,
    Bottom,
    Not,
    And,
    Or,
    Exists,
    ForAll,
    AtLeast,
    AtMost,
    Self,
    Nominal,
};

struct RoleExpr {
    enum class Kind : std::uint8_t { Named, Inverse, Universal };

    Kind kind = Kind::Named;
    std::string name; // empty for the universal role

    static RoleExpr named(std::string n) { return {Kind::Named, std::move(n)}; }
    static RoleExpr inverse_of(std::string n) { return {Kind::Inverse, std::move(n)}; }
    static RoleExpr universal() { return {Kind::Universal, std::string()}; }

    // Involutive inversion; the universal role is its own inverse.
    RoleExpr inverse() const {
        switch (kind) {
        case Kind::Named: return {Kind::Inverse, name};
        case Kind::Inverse: return {Kind::Named, name};
        case Kind::Universal: return *this;
        }
        return *this;
    }

    bool is_universal() const { return kind == Kind::Universal; }
    bool is_inverse() const { return kind == Kind::Inverse; }

    std::string to_string() const;

    friend bool operator==(const RoleExpr& a, const RoleExpr& b) {
        return a.kind == b.kind && a.name == b.name;
    }
    friend bool operator<(const RoleExpr& a, const RoleExpr& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.name < b.name;
    }
};

class ConceptExpr;
using ConceptPtr = std::shared_ptr<const ConceptExpr>;

class ConceptExpr {
public:
    ConceptKind kind() const { return kind_; }

    const std::string& name() const { return name_; }                      // Atomic
    const ConceptPtr& child() const { return filler_; }                    // Not
    const std::vector<ConceptPtr>& args() const { return args_; }          // And / Or
    const RoleExpr& role() const { return role_; }                         // restrictions, Self
    const ConceptPtr& filler() const { return filler_; }                   // Exists/ForAll/AtLeast/AtMost
    std::uint32_t cardinality() const { return n_; }                       // AtLeast / AtMost
    const std::vector<std::string>& individuals() const { return inds_; }  // Nominal (sorted)

    bool is(ConceptKind k) const { return kind_ == k; }

private:
    ConceptExpr() = default;
    friend struct ConceptFactory;

    ConceptKind kind_ = ConceptKind::Top;
    std::string name_;
    std::vector<ConceptPtr> args_;
    ConceptPtr filler_;
    RoleExpr role_;
    std::uint32_t n_ = 0;
    std::vector<std::string> inds_;
};

// Factories. See the file comment for the normalization they apply.
ConceptPtr atomic(std::string name);
ConceptPtr top();
ConceptPtr bottom();
ConceptPtr negation(ConceptPtr c);
ConceptPtr conjunction(std::vector<ConceptPtr> args);
ConceptPtr disjunction(std::vector<ConceptPtr> args);
ConceptPtr exists(RoleExpr r, ConceptPtr filler);
ConceptPtr forall(RoleExpr r, ConceptPtr filler);
ConceptPtr at_least(std::uint32_t n, RoleExpr r, ConceptPtr filler);
ConceptPtr at_most(std::uint32_t n, RoleExpr r, ConceptPtr filler);
ConceptPtr self_restriction(RoleExpr r);
ConceptPtr nominal(std::vector<std::string> individuals);

// Total structural order: negative, zero or positive like strcmp.
int compare(const ConceptExpr& a, const ConceptExpr& b);
int compare(const ConceptPtr& a, const ConceptPtr& b);
bool structurally_equal(const ConceptPtr& a, const ConceptPtr& b);

// Comparator for ordered containers of ConceptPtr.
struct ConceptLess {
    bool operator()(const ConceptPtr& a, const ConceptPtr& b) const { return compare(a, b) < 0; }
};

// Renders the expression in the textual DL syntax (parseable back).
std::string to_string(const ConceptExpr& c);
std::string to_string(const ConceptPtr& c);

} // namespace tkb

#endif // TKB_AST_HPP
