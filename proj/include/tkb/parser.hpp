// Textual DL syntax.
//
// One statement per '.'-terminated line, '#' starts a comment. Keywords are
// reserved and cannot be used as names; identifiers are NCName-like tokens
// (may contain '-' and any non-ASCII UTF-8 character). "O" is reserved for
// the built-in rule guard predicate.
//
//   tboxStmt  := concept SUBCLASS concept | concept EQUIV concept
//              | role DOMAIN concept | role RANGE concept
//   aboxStmt  := ident ":" concept | ident role ident | ident NOT role ident
//              | ident SAME ident | ident DIFF ident
//   rboxStmt  := roleChain SUBROLE role | role EQUIVROLE role | TRANS role
//              | DIS role role | ASY role | REF role | IRR role
//   roleChain := role { "o" role }
//   role      := ident | INV(ident) | UNIVERSAL
//   concept   := TOP | BOTTOM | ident | NOT concept | concept AND concept
//              | concept OR concept | role SOME concept | role ONLY concept
//              | MIN n role concept | MAX n role concept | role SELF
//              | ONEOF{ident, ...} | (concept)
//   ruleStmt  := atom <- [atom {, atom}]
//   atom      := ident(term[, term]) ; term := ident | ?ident
//
// OR binds loosest, then AND, then the unary forms; parentheses group.

#ifndef TKB_PARSER_HPP
#define TKB_PARSER_HPP

#include <string>

#include "tkb/kb.hpp"

namespace tkb {

// Parses a whole document. Throws ParseError with 1-based line/column on
// syntax errors, Error on name collisions and arity violations.
KnowledgeBase parse_dl(const std::string& text);

// Parses a single concept expression (testing convenience).
ConceptPtr parse_concept(const std::string& text);

// Inverse printer: one statement per line in box order (TBox, ABox, RBox,
// rules). parse_dl(serialize_dl(kb)) is structurally equal to kb.
std::string serialize_dl(const KnowledgeBase& kb);

} // namespace tkb

#endif // TKB_PARSER_HPP
