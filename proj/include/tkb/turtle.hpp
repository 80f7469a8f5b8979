// Translation between knowledge bases and the OWL 2 Turtle subset.
//
// The writer emits one triple group per axiom, in box order, with canonical
// spacing and a fixed prefix header; output is byte-deterministic. Entity
// names live in the default namespace. Complex concept expressions use the
// standard blank-node encodings (owl:Restriction, owl:intersectionOf, ...).
//
// The reader accepts the subset grammar (prefixed names, the 'a' keyword,
// collections, blank-node property lists, typed literals) and recognizes
// exactly the supported vocabulary; recognized-but-unmappable or unknown
// triples come back as diagnostics, never silent drops.

#ifndef TKB_TURTLE_HPP
#define TKB_TURTLE_HPP

#include <string>
#include <vector>

#include "tkb/kb.hpp"

namespace tkb {

inline const std::string kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline const std::string kOwlNs = "http://www.w3.org/2002/07/owl#";
inline const std::string kXsdNs = "http://www.w3.org/2001/XMLSchema#";
inline const std::string kDefaultNs = "http://example.org/kb#";

struct TurtleDoc {
    std::vector<std::pair<std::string, std::string>> prefixes; // label -> IRI
    std::vector<std::string> groups;                           // one group per axiom

    std::string to_string() const;
};

// Throws UnsupportedConstructError for constructs without a Turtle mapping
// (the universal role; rules are never serialized).
TurtleDoc to_turtle(const KnowledgeBase& kb);
std::string to_turtle_text(const KnowledgeBase& kb);

struct FromTurtleResult {
    KnowledgeBase kb;
    std::vector<Diagnostic> diagnostics;
};

// Throws ParseError on syntax errors and Error on malformed structures
// (broken RDF lists, unresolvable prefixes).
FromTurtleResult from_turtle(const std::string& text);

} // namespace tkb

#endif // TKB_TURTLE_HPP
