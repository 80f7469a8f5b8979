#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tkb/errors.hpp"
#include "tkb/turtle.hpp"

namespace tkb {

namespace {

// ----- terms and triples ------------------------------------------------------

struct Term {
    enum class Kind : std::uint8_t { Iri, Blank, Literal };
    Kind kind = Kind::Iri;
    std::string value;    // full IRI / blank label / literal lexical form
    std::string datatype; // literal datatype IRI, empty for plain

    friend bool operator==(const Term& a, const Term& b) {
        return a.kind == b.kind && a.value == b.value && a.datatype == b.datatype;
    }
    friend bool operator<(const Term& a, const Term& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.value != b.value) return a.value < b.value;
        return a.datatype < b.datatype;
    }

    std::string show() const {
        switch (kind) {
        case Kind::Iri: return "<" + value + ">";
        case Kind::Blank: return "_:" + value;
        case Kind::Literal: return "\"" + value + "\"";
        }
        return value;
    }
};

struct Triple {
    Term s, p, o;
};

// ----- tokenizer --------------------------------------------------------------

enum class Tok : std::uint8_t {
    PrefixDirective, // @prefix
    PName,           // prefix:local (text = "prefix\nlocal")
    IriRef,
    BlankLabel,
    StringLit,
    Integer,
    A, // the 'a' keyword
    DoubleCaret,
    Dot,
    Semicolon,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1, col = 1;
};

bool pn_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.' || c >= 0x80;
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { scan(); }
    std::vector<Token> tokens;

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line_, col_, msg);
    }

    void advance() {
        unsigned char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((c & 0xC0) != 0x80) {
            ++col_;
        }
    }

    void push(Tok kind, std::string text, std::size_t line, std::size_t col) {
        tokens.push_back({kind, std::move(text), line, col});
    }

    void scan() {
        while (pos_ < text_.size()) {
            unsigned char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
                continue;
            }
            const std::size_t line = line_, col = col_;
            switch (c) {
            case '.': advance(); push(Tok::Dot, ".", line, col); continue;
            case ';': advance(); push(Tok::Semicolon, ";", line, col); continue;
            case ',': advance(); push(Tok::Comma, ",", line, col); continue;
            case '(': advance(); push(Tok::LParen, "(", line, col); continue;
            case ')': advance(); push(Tok::RParen, ")", line, col); continue;
            case '[': advance(); push(Tok::LBracket, "[", line, col); continue;
            case ']': advance(); push(Tok::RBracket, "]", line, col); continue;
            default: break;
            }
            if (c == '@') {
                advance();
                std::string word;
                while (pos_ < text_.size() && pn_char(text_[pos_]) && text_[pos_] != '.') {
                    word += text_[pos_];
                    advance();
                }
                if (word != "prefix") fail("unsupported directive '@" + word + "'");
                push(Tok::PrefixDirective, "@prefix", line, col);
                continue;
            }
            if (c == '<') {
                advance();
                std::string iri;
                while (pos_ < text_.size() && text_[pos_] != '>') {
                    iri += text_[pos_];
                    advance();
                }
                if (pos_ == text_.size()) fail("unterminated IRI reference");
                advance(); // '>'
                push(Tok::IriRef, iri, line, col);
                continue;
            }
            if (c == '"') {
                advance();
                std::string lit;
                while (pos_ < text_.size() && text_[pos_] != '"') {
                    if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
                        advance();
                        char esc = text_[pos_];
                        lit += esc == 'n' ? '\n' : (esc == 't' ? '\t' : esc);
                        advance();
                        continue;
                    }
                    lit += text_[pos_];
                    advance();
                }
                if (pos_ == text_.size()) fail("unterminated string literal");
                advance(); // closing quote
                if (pos_ + 1 < text_.size() && text_[pos_] == '@') {
                    // language tag, kept opaque
                    advance();
                    while (pos_ < text_.size() && (pn_char(text_[pos_]) && text_[pos_] != '.')) {
                        advance();
                    }
                }
                push(Tok::StringLit, lit, line, col);
                continue;
            }
            if (c == '^') {
                advance();
                if (pos_ >= text_.size() || text_[pos_] != '^') fail("expected '^^'");
                advance();
                push(Tok::DoubleCaret, "^^", line, col);
                continue;
            }
            if (c == '_' && pos_ + 1 < text_.size() && text_[pos_ + 1] == ':') {
                advance();
                advance();
                std::string label;
                while (pos_ < text_.size() && pn_char(text_[pos_]) && text_[pos_] != '.') {
                    label += text_[pos_];
                    advance();
                }
                push(Tok::BlankLabel, label, line, col);
                continue;
            }
            if (c >= '0' && c <= '9') {
                std::string num;
                while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
                    num += text_[pos_];
                    advance();
                }
                push(Tok::Integer, num, line, col);
                continue;
            }
            if (pn_char(c) || c == ':') {
                // prefixed name: [prefix] ':' [local]; a bare word is only
                // valid as the 'a' keyword or a boolean literal
                std::string word;
                while (pos_ < text_.size() && pn_char(text_[pos_])) {
                    word += text_[pos_];
                    advance();
                }
                // a PN_LOCAL/PN_PREFIX must not end with '.'
                while (!word.empty() && word.back() == '.') {
                    word.pop_back();
                    --pos_; // the dot is a statement terminator
                    --col_;
                }
                if (pos_ < text_.size() && text_[pos_] == ':') {
                    advance();
                    std::string local;
                    while (pos_ < text_.size() && pn_char(text_[pos_])) {
                        local += text_[pos_];
                        advance();
                    }
                    while (!local.empty() && local.back() == '.') {
                        local.pop_back();
                        --pos_;
                        --col_;
                    }
                    push(Tok::PName, word + "\n" + local, line, col);
                    continue;
                }
                if (word == "a") {
                    push(Tok::A, "a", line, col);
                    continue;
                }
                if (word == "true" || word == "false") {
                    Token t{Tok::StringLit, word, line, col};
                    tokens.push_back(t);
                    // boolean literals carry their datatype implicitly; the
                    // parser attaches xsd:boolean when no ^^ follows
                    tokens.back().kind = Tok::StringLit;
                    continue;
                }
                fail("unexpected token '" + word + "'");
            }
            fail(std::string("unexpected character '") + static_cast<char>(c) + "'");
        }
        push(Tok::End, "", line_, col_);
    }

    const std::string& text_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

// ----- triple parser -----------------------------------------------------------

class TripleParser {
public:
    explicit TripleParser(const std::string& text) : tokens_(Lexer(text).tokens) {
        prefixes_["rdf"] = kRdfNs;
        prefixes_["rdfs"] = kRdfsNs;
        prefixes_["owl"] = kOwlNs;
        prefixes_["xsd"] = kXsdNs;
    }

    void parse() {
        while (peek().kind != Tok::End) {
            if (peek().kind == Tok::PrefixDirective) {
                next();
                const Token& name = expect(Tok::PName, "prefix name");
                const std::string label = name.text.substr(0, name.text.find('\n'));
                const Token& iri = expect(Tok::IriRef, "IRI reference");
                prefixes_[label] = iri.text;
                expect(Tok::Dot, "'.'");
                continue;
            }
            Term subject = parse_term(true);
            parse_predicate_object_list(subject);
            expect(Tok::Dot, "'.'");
        }
    }

    std::vector<Triple> triples;
    std::map<std::string, std::string> prefixes_;

    std::string default_ns() const {
        auto it = prefixes_.find("");
        return it == prefixes_.end() ? kDefaultNs : it->second;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const Token& at, const std::string& expected) const {
        throw ParseError(at.line, at.col,
                         "expected " + expected + ", found '" +
                             (at.kind == Tok::End ? "end of input" : at.text) + "'");
    }

    const Token& expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) fail(peek(), what);
        return next();
    }

    Term fresh_blank() { return {Term::Kind::Blank, "g" + std::to_string(blank_counter_++), ""}; }

    Term resolve_pname(const Token& t) {
        const auto split = t.text.find('\n');
        const std::string prefix = t.text.substr(0, split);
        const std::string local = t.text.substr(split + 1);
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) {
            throw ParseError(t.line, t.col, "undeclared prefix '" + prefix + ":'");
        }
        return {Term::Kind::Iri, it->second + local, ""};
    }

    // subject_position restricts literals.
    Term parse_term(bool subject_position) {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::PName:
            next();
            return resolve_pname(t);
        case Tok::IriRef:
            next();
            return {Term::Kind::Iri, t.text, ""};
        case Tok::BlankLabel:
            next();
            return {Term::Kind::Blank, "u" + t.text, ""};
        case Tok::A:
            fail(t, "a subject or object term");
        case Tok::LBracket: {
            next();
            Term blank = fresh_blank();
            if (peek().kind != Tok::RBracket) parse_predicate_object_list(blank);
            expect(Tok::RBracket, "']'");
            return blank;
        }
        case Tok::LParen: {
            next();
            std::vector<Term> items;
            while (peek().kind != Tok::RParen) items.push_back(parse_term(false));
            expect(Tok::RParen, "')'");
            return emit_list(items);
        }
        case Tok::StringLit: {
            if (subject_position) fail(t, "a subject term");
            next();
            std::string datatype;
            if (peek().kind == Tok::DoubleCaret) {
                next();
                const Token& dt = peek();
                if (dt.kind == Tok::PName) {
                    next();
                    datatype = resolve_pname(dt).value;
                } else if (dt.kind == Tok::IriRef) {
                    next();
                    datatype = dt.text;
                } else {
                    fail(dt, "a datatype IRI");
                }
            } else if (t.text == "true" || t.text == "false") {
                datatype = kXsdNs + "boolean";
            }
            return {Term::Kind::Literal, t.text, datatype};
        }
        case Tok::Integer:
            if (subject_position) fail(t, "a subject term");
            next();
            return {Term::Kind::Literal, t.text, kXsdNs + "integer"};
        default:
            fail(t, subject_position ? "a subject term" : "an object term");
        }
    }

    Term emit_list(const std::vector<Term>& items) {
        const Term nil{Term::Kind::Iri, kRdfNs + "nil", ""};
        if (items.empty()) return nil;
        std::vector<Term> cells;
        for (std::size_t i = 0; i < items.size(); ++i) cells.push_back(fresh_blank());
        for (std::size_t i = 0; i < items.size(); ++i) {
            triples.push_back({cells[i], {Term::Kind::Iri, kRdfNs + "first", ""}, items[i]});
            triples.push_back({cells[i],
                               {Term::Kind::Iri, kRdfNs + "rest", ""},
                               i + 1 < items.size() ? cells[i + 1] : nil});
        }
        return cells.front();
    }

    void parse_predicate_object_list(const Term& subject) {
        while (true) {
            Term predicate;
            if (peek().kind == Tok::A) {
                next();
                predicate = {Term::Kind::Iri, kRdfNs + "type", ""};
            } else {
                const Token& t = peek();
                if (t.kind == Tok::PName) {
                    next();
                    predicate = resolve_pname(t);
                } else if (t.kind == Tok::IriRef) {
                    next();
                    predicate = {Term::Kind::Iri, t.text, ""};
                } else {
                    fail(t, "a predicate");
                }
            }
            while (true) {
                Term object = parse_term(false);
                triples.push_back({subject, predicate, object});
                if (peek().kind != Tok::Comma) break;
                next();
            }
            if (peek().kind != Tok::Semicolon) break;
            next();
            if (peek().kind == Tok::Dot || peek().kind == Tok::RBracket) break; // trailing ';'
        }
    }

    const std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t blank_counter_ = 0;
};

// ----- axiom extraction ---------------------------------------------------------

class Extractor {
public:
    Extractor(std::vector<Triple> triples, std::string default_ns)
        : triples_(std::move(triples)), default_ns_(std::move(default_ns)),
          consumed_(triples_.size(), false) {
        for (std::size_t i = 0; i < triples_.size(); ++i) {
            by_subject_[triples_[i].s].push_back(i);
        }
    }

    FromTurtleResult extract() {
        std::vector<Axiom> axioms;
        for (std::size_t i = 0; i < triples_.size(); ++i) {
            if (consumed_[i]) continue;
            if (auto ax = extract_root(i)) axioms.push_back(std::move(*ax));
        }
        for (std::size_t i = 0; i < triples_.size(); ++i) {
            if (!consumed_[i]) {
                diag(Diagnostic::Severity::Warning, "unsupported-vocabulary",
                     "triple outside the supported vocabulary ignored: " +
                         triples_[i].s.show() + " " + triples_[i].p.show() + " " +
                         triples_[i].o.show());
            }
        }
        FromTurtleResult result;
        result.kb = KnowledgeBase(std::move(axioms), {});
        result.diagnostics = std::move(diagnostics_);
        return result;
    }

private:
    void diag(Diagnostic::Severity sev, std::string code, std::string message) {
        diagnostics_.push_back({sev, std::move(code), std::move(message)});
    }

    static bool is_iri(const Term& t, const std::string& ns, const char* local) {
        return t.kind == Term::Kind::Iri && t.value == ns + local;
    }

    bool in_default_ns(const Term& t) const {
        return t.kind == Term::Kind::Iri && t.value.rfind(default_ns_, 0) == 0 &&
               t.value.size() > default_ns_.size();
    }

    std::string local_name(const Term& t) const {
        if (!in_default_ns(t)) {
            throw Error("entity '" + t.show() + "' is outside the default namespace");
        }
        return t.value.substr(default_ns_.size());
    }

    std::optional<std::size_t> find_property(const Term& subject, const std::string& ns,
                                             const char* local, bool mark = true) {
        auto it = by_subject_.find(subject);
        if (it == by_subject_.end()) return std::nullopt;
        for (std::size_t idx : it->second) {
            if (is_iri(triples_[idx].p, ns, local)) {
                if (mark) consumed_[idx] = true;
                return idx;
            }
        }
        return std::nullopt;
    }

    std::vector<Term> read_list(const Term& head, const char* context) {
        std::vector<Term> items;
        Term cur = head;
        std::set<Term> seen;
        while (!(cur.kind == Term::Kind::Iri && cur.value == kRdfNs + "nil")) {
            if (cur.kind != Term::Kind::Blank || seen.count(cur)) {
                throw Error(std::string("malformed RDF list in ") + context);
            }
            seen.insert(cur);
            auto first = find_property(cur, kRdfNs, "first");
            auto rest = find_property(cur, kRdfNs, "rest");
            if (!first || !rest) {
                throw Error(std::string("malformed RDF list in ") + context);
            }
            items.push_back(triples_[*first].o);
            cur = triples_[*rest].o;
        }
        return items;
    }

    RoleExpr to_role(const Term& t) {
        if (t.kind == Term::Kind::Iri) return RoleExpr::named(local_name(t));
        if (t.kind == Term::Kind::Blank) {
            if (auto inv = find_property(t, kOwlNs, "inverseOf")) {
                const Term& inner = triples_[*inv].o;
                if (inner.kind == Term::Kind::Iri) {
                    return RoleExpr::inverse_of(local_name(inner));
                }
            }
            throw Error("unrecognized property expression at " + t.show());
        }
        throw Error("a literal cannot be a property expression");
    }

    ConceptPtr to_concept(const Term& t) {
        if (t.kind == Term::Kind::Iri) {
            if (is_iri(t, kOwlNs, "Thing")) return top();
            if (is_iri(t, kOwlNs, "Nothing")) return bottom();
            return atomic(local_name(t));
        }
        if (t.kind != Term::Kind::Blank) {
            throw Error("a literal cannot be a class expression");
        }
        if (auto idx = find_property(t, kOwlNs, "intersectionOf")) {
            std::vector<ConceptPtr> args;
            for (const auto& item : read_list(triples_[*idx].o, "owl:intersectionOf")) {
                args.push_back(to_concept(item));
            }
            return conjunction(std::move(args));
        }
        if (auto idx = find_property(t, kOwlNs, "unionOf")) {
            std::vector<ConceptPtr> args;
            for (const auto& item : read_list(triples_[*idx].o, "owl:unionOf")) {
                args.push_back(to_concept(item));
            }
            return disjunction(std::move(args));
        }
        if (auto idx = find_property(t, kOwlNs, "complementOf")) {
            return negation(to_concept(triples_[*idx].o));
        }
        if (auto idx = find_property(t, kOwlNs, "oneOf")) {
            std::vector<std::string> inds;
            for (const auto& item : read_list(triples_[*idx].o, "owl:oneOf")) {
                inds.push_back(local_name(item));
            }
            return nominal(std::move(inds));
        }
        if (auto on_prop = find_property(t, kOwlNs, "onProperty")) {
            // consume the "a owl:Restriction" triple if present
            if (auto type_idx = find_property(t, kRdfNs, "type", false)) {
                if (is_iri(triples_[*type_idx].o, kOwlNs, "Restriction")) {
                    consumed_[*type_idx] = true;
                }
            }
            RoleExpr role = to_role(triples_[*on_prop].o);
            if (auto idx = find_property(t, kOwlNs, "someValuesFrom")) {
                return exists(role, to_concept(triples_[*idx].o));
            }
            if (auto idx = find_property(t, kOwlNs, "allValuesFrom")) {
                return forall(role, to_concept(triples_[*idx].o));
            }
            if (auto idx = find_property(t, kOwlNs, "hasSelf")) {
                if (triples_[*idx].o.value != "true") {
                    throw Error("owl:hasSelf expects \"true\"");
                }
                return self_restriction(role);
            }
            const bool is_min = find_property(t, kOwlNs, "minQualifiedCardinality", false).has_value();
            const char* card_prop = is_min ? "minQualifiedCardinality" : "maxQualifiedCardinality";
            if (auto idx = find_property(t, kOwlNs, card_prop)) {
                const Term& lit = triples_[*idx].o;
                if (lit.kind != Term::Kind::Literal) {
                    throw Error("cardinality must be a literal");
                }
                unsigned long n = 0;
                try {
                    n = std::stoul(lit.value);
                } catch (...) {
                    throw Error("cardinality literal '" + lit.value + "' is not a number");
                }
                if (n > 2147483647ul) throw Error("cardinality bound exceeds 2147483647");
                auto on_class = find_property(t, kOwlNs, "onClass");
                ConceptPtr filler = on_class ? to_concept(triples_[*on_class].o) : top();
                return is_min ? at_least(static_cast<std::uint32_t>(n), role, std::move(filler))
                              : at_most(static_cast<std::uint32_t>(n), role, std::move(filler));
            }
            throw Error("unrecognized restriction at " + t.show());
        }
        throw Error("unrecognized class expression at " + t.show());
    }

    std::optional<Axiom> extract_root(std::size_t idx) {
        const Triple& tr = triples_[idx];
        const Term& p = tr.p;

        if (is_iri(p, kRdfNs, "type")) {
            const Term& o = tr.o;
            if (is_iri(o, kOwlNs, "TransitiveProperty")) {
                consumed_[idx] = true;
                return Axiom::transitive_role(to_role(tr.s));
            }
            if (is_iri(o, kOwlNs, "AsymmetricProperty")) {
                consumed_[idx] = true;
                return Axiom::asymmetric_role(to_role(tr.s));
            }
            if (is_iri(o, kOwlNs, "ReflexiveProperty")) {
                consumed_[idx] = true;
                return Axiom::reflexive_role(to_role(tr.s));
            }
            if (is_iri(o, kOwlNs, "IrreflexiveProperty")) {
                consumed_[idx] = true;
                return Axiom::irreflexive_role(to_role(tr.s));
            }
            if (is_iri(o, kOwlNs, "SymmetricProperty")) {
                consumed_[idx] = true;
                diag(Diagnostic::Severity::Warning, "unsupported-vocabulary",
                     "owl:SymmetricProperty has no axiom form here; declaration on " +
                         tr.s.show() + " ignored");
                return std::nullopt;
            }
            if (is_iri(o, kOwlNs, "AllDisjointProperties")) {
                consumed_[idx] = true;
                auto members = find_property(tr.s, kOwlNs, "members");
                if (!members) throw Error("owl:AllDisjointProperties without owl:members");
                auto items = read_list(triples_[*members].o, "owl:members");
                if (items.size() != 2) {
                    throw Error("owl:members expects exactly two properties");
                }
                return Axiom::disjoint_roles(to_role(items[0]), to_role(items[1]));
            }
            if (is_iri(o, kOwlNs, "NegativePropertyAssertion")) {
                consumed_[idx] = true;
                auto src = find_property(tr.s, kOwlNs, "sourceIndividual");
                auto prop = find_property(tr.s, kOwlNs, "assertionProperty");
                auto tgt = find_property(tr.s, kOwlNs, "targetIndividual");
                if (!src || !prop || !tgt) {
                    throw Error("incomplete owl:NegativePropertyAssertion");
                }
                return Axiom::negated_role_assertion(to_role(triples_[*prop].o),
                                                     local_name(triples_[*src].o),
                                                     local_name(triples_[*tgt].o));
            }
            if (o.kind == Term::Kind::Iri && !in_default_ns(o) &&
                !is_iri(o, kOwlNs, "Thing") && !is_iri(o, kOwlNs, "Nothing")) {
                // a declaration such as "a owl:Class"; not an axiom here
                return std::nullopt;
            }
            consumed_[idx] = true;
            return Axiom::concept_assertion(to_concept(tr.o), local_name(tr.s));
        }

        if (is_iri(p, kRdfsNs, "subClassOf")) {
            consumed_[idx] = true;
            return Axiom::concept_inclusion(to_concept(tr.s), to_concept(tr.o));
        }
        if (is_iri(p, kOwlNs, "equivalentClass")) {
            consumed_[idx] = true;
            return Axiom::concept_equivalence(to_concept(tr.s), to_concept(tr.o));
        }
        if (is_iri(p, kRdfsNs, "subPropertyOf")) {
            consumed_[idx] = true;
            return Axiom::role_inclusion(to_role(tr.s), to_role(tr.o));
        }
        if (is_iri(p, kOwlNs, "equivalentProperty")) {
            consumed_[idx] = true;
            return Axiom::role_equivalence(to_role(tr.s), to_role(tr.o));
        }
        if (is_iri(p, kRdfsNs, "domain")) {
            consumed_[idx] = true;
            return Axiom::role_domain(to_role(tr.s), to_concept(tr.o));
        }
        if (is_iri(p, kRdfsNs, "range")) {
            consumed_[idx] = true;
            return Axiom::role_range(to_role(tr.s), to_concept(tr.o));
        }
        if (is_iri(p, kOwlNs, "sameAs") || is_iri(p, kOwlNs, "sameIndividualAs")) {
            consumed_[idx] = true;
            return Axiom::same_individual(local_name(tr.s), local_name(tr.o));
        }
        if (is_iri(p, kOwlNs, "differentFrom")) {
            consumed_[idx] = true;
            return Axiom::different_individuals(local_name(tr.s), local_name(tr.o));
        }
        if (is_iri(p, kOwlNs, "propertyChainAxiom")) {
            consumed_[idx] = true;
            auto items = read_list(tr.o, "owl:propertyChainAxiom");
            if (items.empty()) throw Error("malformed RDF list in owl:propertyChainAxiom");
            std::vector<RoleExpr> chain;
            for (const auto& item : items) chain.push_back(to_role(item));
            if (chain.size() == 1) return Axiom::role_inclusion(chain.front(), to_role(tr.s));
            return Axiom::complex_role_inclusion(std::move(chain), to_role(tr.s));
        }
        if (is_iri(p, kOwlNs, "propertyDisjointWith")) {
            consumed_[idx] = true;
            return Axiom::disjoint_roles(to_role(tr.s), to_role(tr.o));
        }
        if (in_default_ns(p)) {
            if (tr.o.kind == Term::Kind::Literal) {
                diag(Diagnostic::Severity::Warning, "unsupported-vocabulary",
                     "literal-valued assertion ignored: " + tr.s.show() + " " + p.show() + " " +
                         tr.o.show());
                consumed_[idx] = true;
                return std::nullopt;
            }
            consumed_[idx] = true;
            return Axiom::role_assertion(RoleExpr::named(local_name(p)), local_name(tr.s),
                                         local_name(tr.o));
        }
        return std::nullopt; // reported as a leftover afterwards
    }

    std::vector<Triple> triples_;
    std::string default_ns_;
    std::vector<bool> consumed_;
    std::map<Term, std::vector<std::size_t>> by_subject_;
    std::vector<Diagnostic> diagnostics_;
};

} // namespace

FromTurtleResult from_turtle(const std::string& text) {
    TripleParser parser(text);
    parser.parse();
    Extractor extractor(std::move(parser.triples), parser.default_ns());
    return extractor.extract();
}

} // namespace tkb
