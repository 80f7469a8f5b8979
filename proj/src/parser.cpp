#include "tkb/parser.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tkb/errors.hpp"

namespace tkb {

namespace {

enum class Tok : std::uint8_t {
    Ident,
    Number,
    Keyword,
    Dot,
    Colon,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Question,
    Arrow,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
};

const std::map<std::string, int>& keyword_table() {
    static const std::map<std::string, int> kws = {
        {"TOP", 0},     {"BOTTOM", 0}, {"NOT", 0},   {"AND", 0},      {"OR", 0},
        {"SOME", 0},    {"ONLY", 0},   {"MIN", 0},   {"MAX", 0},      {"SELF", 0},
        {"ONEOF", 0},   {"SUBCLASS", 0}, {"EQUIV", 0}, {"DOMAIN", 0},  {"RANGE", 0},
        {"SUBROLE", 0}, {"EQUIVROLE", 0}, {"TRANS", 0}, {"DIS", 0},    {"ASY", 0},
        {"REF", 0},     {"IRR", 0},    {"SAME", 0},  {"DIFF", 0},     {"INV", 0},
        {"UNIVERSAL", 0}, {"o", 0},
    };
    return kws;
}

bool ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

bool ident_cont(unsigned char c) {
    return ident_start(c) || (c >= '0' && c <= '9') || c == '-';
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { scan(); }

    const std::vector<Token>& tokens() const { return tokens_; }

private:
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
            case '.': push(Tok::Dot, ".", line, col); advance(); continue;
            case ':': push(Tok::Colon, ":", line, col); advance(); continue;
            case '(': push(Tok::LParen, "(", line, col); advance(); continue;
            case ')': push(Tok::RParen, ")", line, col); advance(); continue;
            case '{': push(Tok::LBrace, "{", line, col); advance(); continue;
            case '}': push(Tok::RBrace, "}", line, col); advance(); continue;
            case ',': push(Tok::Comma, ",", line, col); advance(); continue;
            case '?': push(Tok::Question, "?", line, col); advance(); continue;
            case '<':
                advance();
                if (pos_ < text_.size() && text_[pos_] == '-') {
                    push(Tok::Arrow, "<-", line, col);
                    advance();
                    continue;
                }
                throw ParseError(line, col, "unexpected character '<' (did you mean '<-'?)");
            default: break;
            }
            if (c >= '0' && c <= '9') {
                std::string num;
                while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
                    num += text_[pos_];
                    advance();
                }
                if (num.size() > 10 || (num.size() == 10 && num > "2147483647")) {
                    throw ParseError(line, col, "cardinality bound exceeds 2147483647");
                }
                push(Tok::Number, num, line, col);
                continue;
            }
            if (ident_start(c)) {
                std::string word;
                while (pos_ < text_.size() && ident_cont(text_[pos_])) {
                    word += text_[pos_];
                    advance();
                }
                push(keyword_table().count(word) ? Tok::Keyword : Tok::Ident, word, line, col);
                continue;
            }
            throw ParseError(line, col, std::string("unexpected character '") +
                                             static_cast<char>(c) + "'");
        }
        push(Tok::End, "", line_, col_);
    }

    void advance() {
        unsigned char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((c & 0xC0) != 0x80) { // count code points, not bytes
            ++col_;
        }
    }

    void push(Tok kind, std::string text, std::size_t line, std::size_t col) {
        tokens_.push_back({kind, std::move(text), line, col});
    }

    const std::string& text_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
    std::vector<Token> tokens_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : tokens_(Lexer(text).tokens()) {}

    std::pair<std::vector<Axiom>, std::vector<DlSafeRule>> parse_document() {
        std::vector<Axiom> axioms;
        std::vector<DlSafeRule> rules;
        while (peek().kind != Tok::End) {
            if (auto rule = try_parse_rule()) {
                rules.push_back(std::move(*rule));
            } else {
                axioms.push_back(parse_statement());
            }
            expect(Tok::Dot, "'.'");
        }
        return {std::move(axioms), std::move(rules)};
    }

    ConceptPtr parse_single_concept() {
        auto c = parse_or();
        if (peek().kind != Tok::End) fail(peek(), "end of input");
        return c;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    const Token& next() {
        const Token& t = peek();
        if (t.kind != Tok::End) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const Token& at, const std::string& expected) const {
        const std::string found = at.kind == Tok::End ? "end of input" : "'" + at.text + "'";
        throw ParseError(at.line, at.col, "expected " + expected + ", found " + found);
    }

    const Token& expect(Tok kind, const std::string& expected) {
        if (peek().kind != kind) fail(peek(), expected);
        return next();
    }

    bool at_keyword(const char* kw, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::Keyword && t.text == kw;
    }

    void expect_keyword(const char* kw) {
        if (!at_keyword(kw)) fail(peek(), std::string("'") + kw + "'");
        ++pos_;
    }

    // Looks ahead within the current statement (up to the terminating '.')
    // for a top-level marker keyword; brackets shield nested tokens.
    bool statement_has(std::initializer_list<const char*> markers) const {
        int depth = 0;
        for (std::size_t i = pos_; i < tokens_.size(); ++i) {
            const Token& t = tokens_[i];
            if (t.kind == Tok::Dot || t.kind == Tok::End) break;
            if (t.kind == Tok::LParen || t.kind == Tok::LBrace) ++depth;
            else if (t.kind == Tok::RParen || t.kind == Tok::RBrace) --depth;
            else if (depth == 0 && t.kind == Tok::Keyword) {
                for (const char* m : markers) {
                    if (t.text == m) return true;
                }
            }
        }
        return false;
    }

    bool statement_has_arrow() const {
        for (std::size_t i = pos_; i < tokens_.size(); ++i) {
            const Token& t = tokens_[i];
            if (t.kind == Tok::Dot || t.kind == Tok::End) break;
            if (t.kind == Tok::Arrow) return true;
        }
        return false;
    }

    std::optional<DlSafeRule> try_parse_rule() {
        if (!statement_has_arrow()) return std::nullopt;
        DlSafeRule rule;
        rule.head = parse_atom();
        expect(Tok::Arrow, "'<-'");
        if (peek().kind != Tok::Dot) {
            rule.body.push_back(parse_atom());
            while (peek().kind == Tok::Comma) {
                next();
                rule.body.push_back(parse_atom());
            }
        }
        return rule;
    }

    Atom parse_atom() {
        const Token& name = expect(Tok::Ident, "predicate name");
        expect(Tok::LParen, "'('");
        std::vector<Term> terms;
        terms.push_back(parse_term());
        if (peek().kind == Tok::Comma) {
            next();
            terms.push_back(parse_term());
        }
        expect(Tok::RParen, "')'");
        return Atom::non_dl_atom(name.text, std::move(terms)); // classified at KB build
    }

    Term parse_term() {
        if (peek().kind == Tok::Question) {
            next();
            return Term::variable(expect(Tok::Ident, "variable name").text);
        }
        return Term::constant(expect(Tok::Ident, "individual name").text);
    }

    Axiom parse_statement() {
        if (at_keyword("TRANS")) {
            next();
            return Axiom::transitive_role(parse_role());
        }
        if (at_keyword("DIS")) {
            next();
            auto r = parse_role();
            return Axiom::disjoint_roles(r, parse_role());
        }
        if (at_keyword("ASY")) {
            next();
            return Axiom::asymmetric_role(parse_role());
        }
        if (at_keyword("REF")) {
            next();
            return Axiom::reflexive_role(parse_role());
        }
        if (at_keyword("IRR")) {
            next();
            return Axiom::irreflexive_role(parse_role());
        }
        if (peek().kind == Tok::Ident && peek(1).kind == Tok::Colon) {
            const Token& ind = next();
            next(); // ':'
            return Axiom::concept_assertion(parse_or(), ind.text);
        }
        if (statement_has({"SUBROLE", "EQUIVROLE"})) return parse_role_statement();
        if (statement_has({"SUBCLASS", "EQUIV"})) return parse_concept_statement();
        if (statement_has({"DOMAIN", "RANGE"})) {
            auto role = parse_role();
            const bool domain = at_keyword("DOMAIN");
            if (!domain && !at_keyword("RANGE")) fail(peek(), "'DOMAIN' or 'RANGE'");
            next();
            auto c = parse_or();
            return domain ? Axiom::role_domain(role, std::move(c))
                          : Axiom::role_range(role, std::move(c));
        }
        return parse_individual_statement();
    }

    Axiom parse_role_statement() {
        std::vector<RoleExpr> chain;
        chain.push_back(parse_role());
        while (at_keyword("o")) {
            next();
            chain.push_back(parse_role());
        }
        if (at_keyword("EQUIVROLE")) {
            if (chain.size() != 1) fail(peek(), "'SUBROLE' after a role chain");
            next();
            return Axiom::role_equivalence(chain.front(), parse_role());
        }
        expect_keyword("SUBROLE");
        auto sup = parse_role();
        if (chain.size() == 1) return Axiom::role_inclusion(chain.front(), sup);
        return Axiom::complex_role_inclusion(std::move(chain), sup);
    }

    Axiom parse_concept_statement() {
        auto lhs = parse_or();
        const bool equiv = at_keyword("EQUIV");
        if (!equiv && !at_keyword("SUBCLASS")) fail(peek(), "'SUBCLASS' or 'EQUIV'");
        next();
        auto rhs = parse_or();
        return equiv ? Axiom::concept_equivalence(std::move(lhs), std::move(rhs))
                     : Axiom::concept_inclusion(std::move(lhs), std::move(rhs));
    }

    Axiom parse_individual_statement() {
        const Token& subj = expect(Tok::Ident, "individual name");
        if (at_keyword("SAME")) {
            next();
            return Axiom::same_individual(subj.text, expect(Tok::Ident, "individual name").text);
        }
        if (at_keyword("DIFF")) {
            next();
            return Axiom::different_individuals(subj.text,
                                                expect(Tok::Ident, "individual name").text);
        }
        if (at_keyword("NOT")) {
            next();
            auto role = parse_role();
            const Token& obj = expect(Tok::Ident, "individual name");
            return Axiom::negated_role_assertion(role, subj.text, obj.text);
        }
        auto role = parse_role();
        const Token& obj = expect(Tok::Ident, "individual name");
        return Axiom::role_assertion(role, subj.text, obj.text);
    }

    RoleExpr parse_role() {
        if (at_keyword("UNIVERSAL")) {
            next();
            return RoleExpr::universal();
        }
        if (at_keyword("INV")) {
            next();
            expect(Tok::LParen, "'('");
            const Token& name = expect(Tok::Ident, "role name");
            expect(Tok::RParen, "')'");
            return RoleExpr::inverse_of(name.text);
        }
        return RoleExpr::named(expect(Tok::Ident, "role name").text);
    }

    ConceptPtr parse_or() {
        std::vector<ConceptPtr> args;
        args.push_back(parse_and());
        while (at_keyword("OR")) {
            next();
            args.push_back(parse_and());
        }
        return args.size() == 1 ? args.front() : disjunction(std::move(args));
    }

    ConceptPtr parse_and() {
        std::vector<ConceptPtr> args;
        args.push_back(parse_unary());
        while (at_keyword("AND")) {
            next();
            args.push_back(parse_unary());
        }
        return args.size() == 1 ? args.front() : conjunction(std::move(args));
    }

    ConceptPtr parse_unary() {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            next();
            auto c = parse_or();
            expect(Tok::RParen, "')'");
            return c;
        }
        if (t.kind == Tok::Keyword) {
            if (t.text == "TOP") { next(); return top(); }
            if (t.text == "BOTTOM") { next(); return bottom(); }
            if (t.text == "NOT") { next(); return negation(parse_unary()); }
            if (t.text == "MIN" || t.text == "MAX") {
                const bool is_min = t.text == "MIN";
                next();
                const Token& num = expect(Tok::Number, "cardinality");
                auto n = static_cast<std::uint32_t>(std::stoul(num.text));
                auto role = parse_role();
                auto filler = parse_unary();
                return is_min ? at_least(n, role, std::move(filler))
                              : at_most(n, role, std::move(filler));
            }
            if (t.text == "ONEOF") {
                next();
                expect(Tok::LBrace, "'{'");
                std::vector<std::string> inds;
                inds.push_back(expect(Tok::Ident, "individual name").text);
                while (peek().kind == Tok::Comma) {
                    next();
                    inds.push_back(expect(Tok::Ident, "individual name").text);
                }
                expect(Tok::RBrace, "'}'");
                return nominal(std::move(inds));
            }
            if (t.text == "INV" || t.text == "UNIVERSAL") {
                auto role = parse_role();
                return parse_restriction_tail(role);
            }
            fail(t, "a concept expression");
        }
        if (t.kind == Tok::Ident) {
            // An identifier is a role iff followed by SOME/ONLY/SELF.
            if (at_keyword("SOME", 1) || at_keyword("ONLY", 1) || at_keyword("SELF", 1)) {
                auto role = RoleExpr::named(next().text);
                return parse_restriction_tail(role);
            }
            return atomic(next().text);
        }
        fail(t, "a concept expression");
    }

    ConceptPtr parse_restriction_tail(const RoleExpr& role) {
        if (at_keyword("SOME")) {
            next();
            return exists(role, parse_unary());
        }
        if (at_keyword("ONLY")) {
            next();
            return forall(role, parse_unary());
        }
        expect_keyword("SELF");
        return self_restriction(role);
    }

    const std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

KnowledgeBase parse_dl(const std::string& text) {
    Parser parser(text);
    auto [axioms, rules] = parser.parse_document();
    return KnowledgeBase(std::move(axioms), std::move(rules));
}

ConceptPtr parse_concept(const std::string& text) {
    return Parser(text).parse_single_concept();
}

std::string serialize_dl(const KnowledgeBase& kb) {
    std::string out;
    for (const auto& ax : kb.all_axioms()) {
        out += to_string(ax);
        out += "\n";
    }
    for (const auto& rule : kb.rules()) {
        out += rule.to_string();
        out += "\n";
    }
    return out;
}

} // namespace tkb
