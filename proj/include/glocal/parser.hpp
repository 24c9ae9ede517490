#pragma once

// Surface grammar:
//   form  := impl
//   impl  := disj ('->' impl)?
//   disj  := conj ('|' conj)*
//   conj  := unary ('&' unary)*
//   unary := '!' unary | '<' ID '>' unary | '[' ID ']' unary | atom
//   atom  := 'alive' '(' ID ')' | ID '@' ID | 'true' | 'false' | '(' form ')'

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"

namespace glocal {

struct ParseOptions {
    /// Agent used to expand `true`/`false`. When unset, the least agent mentioned in the formula is used.
    std::optional<AgentId> constant_agent;
};

namespace detail {

enum class Tok { Id, At, LParen, RParen, LAngle, RAngle, LBrack, RBrack, Bang, Amp, Bar, Arrow, End };

inline const char* tok_name(Tok t) {
    switch (t) {
    case Tok::Id: return "identifier";
    case Tok::At: return "'@'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

inline std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::isalpha(c)) {
            std::size_t j = i + 1;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Id, std::string(s.substr(i, j - i)), i});
            i = j;
            continue;
        }
        Tok t;
        std::size_t len = 1;
        switch (c) {
        case '@': t = Tok::At; break;
        case '(': t = Tok::LParen; break;
        case ')': t = Tok::RParen; break;
        case '<': t = Tok::LAngle; break;
        case '>': t = Tok::RAngle; break;
        case '[': t = Tok::LBrack; break;
        case ']': t = Tok::RBrack; break;
        case '!': t = Tok::Bang; break;
        case '&': t = Tok::Amp; break;
        case '|': t = Tok::Bar; break;
        case '-':
            if (i + 1 < s.size() && s[i + 1] == '>') {
                t = Tok::Arrow;
                len = 2;
                break;
            }
            [[fallthrough]];
        default:
            throw SyntaxError(i, {}, std::string("unexpected character '") + static_cast<char>(c) + "'");
        }
        out.push_back({t, std::string(s.substr(i, len)), i});
        i += len;
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, std::optional<AgentId> constant_agent)
        : toks_(std::move(toks)), constant_agent_(std::move(constant_agent)) {}

    Formula parse_all() {
        Formula f = impl();
        expect(Tok::End, {"'->'", "'|'", "'&'", "end of input"});
        return f;
    }

    std::optional<std::size_t> first_constant_offset() const { return first_constant_; }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& peek2() const { return toks_[std::min(pos_ + 1, toks_.size() - 1)]; }

    const Token& expect(Tok t, std::vector<std::string> expected = {}) {
        if (peek().kind != t) {
            if (expected.empty()) expected.push_back(tok_name(t));
            fail(std::move(expected));
        }
        return toks_[pos_++];
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError(t.offset, std::move(expected), "unexpected " + got);
    }

    Formula impl() {
        Formula l = disj_();
        if (peek().kind == Tok::Arrow) {
            ++pos_;
            Formula r = impl();
            return implies(std::move(l), std::move(r));
        }
        return l;
    }

    Formula disj_() {
        Formula l = conj_();
        while (peek().kind == Tok::Bar) {
            ++pos_;
            l = disj(std::move(l), conj_());
        }
        return l;
    }

    Formula conj_() {
        Formula l = unary();
        while (peek().kind == Tok::Amp) {
            ++pos_;
            l = conj(std::move(l), unary());
        }
        return l;
    }

    std::string agent_id() { return expect(Tok::Id, {"agent identifier"}).text; }

    Formula unary() {
        switch (peek().kind) {
        case Tok::Bang:
            ++pos_;
            return neg(unary());
        case Tok::LAngle: {
            ++pos_;
            std::string a = agent_id();
            expect(Tok::RAngle);
            return diamond(std::move(a), unary());
        }
        case Tok::LBrack: {
            ++pos_;
            std::string a = agent_id();
            expect(Tok::RBrack);
            return box(std::move(a), unary());
        }
        default: return atom_();
        }
    }

    Formula constant(bool value) {
        if (!first_constant_) first_constant_ = peek().offset;
        ++pos_;
        // Placeholder agent; replaced by a second pass when no agent context was given.
        AgentId a = constant_agent_.value_or("");
        return value ? top(a) : bot(a);
    }

    Formula atom_() {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            ++pos_;
            Formula f = impl();
            expect(Tok::RParen, {"')'", "'->'", "'|'", "'&'"});
            return f;
        }
        if (t.kind != Tok::Id) fail({"'!'", "'<'", "'['", "'('", "'alive'", "'true'", "'false'", "identifier"});
        if (t.text == "alive" && peek2().kind == Tok::LParen) {
            pos_ += 2;
            std::string a = agent_id();
            expect(Tok::RParen);
            return alive(std::move(a));
        }
        if (peek2().kind == Tok::At) {
            std::string name = t.text;
            pos_ += 2;
            return atom(std::move(name), agent_id());
        }
        if (t.text == "true") return constant(true);
        if (t.text == "false") return constant(false);
        ++pos_;
        fail({"'@'"});
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::optional<AgentId> constant_agent_;
    std::optional<std::size_t> first_constant_;
};

} // namespace detail

inline Formula parse(std::string_view text, const ParseOptions& opts = {}) {
    auto toks = detail::lex(text);
    detail::Parser first(toks, opts.constant_agent);
    Formula f = first.parse_all();
    if (opts.constant_agent || !first.first_constant_offset()) return f;

    std::set<AgentId> mentioned = agents(f);
    mentioned.erase("");
    if (mentioned.empty())
        throw SyntaxError(*first.first_constant_offset(), {},
                          "constant needs an agent context and the formula mentions no agent");
    detail::Parser second(std::move(toks), *mentioned.begin());
    return second.parse_all();
}

} // namespace glocal
