#pragma once

// Text syntax for words and commutator expressions:
//
//   expr    := factor ( ['*'] factor )*      juxtaposition or '*' multiplies
//   factor  := atom [ '^-1' ]
//   atom    := 'x' N | '[' expr ',' expr ']' | '(' expr ')' | '1'
//
// Generators are 1-based in text (x1 is generator index 0). Whitespace is
// free between tokens. '1' denotes the identity and is only meaningful for
// words.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grope/errors.hpp"
#include "grope/expr.hpp"
#include "grope/word.hpp"

namespace grope {

namespace detail {

struct SyntaxNode {
    enum class Kind { letter, comm, prod, inverse, one };

    Kind kind = Kind::one;
    std::size_t position = 0;
    Letter letter;
    std::vector<SyntaxNode> children;
};

class SyntaxParser {
public:
    explicit SyntaxParser(std::string_view text) : text_(text) {}

    SyntaxNode parse()
    {
        skip_space();
        if (at_end()) throw ParseError(pos_, "empty input");
        SyntaxNode n = expr();
        skip_space();
        if (!at_end()) {
            if (peek() == ']') throw ParseError(pos_, "unexpected ']' without matching '['");
            if (peek() == ')') throw ParseError(pos_, "unexpected ')' without matching '('");
            throw ParseError(pos_, std::string("unexpected character '") + peek() + "'");
        }
        return n;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_space()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    bool starts_factor() const
    {
        if (at_end()) return false;
        char c = peek();
        return c == 'x' || c == '[' || c == '(' || c == '1';
    }

    SyntaxNode expr()
    {
        SyntaxNode p;
        p.kind = SyntaxNode::Kind::prod;
        p.position = pos_;
        p.children.push_back(factor());
        for (;;) {
            skip_space();
            if (!at_end() && peek() == '*') {
                ++pos_;
                skip_space();
                if (!starts_factor()) throw ParseError(pos_, "expected a factor after '*'");
            }
            if (!starts_factor()) break;
            p.children.push_back(factor());
        }
        if (p.children.size() == 1) return std::move(p.children.front());
        return p;
    }

    SyntaxNode factor()
    {
        SyntaxNode a = atom();
        skip_space();
        if (!at_end() && peek() == '^') {
            const std::size_t at = pos_;
            if (text_.substr(pos_, 3) != "^-1") throw ParseError(at, "only the exponent ^-1 is supported");
            pos_ += 3;
            SyntaxNode inv;
            inv.kind = SyntaxNode::Kind::inverse;
            inv.position = at;
            inv.children.push_back(std::move(a));
            return inv;
        }
        return a;
    }

    SyntaxNode atom()
    {
        skip_space();
        if (at_end()) throw ParseError(pos_, "unexpected end of input");
        const std::size_t start = pos_;
        const char c = peek();
        if (c == 'x') {
            ++pos_;
            const std::size_t digits = pos_;
            std::uint64_t n = 0;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                n = n * 10 + static_cast<std::uint64_t>(peek() - '0');
                if (n > 1'000'000) throw ParseError(digits, "generator index too large");
                ++pos_;
            }
            if (pos_ == digits) throw ParseError(digits, "expected generator number after 'x'");
            if (n == 0) throw ParseError(digits, "generator numbers start at x1");
            SyntaxNode l;
            l.kind = SyntaxNode::Kind::letter;
            l.position = start;
            l.letter = {static_cast<std::uint32_t>(n - 1), 1};
            return l;
        }
        if (c == '1') {
            ++pos_;
            SyntaxNode one;
            one.position = start;
            return one;
        }
        if (c == '[') {
            ++pos_;
            SyntaxNode n;
            n.kind = SyntaxNode::Kind::comm;
            n.position = start;
            n.children.push_back(bracket_operand(start, '['));
            skip_space();
            if (at_end()) throw ParseError(start, "unclosed '[' (expected ',')");
            if (peek() != ',') throw ParseError(pos_, "expected ',' inside commutator opened at position " +
                                                          std::to_string(start));
            ++pos_;
            n.children.push_back(bracket_operand(start, '['));
            skip_space();
            if (at_end() || peek() != ']') {
                if (at_end()) throw ParseError(start, "unclosed '['");
                throw ParseError(pos_, "expected ']' closing '[' at position " + std::to_string(start));
            }
            ++pos_;
            return n;
        }
        if (c == '(') {
            ++pos_;
            SyntaxNode inner = bracket_operand(start, '(');
            skip_space();
            if (at_end()) throw ParseError(start, "unclosed '('");
            if (peek() != ')') throw ParseError(pos_, "expected ')' closing '(' at position " + std::to_string(start));
            ++pos_;
            // a parenthesised product stays a single (nested) factor
            return inner;
        }
        if (c == ']') throw ParseError(pos_, "unexpected ']' without matching '['");
        if (c == ')') throw ParseError(pos_, "unexpected ')' without matching '('");
        if (c == ',') throw ParseError(pos_, "unexpected ','");
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    SyntaxNode bracket_operand(std::size_t open, char bracket)
    {
        skip_space();
        if (at_end()) throw ParseError(open, std::string("unclosed '") + bracket + "'");
        return expr();
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline void collect_generators(const SyntaxNode& n, std::size_t& rank)
{
    if (n.kind == SyntaxNode::Kind::letter && n.letter.generator + 1 > rank) rank = n.letter.generator + 1;
    for (const auto& c : n.children) collect_generators(c, rank);
}

inline GroupWord to_word(const SyntaxNode& n, std::size_t rank)
{
    switch (n.kind) {
    case SyntaxNode::Kind::letter:
        if (n.letter.generator >= rank)
            throw ParseError(n.position, "generator x" + std::to_string(n.letter.generator + 1) +
                                             " outside alphabet of rank " + std::to_string(rank));
        return GroupWord::generator(rank, n.letter.generator, n.letter.sign);
    case SyntaxNode::Kind::one:
        return GroupWord(rank);
    case SyntaxNode::Kind::inverse:
        return invert(to_word(n.children.front(), rank));
    case SyntaxNode::Kind::comm:
        return commutator(to_word(n.children[0], rank), to_word(n.children[1], rank));
    case SyntaxNode::Kind::prod: {
        GroupWord w(rank);
        for (const auto& c : n.children) w = multiply(w, to_word(c, rank));
        return w;
    }
    }
    return GroupWord(rank);
}

inline CommutatorExpr to_expression(const SyntaxNode& n)
{
    switch (n.kind) {
    case SyntaxNode::Kind::letter:
        return CommutatorExpr::leaf(n.letter.generator, n.letter.sign);
    case SyntaxNode::Kind::one:
        throw ParseError(n.position, "identity '1' is not a commutator expression");
    case SyntaxNode::Kind::inverse: {
        const SyntaxNode& base = n.children.front();
        if (base.kind != SyntaxNode::Kind::letter)
            throw ParseError(n.position, "^-1 is only allowed on generators in commutator expressions");
        return CommutatorExpr::leaf(base.letter.generator, -1);
    }
    case SyntaxNode::Kind::comm:
        return CommutatorExpr::comm(to_expression(n.children[0]), to_expression(n.children[1]));
    case SyntaxNode::Kind::prod: {
        std::vector<CommutatorExpr> factors;
        for (const auto& c : n.children) factors.push_back(to_expression(c));
        return CommutatorExpr::prod(std::move(factors));
    }
    }
    return {};
}

} // namespace detail

/// Parses a word and evaluates it in the free group of the given rank.
/// Brackets are expanded as commutators.
inline GroupWord parse_word(std::string_view text, std::size_t rank)
{
    return detail::to_word(detail::SyntaxParser(text).parse(), rank);
}

/// Parses a word over the smallest alphabet containing its generators.
inline GroupWord parse_word(std::string_view text)
{
    auto tree = detail::SyntaxParser(text).parse();
    std::size_t rank = 0;
    detail::collect_generators(tree, rank);
    return detail::to_word(tree, rank);
}

/// Largest generator number mentioned in `text` (0 for "1").
inline std::size_t mentioned_rank(std::string_view text)
{
    std::size_t rank = 0;
    detail::collect_generators(detail::SyntaxParser(text).parse(), rank);
    return rank;
}

inline CommutatorExpr parse_expression(std::string_view text)
{
    return detail::to_expression(detail::SyntaxParser(text).parse());
}

} // namespace grope
