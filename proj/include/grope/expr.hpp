#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "grope/errors.hpp"
#include "grope/word.hpp"

namespace grope {

/// Iterated commutator expression. A leaf is a generator (optionally
/// inverted), `comm` is [left, right], `prod` is an ordered nonempty product.
struct CommutatorExpr {
    enum class Kind { leaf, comm, prod };

    Kind kind = Kind::leaf;
    Letter letter;                          // leaf only
    std::vector<CommutatorExpr> children;   // comm: exactly 2; prod: >= 1

    static CommutatorExpr leaf(std::uint32_t generator, int sign = 1)
    {
        CommutatorExpr e;
        e.letter = {generator, sign};
        return e;
    }
    static CommutatorExpr comm(CommutatorExpr left, CommutatorExpr right)
    {
        CommutatorExpr e;
        e.kind = Kind::comm;
        e.children.push_back(std::move(left));
        e.children.push_back(std::move(right));
        return e;
    }
    static CommutatorExpr prod(std::vector<CommutatorExpr> factors)
    {
        if (factors.empty()) throw ValidationError("product needs at least one factor");
        CommutatorExpr e;
        e.kind = Kind::prod;
        e.children = std::move(factors);
        return e;
    }

    const CommutatorExpr& left() const { return children.at(0); }
    const CommutatorExpr& right() const { return children.at(1); }

    friend bool operator==(const CommutatorExpr&, const CommutatorExpr&) = default;
};

inline std::size_t weight(const CommutatorExpr& e)
{
    switch (e.kind) {
    case CommutatorExpr::Kind::leaf:
        return 1;
    case CommutatorExpr::Kind::comm:
        return weight(e.left()) + weight(e.right());
    case CommutatorExpr::Kind::prod: {
        std::size_t w = weight(e.children.front());
        for (const auto& f : e.children) w = std::min(w, weight(f));
        return w;
    }
    }
    return 1;
}

/// One more than the largest generator index mentioned.
inline std::size_t min_rank(const CommutatorExpr& e)
{
    if (e.kind == CommutatorExpr::Kind::leaf) return e.letter.generator + 1;
    std::size_t r = 0;
    for (const auto& c : e.children) r = std::max(r, min_rank(c));
    return r;
}

inline GroupWord eval(const CommutatorExpr& e, std::size_t rank)
{
    switch (e.kind) {
    case CommutatorExpr::Kind::leaf:
        return GroupWord::generator(rank, e.letter.generator, e.letter.sign);
    case CommutatorExpr::Kind::comm:
        return commutator(eval(e.left(), rank), eval(e.right(), rank));
    case CommutatorExpr::Kind::prod: {
        GroupWord w(rank);
        for (const auto& f : e.children) w = multiply(w, eval(f, rank));
        return w;
    }
    }
    return GroupWord(rank);
}

/// Evaluates over the smallest alphabet containing every leaf.
inline GroupWord eval(const CommutatorExpr& e) { return eval(e, min_rank(e)); }

/// Left-normed commutator [[...[x_g0, x_g1], ...], x_gk].
inline CommutatorExpr left_normed(const std::vector<std::uint32_t>& generators)
{
    if (generators.size() < 2) throw ValidationError("left-normed commutator needs at least two entries");
    CommutatorExpr e = CommutatorExpr::leaf(generators[0]);
    for (std::size_t i = 1; i < generators.size(); ++i)
        e = CommutatorExpr::comm(std::move(e), CommutatorExpr::leaf(generators[i]));
    return e;
}

inline std::string to_string(const CommutatorExpr& e)
{
    switch (e.kind) {
    case CommutatorExpr::Kind::leaf:
        return to_string(e.letter);
    case CommutatorExpr::Kind::comm:
        return "[" + to_string(e.left()) + "," + to_string(e.right()) + "]";
    case CommutatorExpr::Kind::prod: {
        std::string s;
        for (const auto& f : e.children) {
            if (!s.empty()) s += ' ';
            // nested products are parenthesised so the text re-parses to the same tree
            s += f.kind == CommutatorExpr::Kind::prod ? "(" + to_string(f) + ")" : to_string(f);
        }
        return s;
    }
    }
    return {};
}

} // namespace grope
