#pragma once

#include <string>
#include <vector>

#include "grope.hpp"

namespace grope::testing {

/// Random unreduced letter sequence.
inline std::vector<Letter> random_letters(Rng& rng, std::size_t rank, std::size_t max_len)
{
    std::vector<Letter> raw;
    const std::size_t len = rng.between(0, max_len);
    for (std::size_t i = 0; i < len; ++i)
        raw.push_back({static_cast<std::uint32_t>(rng.below(rank)), rng.chance(0.5) ? 1 : -1});
    return raw;
}

inline GroupWord random_word(Rng& rng, std::size_t rank, std::size_t max_len)
{
    return reduce(random_letters(rng, rank, max_len), rank);
}

/// Random expression of weight <= max_weight over `rank` generators.
inline CommutatorExpr random_expression(Rng& rng, std::size_t rank, std::size_t max_weight, bool allow_prod = true)
{
    const auto leaf = [&] { return CommutatorExpr::leaf(static_cast<std::uint32_t>(rng.below(rank)), rng.chance(0.8) ? 1 : -1); };
    if (max_weight < 2 || rng.chance(0.15)) return leaf();
    if (allow_prod && rng.chance(0.2)) {
        std::vector<CommutatorExpr> fs;
        const std::size_t n = rng.between(2, 3);
        for (std::size_t i = 0; i < n; ++i) fs.push_back(random_expression(rng, rank, max_weight, allow_prod));
        return CommutatorExpr::prod(std::move(fs));
    }
    const std::size_t a = rng.between(1, max_weight - 1);
    return CommutatorExpr::comm(random_expression(rng, rank, a, allow_prod),
                                random_expression(rng, rank, max_weight - a, allow_prod));
}

inline Slot tip(std::string id) { return Tip{std::move(id)}; }
inline Slot child(Stage s) { return Box<Stage>(std::move(s)); }
inline Stage st(std::vector<Pair> pairs) { return Stage{std::move(pairs)}; }
inline Grope gr(Stage root) { return Grope{std::move(root), false}; }

inline SheetRef cap(std::string id) { return CapRef{std::move(id)}; }
inline SheetRef body(StagePath p = {}) { return BodyRef{std::move(p)}; }
inline SheetRef sphere(std::string id) { return SphereRef{std::move(id)}; }

/// Intersection with the label parsed from text.
inline Intersection ix(std::string id, SheetRef a, SheetRef b, const char* label, std::size_t rank)
{
    return Intersection{std::move(id), std::move(a), std::move(b), parse_word(label, rank)};
}

/// Oracle spelling: generator i is letter 'a'+i, its inverse 'A'+i.
inline std::string oracle_spelling(const GroupWord& w)
{
    std::string s;
    for (const Letter& l : w.letters()) s += static_cast<char>((l.sign > 0 ? 'a' : 'A') + l.generator);
    return s;
}

} // namespace grope::testing
