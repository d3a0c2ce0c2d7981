#pragma once

// Deterministic instance generators. All randomness comes from an explicit
// seed through SplitMix64, whose output is fixed by its definition, so the
// same seed gives the same bytes on every platform.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "grope/capped.hpp"
#include "grope/errors.hpp"
#include "grope/grope.hpp"
#include "grope/pipeline.hpp"
#include "grope/word.hpp"

namespace grope {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n).
    std::size_t below(std::size_t n)
    {
        if (n == 0) throw ValidationError("empty range");
        return static_cast<std::size_t>(next() % n);
    }

    /// Uniform in [lo, hi].
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

    /// True with probability p.
    bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::uint64_t state_;
};

/// Renames tips t1, t2, ... in traversal order.
inline void number_tips(Stage& root)
{
    std::size_t n = 0;
    std::function<void(Stage&)> rec = [&](Stage& s) {
        for (Pair& p : s.pairs)
            for (Side side : {Side::alpha, Side::beta}) {
                Slot& slot = p.at(side);
                if (is_tip(slot)) slot = Tip{"t" + std::to_string(++n)};
                else rec(as_stage(slot));
            }
    };
    rec(root);
}

struct ShapeParams {
    std::size_t root_genus_max = 2;
    double upper_genus2_chance = 0.0;  // chance that a stage above the first has genus 2
    std::size_t upper_genus2_min_class = 4;
};

namespace detail {

inline Slot random_slot(Rng& rng, std::size_t cls, const ShapeParams& p, bool top);

inline Stage random_stage(Rng& rng, std::size_t cls, const ShapeParams& p, bool top)
{
    std::size_t genus = 1;
    if (top) genus = rng.between(1, std::max<std::size_t>(1, p.root_genus_max));
    else if (cls >= p.upper_genus2_min_class && rng.chance(p.upper_genus2_chance)) genus = 2;
    Stage s;
    for (std::size_t i = 0; i < genus; ++i) {
        // the first pair has class exactly cls; later pairs may exceed it by one
        const std::size_t c = (i == 0 || !rng.chance(0.3)) ? cls : cls + 1;
        const std::size_t a = rng.between(1, c - 1);
        Slot alpha = random_slot(rng, a, p, false);
        Slot beta = random_slot(rng, c - a, p, false);
        s.pairs.push_back(Pair{std::move(alpha), std::move(beta)});
    }
    return s;
}

inline Slot random_slot(Rng& rng, std::size_t cls, const ShapeParams& p, bool top)
{
    if (cls == 1) return Tip{"?"};
    return Box<Stage>(random_stage(rng, cls, p, top));
}

inline Stage dyadic_stage(const std::vector<std::size_t>& splits, std::size_t& at, std::size_t cls);

inline Slot dyadic_slot(const std::vector<std::size_t>& splits, std::size_t& at, std::size_t cls)
{
    if (cls == 1) return Tip{"?"};
    return Box<Stage>(dyadic_stage(splits, at, cls));
}

inline Stage dyadic_stage(const std::vector<std::size_t>& splits, std::size_t& at, std::size_t cls)
{
    const std::size_t a = splits.at(at++);
    Slot alpha = dyadic_slot(splits, at, a);
    Slot beta = dyadic_slot(splits, at, cls - a);
    Stage s;
    s.pairs.push_back(Pair{std::move(alpha), std::move(beta)});
    return s;
}

} // namespace detail

/// Random grope of class exactly `cls`.
inline Grope random_grope(Rng& rng, std::size_t cls, const ShapeParams& p = {})
{
    if (cls < 2) throw ValidationError("grope class must be at least 2");
    Grope g;
    g.root = detail::random_stage(rng, cls, p, true);
    number_tips(g.root);
    return g;
}

/// Random dyadic grope of class `cls` (every stage genus 1).
inline Grope random_dyadic(Rng& rng, std::size_t cls)
{
    ShapeParams p;
    p.root_genus_max = 1;
    return random_grope(rng, cls, p);
}

/// Dyadic chain [[..[x1,x2],..],xk]: alpha carries the class-(k-1) stage.
inline Grope left_normed_dyadic(std::size_t cls)
{
    if (cls < 2) throw ValidationError("grope class must be at least 2");
    Stage s;
    s.pairs.push_back(Pair{Tip{"?"}, Tip{"?"}});
    for (std::size_t c = 3; c <= cls; ++c) {
        Stage up;
        up.pairs.push_back(Pair{Box<Stage>(std::move(s)), Tip{"?"}});
        s = std::move(up);
    }
    Grope g;
    g.root = std::move(s);
    number_tips(g.root);
    return g;
}

/// Every dyadic grope of class `cls`, one per binary tree shape.
inline std::vector<Grope> all_dyadic(std::size_t cls)
{
    if (cls < 2) throw ValidationError("grope class must be at least 2");
    // each shape is the preorder list of alpha-classes of its stages
    std::vector<std::vector<std::size_t>> shapes;
    std::function<std::vector<std::vector<std::size_t>>(std::size_t)> enumerate =
        [&](std::size_t c) -> std::vector<std::vector<std::size_t>> {
        if (c == 1) return {{}};
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t a = 1; a < c; ++a)
            for (const auto& left : enumerate(a))
                for (const auto& right : enumerate(c - a)) {
                    std::vector<std::size_t> s{a};
                    s.insert(s.end(), left.begin(), left.end());
                    s.insert(s.end(), right.begin(), right.end());
                    out.push_back(std::move(s));
                }
        return out;
    };
    std::vector<Grope> out;
    for (const auto& splits : enumerate(cls)) {
        std::size_t at = 0;
        Grope g;
        g.root = detail::dyadic_stage(splits, at, cls);
        number_tips(g.root);
        out.push_back(std::move(g));
    }
    return out;
}

/// Dyadic class-k body whose every cap meets the first stage once for each
/// of the generators x1..xn.
inline CappedGrope uniform_dyadic(const Grope& body, std::size_t n)
{
    CappedGrope cg = cap_all_tips(body, n);
    std::size_t id = 0;
    for (const auto& cap : caps_in_order(cg))
        for (std::uint32_t g = 0; g < n; ++g)
            cg.intersections.push_back(
                {"i" + std::to_string(++id), CapRef{cap}, BodyRef{{}}, GroupWord::generator(n, g)});
    return cg;
}

/// `count` distinct nonidentity elements, pairwise distinct up to inversion.
inline std::vector<GroupWord> random_elements(Rng& rng, std::size_t count, std::size_t rank)
{
    std::vector<GroupWord> out;
    LabelClasses seen;
    while (out.size() < count) {
        std::vector<Letter> raw;
        const std::size_t len = rng.between(1, 3);
        for (std::size_t i = 0; i < len; ++i)
            raw.push_back({static_cast<std::uint32_t>(rng.below(rank)), rng.chance(0.5) ? 1 : -1});
        GroupWord w = reduce(raw, rank);
        if (w.is_identity() || !seen.insert(unoriented(w)).second) continue;
        out.push_back(std::move(w));
    }
    return out;
}

struct RandomCappedParams {
    std::size_t min_class = 2;
    std::size_t max_class = 5;
    std::size_t max_labels = 6;
    std::size_t max_points_per_cap = 2;
    double cap_cap_chance = 0.2;  // a point joins two distinct caps
    double body_chance = 0.2;     // a point joins a cap to a body stage
    ShapeParams shape{2, 0.2, 4};
};

/// Random capped grope with intersections drawn from at most max_labels
/// group elements. Points are cap self-intersections, cap-cap or cap-body.
inline CappedGrope random_capped(Rng& rng, const RandomCappedParams& p = {})
{
    const std::size_t cls = rng.between(p.min_class, p.max_class);
    const std::size_t labels = rng.between(1, std::max<std::size_t>(1, p.max_labels));
    const std::size_t rank = 3;
    const auto elements = random_elements(rng, labels, rank);
    CappedGrope cg = cap_all_tips(random_grope(rng, cls, p.shape), rank);
    const auto caps = caps_in_order(cg);
    const auto stages = stage_paths(cg.body.root);
    std::size_t id = 0;
    for (const auto& cap : caps) {
        const std::size_t points = rng.between(0, p.max_points_per_cap);
        for (std::size_t k = 0; k < points; ++k) {
            GroupWord label = elements[rng.below(elements.size())];
            if (rng.chance(0.5)) label = invert(label);
            SheetRef other = CapRef{cap};
            if (rng.chance(p.cap_cap_chance)) other = CapRef{caps[rng.below(caps.size())]};
            else if (rng.chance(p.body_chance)) other = BodyRef{stages[rng.below(stages.size())]};
            cg.intersections.push_back({"i" + std::to_string(++id), CapRef{cap}, std::move(other), std::move(label)});
        }
    }
    return cg;
}

struct KernelParams {
    std::size_t m = 0;            // number of distinct group elements
    std::size_t cls = 2;          // class of every grope
    std::size_t pair_count = 1;   // hyperbolic pairs (two gropes each)
    double density = 0.3;         // chance of extra points per cap
    /// Strict kernels satisfy the surgery hypotheses, so cls >= m + 1 is
    /// required. Non-strict kernels may violate them.
    bool strict = true;
    /// Non-strict only: dyadic gropes of class m in which the caps of every
    /// base piece carry pairwise distinct elements, so the pigeonhole step
    /// must fail.
    bool adversarial = false;
};

namespace detail {

// Labels one grope. Each cap's elements are carried by self-intersections, so
// contracting neighbouring pieces never strips a cap of its element.
// `counts[i]` is the number of elements on cap i (1 or 2 when m > 0).
inline void label_grope(Rng& rng, CappedGrope& cg, const std::vector<GroupWord>& elements,
                        const std::vector<std::size_t>& counts, const std::vector<std::size_t>& home, double density)
{
    const auto caps = caps_in_order(cg);
    const auto stages = stage_paths(cg.body.root);
    std::size_t id = 0;
    auto add = [&](SheetRef a, SheetRef b, GroupWord l) {
        cg.intersections.push_back({"i" + std::to_string(++id), std::move(a), std::move(b), std::move(l)});
    };
    auto oriented = [&](const GroupWord& w) { return rng.chance(0.5) ? w : invert(w); };
    for (std::size_t i = 0; i < caps.size(); ++i) {
        if (!elements.empty()) {
            add(CapRef{caps[i]}, CapRef{caps[i]}, oriented(elements[home[i]]));
            if (counts[i] > 1) {
                std::size_t second = rng.below(elements.size() - 1);
                if (second >= home[i]) ++second;
                add(CapRef{caps[i]}, CapRef{caps[i]}, oriented(elements[second]));
            }
        }
        // pi_1-null extras with another cap or a body stage
        if (rng.chance(density)) {
            if (rng.chance(0.5)) add(CapRef{caps[i]}, CapRef{caps[rng.below(caps.size())]}, GroupWord(cg.alphabet));
            else add(CapRef{caps[i]}, BodyRef{stages[rng.below(stages.size())]}, GroupWord(cg.alphabet));
        }
    }
}

} // namespace detail

/// Random surgery kernel, reproducible from `seed`. Gropes of a hyperbolic
/// pair share a body shape and the number of elements per cap, so they split
/// to the same first-stage genus.
inline SurgeryKernel generate_kernel(std::uint64_t seed, const KernelParams& p)
{
    if (p.cls < 2) throw ValidationError("class must be at least 2");
    if (p.pair_count == 0) throw ValidationError("need at least one hyperbolic pair");
    if (p.strict && p.cls < p.m + 1)
        throw ValidationError("contradictory parameters: a strict kernel with m = " + std::to_string(p.m) +
                              " needs class at least " + std::to_string(p.m + 1));
    if (p.adversarial && p.strict) throw ValidationError("adversarial kernels cannot be strict");
    if (p.adversarial && p.cls > p.m)
        throw ValidationError("adversarial kernels need class at most m so every piece can have distinct caps");

    Rng rng(seed);
    SurgeryKernel k;
    k.alphabet = std::max<std::size_t>(2, p.m);
    const auto elements = random_elements(rng, p.m, k.alphabet);
    bool all_used = false;

    for (std::size_t pair = 0; pair < p.pair_count; ++pair) {
        Grope body = p.adversarial ? random_dyadic(rng, p.cls) : random_grope(rng, p.cls);
        if (p.adversarial) {
            // extra base pieces, each a dyadic class-m grope
            const std::size_t extra = rng.below(2);
            for (std::size_t i = 0; i < extra; ++i) body.root.pairs.push_back(random_dyadic(rng, p.cls).root.pairs.front());
            number_tips(body.root);
        }
        const std::size_t ncaps = count_tips(body);
        std::vector<std::size_t> counts(ncaps, p.m > 0 ? 1 : 0);
        if (p.m > 1 && !p.adversarial)
            for (auto& c : counts)
                if (rng.chance(p.density)) c = 2;

        for (int side = 0; side < 2; ++side) {
            CappedGrope cg = cap_all_tips(body, k.alphabet);
            std::vector<std::size_t> home(ncaps, 0);
            if (p.m > 0) {
                if (p.adversarial) {
                    // caps of each base piece get a permutation of the elements
                    const auto& root = cg.body.root;
                    std::size_t at = 0;
                    for (const auto& pr : root.pairs) {
                        Stage single;
                        single.pairs.push_back(pr);
                        std::vector<std::size_t> perm(p.m);
                        for (std::size_t i = 0; i < p.m; ++i) perm[i] = i;
                        rng.shuffle(perm);
                        const std::size_t n = count_tips(Grope{single, false});
                        for (std::size_t i = 0; i < n; ++i) home[at + i] = perm[i];
                        at += n;
                    }
                } else {
                    std::vector<std::size_t> order(ncaps);
                    for (std::size_t i = 0; i < ncaps; ++i) order[i] = i;
                    rng.shuffle(order);
                    for (std::size_t i = 0; i < ncaps; ++i)
                        home[order[i]] = (!all_used && i < p.m) ? i : rng.below(p.m);
                    all_used = true;
                }
            }
            detail::label_grope(rng, cg, elements, counts, home, p.adversarial ? 0.0 : p.density);
            k.gropes.push_back(std::move(cg));
        }
        k.pairs.emplace_back(2 * pair, 2 * pair + 1);
    }
    return k;
}

} // namespace grope
