#pragma once

// Grope splitting. A cap whose double points carry several group elements is
// cut by an arc into two caps, which adds a pair to the stage it sits on; the
// dual slot is duplicated by a parallel copy that inherits every intersection
// of the original. Stages above the first are then cut into genus-1 pieces,
// from the top stage down, again duplicating the dual subtree for each piece.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "grope/capped.hpp"
#include "grope/errors.hpp"
#include "grope/grope.hpp"
#include "grope/trace.hpp"

namespace grope {

struct SplitOptions {
    /// Let split_cap duplicate a whole dual subtree when the paired slot is a
    /// stage rather than a capped tip. full_split needs this for bodies that
    /// are not dyadic at the top.
    bool allow_subtree_dual = false;
    std::size_t max_genus = 1'000'000;
    std::size_t max_intersections = 10'000'000;
};

namespace detail {

inline bool has_prefix(const StagePath& path, const StagePath& prefix)
{
    return path.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

inline Slot copy_slot(const Slot& slot, FreshIds& ids, std::map<std::string, std::string>& tip_map)
{
    if (is_tip(slot)) {
        std::string fresh = ids.tip();
        tip_map.emplace(as_tip(slot).id, fresh);
        return Tip{std::move(fresh)};
    }
    Stage copy;
    for (const Pair& p : as_stage(slot).pairs) {
        Slot a = copy_slot(p.alpha, ids, tip_map);
        Slot b = copy_slot(p.beta, ids, tip_map);
        copy.pairs.push_back(Pair{std::move(a), std::move(b)});
    }
    return Box<Stage>(std::move(copy));
}

// Gives copied tips fresh caps; returns old cap id -> new cap id.
inline std::map<std::string, std::string> copy_caps(CappedGrope& cg, const std::map<std::string, std::string>& tip_map,
                                                    FreshIds& ids)
{
    std::map<std::string, std::string> cap_map;
    // walk in tip_map order (sorted by old tip id) so fresh cap ids are deterministic
    for (const auto& [old_tip, new_tip] : tip_map) {
        auto it = cg.caps.find(old_tip);
        if (it == cg.caps.end()) continue;
        std::string fresh = ids.cap();
        cap_map.emplace(it->second, fresh);
        cg.caps.emplace(new_tip, std::move(fresh));
    }
    return cap_map;
}

// Rebuilds the intersection list, replacing each endpoint by its images.
// An intersection whose ends have images A and B becomes |A|*|B|
// intersections with the same label; the first keeps the original id.
template <typename Image>
std::vector<Intersection> remap_intersections(const std::vector<Intersection>& xs, Image&& image, FreshIds& ids)
{
    std::vector<Intersection> out;
    out.reserve(xs.size());
    for (const Intersection& x : xs) {
        const std::vector<SheetRef> as = image(x, x.end_a);
        const std::vector<SheetRef> bs = image(x, x.end_b);
        bool first = true;
        for (const SheetRef& a : as)
            for (const SheetRef& b : bs) {
                out.push_back(Intersection{first ? x.id : ids.intersection(), a, b, x.label});
                first = false;
            }
    }
    return out;
}

inline void check_growth(const CappedGrope& cg, const SplitOptions& opts)
{
    if (cg.body.root.genus() > opts.max_genus)
        throw GrowthLimitExceeded("first-stage genus " + std::to_string(cg.body.root.genus()) +
                                  " exceeds the limit " + std::to_string(opts.max_genus));
    if (cg.intersections.size() > opts.max_intersections)
        throw GrowthLimitExceeded("intersection count " + std::to_string(cg.intersections.size()) +
                                  " exceeds the limit " + std::to_string(opts.max_intersections));
}

} // namespace detail

/// Splits cap `cap` along an arc separating the class of its least label
/// from the rest. Identity-labelled points stay with the least class. No-op
/// if the cap carries fewer than two group elements.
inline CappedGrope split_cap(const CappedGrope& cg, const std::string& cap, const SplitOptions& opts = {},
                             Trace* trace = nullptr)
{
    const auto by_cap = tips_by_cap(cg);
    auto tip_it = by_cap.find(cap);
    if (tip_it == by_cap.end()) throw ValidationError("unknown cap '" + cap + "'");
    const auto loc = locate_tip(cg.body.root, tip_it->second);
    if (!loc) throw ValidationError("cap '" + cap + "' sits on a tip that is not in the body");

    const LabelClasses classes = label_classes(cg, cap);
    if (classes.size() < 2) return cg;
    const GroupWord least = *classes.begin();

    CappedGrope out = cg;
    Stage& stage = stage_at(out.body.root, loc->stage);
    const std::size_t genus_before = stage.genus();
    const std::size_t j = loc->pair;
    const Side side = loc->side;
    const Slot& dual = stage.pairs[j].at(other(side));
    if (!is_tip(dual) && !opts.allow_subtree_dual)
        throw PreconditionError("dual not a cap: the slot paired with cap '" + cap +
                                "' carries a stage (split the dual subtree first)");

    detail::FreshIds ids(cg);
    const std::string new_tip = ids.tip();
    const std::string new_cap = ids.cap();
    std::map<std::string, std::string> tip_map;
    Slot dual_copy = detail::copy_slot(dual, ids, tip_map);

    Pair fresh;
    fresh.at(side) = Tip{new_tip};
    fresh.at(other(side)) = std::move(dual_copy);
    stage.pairs.insert(stage.pairs.begin() + static_cast<std::ptrdiff_t>(j + 1), std::move(fresh));
    const std::size_t genus_after = stage.genus();
    out.caps.emplace(new_tip, new_cap);
    const auto cap_map = detail::copy_caps(out, tip_map, ids);

    const StagePath& base = loc->stage;
    auto image = [&](const Intersection& x, const SheetRef& end) -> std::vector<SheetRef> {
        if (auto c = std::get_if<CapRef>(&end)) {
            if (c->id == cap) {
                const bool keep = x.label.is_identity() || unoriented(x.label) == least;
                return {CapRef{keep ? cap : new_cap}};
            }
            if (auto m = cap_map.find(c->id); m != cap_map.end()) return {end, CapRef{m->second}};
            return {end};
        }
        if (auto b = std::get_if<BodyRef>(&end)) {
            if (b->path.size() > base.size() && detail::has_prefix(b->path, base)) {
                const PathStep step = b->path[base.size()];
                BodyRef moved = *b;
                if (step.pair > j) {
                    ++moved.path[base.size()].pair;
                    return {moved};
                }
                if (step.pair == j && step.side == other(side)) {
                    ++moved.path[base.size()].pair;
                    return {end, moved};
                }
            }
        }
        return {end};
    };
    out.intersections = detail::remap_intersections(cg.intersections, image, ids);

    if (trace) {
        TraceEntry e;
        e.op = "split_cap";
        e.cap = cap;
        e.path = base;
        e.genus_before = genus_before;
        e.genus_after = genus_after;
        e.notes.push_back("separated " + to_string(least) + " into " + cap + ", rest into " + new_cap);
        trace->push_back(std::move(e));
    }
    return out;
}

/// Cuts the stage at `path` (above the first stage) into genus-1 pieces. The
/// parent pair is replaced by one pair per piece, each with its own parallel
/// copy of the dual slot. Intersection points on the cut stage itself go to
/// the first piece.
inline CappedGrope split_stage(const CappedGrope& cg, const StagePath& path, Trace* trace = nullptr)
{
    if (path.empty()) throw PreconditionError("first stage is not split");
    const Stage& target = stage_at(cg.body.root, path);
    const std::size_t g = target.genus();
    if (g <= 1) return cg;

    const StagePath parent(path.begin(), path.end() - 1);
    const std::size_t j = path.back().pair;
    const Side side = path.back().side;

    CappedGrope out = cg;
    Stage& stage = stage_at(out.body.root, parent);
    const std::size_t genus_before = stage.genus();
    Pair old = std::move(stage.pairs[j]);
    const Stage pieces = std::move(as_stage(old.at(side)));
    const Slot& dual = old.at(other(side));

    detail::FreshIds ids(cg);
    std::vector<Pair> replacement;
    std::vector<std::map<std::string, std::string>> cap_maps;
    for (std::size_t i = 0; i < g; ++i) {
        Pair p;
        p.at(side) = Box<Stage>(Stage{{pieces.pairs[i]}});
        if (i == 0) {
            p.at(other(side)) = dual;
        } else {
            std::map<std::string, std::string> tip_map;
            p.at(other(side)) = detail::copy_slot(dual, ids, tip_map);
            cap_maps.push_back(detail::copy_caps(out, tip_map, ids));
        }
        replacement.push_back(std::move(p));
    }
    stage.pairs.erase(stage.pairs.begin() + static_cast<std::ptrdiff_t>(j));
    stage.pairs.insert(stage.pairs.begin() + static_cast<std::ptrdiff_t>(j), std::make_move_iterator(replacement.begin()),
                       std::make_move_iterator(replacement.end()));
    const std::size_t genus_after = stage.genus();

    const std::size_t depth = parent.size();
    auto image = [&](const Intersection&, const SheetRef& end) -> std::vector<SheetRef> {
        if (auto c = std::get_if<CapRef>(&end)) {
            std::vector<SheetRef> imgs{end};
            for (const auto& m : cap_maps)
                if (auto it = m.find(c->id); it != m.end()) imgs.push_back(CapRef{it->second});
            return imgs;
        }
        if (auto b = std::get_if<BodyRef>(&end)) {
            if (b->path.size() > depth && detail::has_prefix(b->path, parent)) {
                const PathStep step = b->path[depth];
                if (step.pair > j) {
                    BodyRef moved = *b;
                    moved.path[depth].pair += g - 1;
                    return {moved};
                }
                if (step.pair == j && step.side == side) {
                    if (b->path.size() == depth + 1) return {end};
                    // inside the cut stage: piece i is the genus-1 stage at (j + i, side)
                    const PathStep inner = b->path[depth + 1];
                    StagePath p(parent);
                    p.push_back({j + inner.pair, side});
                    p.push_back({0, inner.side});
                    p.insert(p.end(), b->path.begin() + static_cast<std::ptrdiff_t>(depth + 2), b->path.end());
                    return {BodyRef{std::move(p)}};
                }
                if (step.pair == j) {
                    std::vector<SheetRef> imgs{end};
                    for (std::size_t i = 1; i < g; ++i) {
                        BodyRef moved = *b;
                        moved.path[depth].pair = j + i;
                        imgs.push_back(moved);
                    }
                    return imgs;
                }
            }
        }
        return {end};
    };
    out.intersections = detail::remap_intersections(cg.intersections, image, ids);

    if (trace) {
        TraceEntry e;
        e.op = "split_stage";
        e.path = path;
        e.genus_before = genus_before;
        e.genus_after = genus_after;
        trace->push_back(std::move(e));
    }
    return out;
}

/// Splits until every cap carries at most one group element and every stage
/// above the first has genus 1. Caps are split first (first offending cap in
/// tip order each round), then stages, deepest first.
inline CappedGrope full_split(const CappedGrope& cg, SplitOptions opts = {}, Trace* trace = nullptr)
{
    opts.allow_subtree_dual = true;
    const std::size_t cls = class_of(cg.body);
    auto checked = [&](CappedGrope next) {
        detail::check_growth(next, opts);
        if (class_of(next.body) != cls) throw Error("internal error: splitting changed the class");
        return next;
    };

    CappedGrope cur = checked(cg);
    for (;;) {
        const auto classes = cap_classes(cur);
        std::string target;
        for (const auto& cap : caps_in_order(cur))
            if (classes.at(cap).size() >= 2) {
                target = cap;
                break;
            }
        if (target.empty()) break;
        cur = checked(split_cap(cur, target, opts, trace));
    }
    for (;;) {
        std::optional<StagePath> target;
        for (const StagePath& p : stage_paths(cur.body.root))
            if (!p.empty() && stage_at(cur.body.root, p).genus() >= 2 && (!target || p.size() > target->size()))
                target = p;
        if (!target) break;
        cur = checked(split_stage(cur, *target, trace));
    }
    return cur;
}

/// Growth limit from the GROPE_MAX_GENUS environment variable, if set.
inline std::optional<std::size_t> max_genus_from_env()
{
    const char* v = std::getenv("GROPE_MAX_GENUS");
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (*end != '\0') throw ValidationError(std::string("GROPE_MAX_GENUS is not a number: ") + v);
    return static_cast<std::size_t>(n);
}

} // namespace grope
