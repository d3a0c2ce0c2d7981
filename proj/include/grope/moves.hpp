#pragma once

// Contraction (symmetric surgery) of a genus-1 base piece along two caps that
// carry the same group element, and pushoff of the sheets that met the
// piece. Only labels are tracked: a double point between the two contracted
// caps is read once along each cap, giving g * g^-1, and every pushed-off
// point is doubled into a canceling pair.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grope/capped.hpp"
#include "grope/errors.hpp"
#include "grope/grope.hpp"
#include "grope/trace.hpp"

namespace grope {

struct ContractResult {
    CappedGrope grope;
    SphereRecord sphere;
};

/// Caps on the tips of base piece `piece`, in tip order.
inline std::vector<std::string> piece_caps(const CappedGrope& cg, std::size_t piece)
{
    if (piece >= cg.body.root.genus()) throw ValidationError("no base piece " + std::to_string(piece));
    Stage single;
    single.pairs.push_back(cg.body.root.pairs[piece]);
    return caps_in_order(cg, single);
}

inline bool is_dyadic_piece(const CappedGrope& cg, std::size_t piece)
{
    const Pair& p = cg.body.root.pairs.at(piece);
    for (Side s : {Side::alpha, Side::beta})
        if (!is_tip(p.at(s)) && !is_dyadic(as_stage(p.at(s)))) return false;
    return true;
}

/// ℓ g^-1 (ℓ g^-1)^-1: the label of each point of a canceling pair created
/// when a sheet meeting the piece at a point labelled ℓ is pushed off.
inline GroupWord canceling_label(const GroupWord& l, const GroupWord& g)
{
    const GroupWord lg = multiply(l, invert(g));
    return multiply(lg, invert(lg));
}

/// Contracts base piece `piece` along caps `cap_a` and `cap_b`. Double points
/// between sheets of the piece become identity-labelled self-intersections
/// of the new sphere; points where an outside sheet met the piece now sit on
/// the sphere and are queued for pushoff.
inline ContractResult contract(const CappedGrope& cg, std::size_t piece, const std::string& cap_a,
                               const std::string& cap_b, Trace* trace = nullptr)
{
    if (piece >= cg.body.root.genus()) throw ValidationError("no base piece " + std::to_string(piece));
    if (!is_dyadic_piece(cg, piece)) throw PreconditionError("not a dyadic piece: base pair " + std::to_string(piece));
    const auto caps = piece_caps(cg, piece);
    const std::set<std::string> piece_cap_set(caps.begin(), caps.end());
    for (const auto& c : {cap_a, cap_b})
        if (!piece_cap_set.count(c))
            throw ValidationError("cap '" + c + "' is not on base piece " + std::to_string(piece));
    if (cap_a == cap_b) throw PreconditionError("contraction needs two distinct caps");

    const LabelClasses la = label_classes(cg, cap_a);
    const LabelClasses lb = label_classes(cg, cap_b);
    if (la.size() > 1 || lb.size() > 1)
        throw PreconditionError("split first: a contracted cap carries more than one group element");
    if (la != lb) throw PreconditionError("pigeonhole precondition failed: caps carry different group elements");
    const GroupWord g = la.empty() ? GroupWord(cg.alphabet) : *la.begin();

    detail::FreshIds ids(cg);
    SphereRecord sphere;
    sphere.id = ids.sphere();
    sphere.cap_a = cap_a;
    sphere.cap_b = cap_b;
    sphere.label = g;

    auto in_piece = [&](const SheetRef& s) {
        if (auto c = std::get_if<CapRef>(&s)) return piece_cap_set.count(c->id) > 0;
        if (auto b = std::get_if<BodyRef>(&s)) return b->path.empty() ? piece == 0 : b->path.front().pair == piece;
        return false;
    };
    auto shifted = [&](SheetRef s) {
        if (auto b = std::get_if<BodyRef>(&s); b && !b->path.empty() && b->path.front().pair > piece)
            --b->path.front().pair;
        return s;
    };

    std::vector<std::string> notes;
    CappedGrope out;
    out.body = cg.body;
    out.body.root.pairs.erase(out.body.root.pairs.begin() + static_cast<std::ptrdiff_t>(piece));
    for (const auto& [tip, cap] : cg.caps)
        if (!piece_cap_set.count(cap)) out.caps.emplace(tip, cap);
    out.spheres = cg.spheres;
    out.alphabet = cg.alphabet;
    out.strict = cg.strict;
    for (const Intersection& x : cg.intersections) {
        const bool ia = in_piece(x.end_a);
        const bool ib = in_piece(x.end_b);
        if (ia && ib) {
            GroupWord l = multiply(x.label, invert(x.label));
            notes.push_back(x.id + ": " + to_string(x.label) + " * (" + to_string(x.label) + ")^-1 = " + to_string(l));
            out.intersections.push_back(Intersection{x.id, SphereRef{sphere.id}, SphereRef{sphere.id}, std::move(l)});
        } else if (ia || ib) {
            Intersection y{x.id, ia ? SheetRef{SphereRef{sphere.id}} : shifted(x.end_a),
                           ib ? SheetRef{SphereRef{sphere.id}} : shifted(x.end_b), x.label};
            sphere.queue.push_back(x.id);
            out.intersections.push_back(std::move(y));
        } else {
            out.intersections.push_back(Intersection{x.id, shifted(x.end_a), shifted(x.end_b), x.label});
        }
    }
    out.spheres.push_back(sphere);

    if (trace) {
        TraceEntry e;
        e.op = "contract";
        e.piece = piece;
        e.cap = cap_a;
        e.cap_b = cap_b;
        e.sphere = sphere.id;
        e.genus_before = cg.body.root.genus();
        e.genus_after = out.body.root.genus();
        e.notes = std::move(notes);
        trace->push_back(std::move(e));
    }
    return {std::move(out), std::move(sphere)};
}

/// Pushes every queued sheet off sphere `sphere`: each queued point with
/// label ℓ becomes two points labelled canceling_label(ℓ, g).
inline CappedGrope pushoff(const CappedGrope& cg, const std::string& sphere, Trace* trace = nullptr)
{
    auto it = std::find_if(cg.spheres.begin(), cg.spheres.end(), [&](const SphereRecord& s) { return s.id == sphere; });
    if (it == cg.spheres.end()) throw ValidationError("unknown sphere '" + sphere + "'");
    const SphereRecord& rec = *it;
    const std::set<std::string> queued(rec.queue.begin(), rec.queue.end());

    detail::FreshIds ids(cg);
    std::vector<std::string> notes;
    CappedGrope out = cg;
    out.intersections.clear();
    for (const Intersection& x : cg.intersections) {
        if (!queued.count(x.id)) {
            out.intersections.push_back(x);
            continue;
        }
        // read the label from the outside sheet towards the sphere
        const GroupWord l = is_sphere(x.end_b, sphere) ? x.label : invert(x.label);
        GroupWord created = canceling_label(l, rec.label);
        notes.push_back(x.id + ": " + to_string(l) + " g^-1 (" + to_string(l) + " g^-1)^-1 = " + to_string(created) +
                        " (g = " + to_string(rec.label) + ")");
        out.intersections.push_back(Intersection{x.id, x.end_a, x.end_b, created});
        out.intersections.push_back(Intersection{ids.intersection(), x.end_a, x.end_b, created});
    }
    for (auto& s : out.spheres)
        if (s.id == sphere) s.queue.clear();

    if (trace) {
        TraceEntry e;
        e.op = "pushoff";
        e.sphere = sphere;
        e.genus_before = cg.body.root.genus();
        e.genus_after = out.body.root.genus();
        e.notes = std::move(notes);
        trace->push_back(std::move(e));
    }
    return out;
}

} // namespace grope
