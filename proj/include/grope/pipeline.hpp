#pragma once

// Surgery pipeline: given hyperbolically paired capped gropes of class at
// least m+1 whose double points carry at most m group elements, split each
// grope, then in every genus-1 base piece find two caps with the same group
// element, contract along them and push off. Each base piece leaves one
// sphere, and every intersection on the spheres is pi_1-null.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grope/capped.hpp"
#include "grope/errors.hpp"
#include "grope/moves.hpp"
#include "grope/splitting.hpp"
#include "grope/trace.hpp"

namespace grope {

struct SurgeryKernel {
    std::vector<CappedGrope> gropes;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // hyperbolic pairing of grope indices
    std::size_t alphabet = 0;

    friend bool operator==(const SurgeryKernel&, const SurgeryKernel&) = default;
};

inline std::vector<std::string> validate(const SurgeryKernel& k)
{
    std::vector<std::string> v;
    std::vector<int> used(k.gropes.size(), 0);
    for (const auto& [a, b] : k.pairs) {
        for (std::size_t i : {a, b}) {
            if (i >= k.gropes.size()) v.push_back("pair references missing grope " + std::to_string(i));
            else ++used[i];
        }
        if (a == b) v.push_back("grope " + std::to_string(a) + " is paired with itself");
    }
    for (std::size_t i = 0; i < used.size(); ++i)
        if (used[i] != 1) v.push_back("grope " + std::to_string(i) + " appears in " + std::to_string(used[i]) + " pairs");
    for (std::size_t i = 0; i < k.gropes.size(); ++i) {
        if (k.gropes[i].alphabet != k.alphabet) v.push_back("grope " + std::to_string(i) + " uses a different alphabet");
        for (const auto& msg : validate(k.gropes[i])) v.push_back("grope " + std::to_string(i) + ": " + msg);
    }
    return v;
}

struct HypothesisReport {
    std::size_t m = 0;          // distinct group elements over all gropes
    std::size_t min_class = 0;  // smallest grope class
    bool ok = false;            // min_class >= m + 1
    /// The looser reading min_class >= m. It differs from `ok` only when
    /// min_class == m; such kernels can fail the pigeonhole step.
    bool ok_loose_threshold = false;
};

inline HypothesisReport check_hypotheses(const SurgeryKernel& k)
{
    HypothesisReport r;
    LabelClasses all;
    for (const auto& g : k.gropes) {
        const auto d = distinct_labels(g);
        all.insert(d.begin(), d.end());
        const std::size_t c = class_of(g.body);
        if (r.min_class == 0 || c < r.min_class) r.min_class = c;
    }
    r.m = all.size();
    r.ok = !k.gropes.empty() && r.min_class >= r.m + 1;
    r.ok_loose_threshold = !k.gropes.empty() && r.min_class >= r.m;
    return r;
}

/// A cap with the group element it carries (none for a pi_1-null cap).
struct CapElement {
    std::string cap;
    std::optional<GroupWord> element;
};

/// First pair of caps (in the given order) carrying the same element.
/// Two pi_1-null caps are preferred over any labelled pair.
inline std::pair<std::string, std::string> find_duplicate_pair(std::span<const CapElement> caps,
                                                               const std::string& piece = "?")
{
    std::vector<std::size_t> null_caps;
    for (std::size_t i = 0; i < caps.size(); ++i)
        if (!caps[i].element) null_caps.push_back(i);
    if (null_caps.size() >= 2) return {caps[null_caps[0]].cap, caps[null_caps[1]].cap};
    for (std::size_t i = 0; i < caps.size(); ++i) {
        if (!caps[i].element) continue;
        for (std::size_t j = i + 1; j < caps.size(); ++j)
            if (caps[j].element && same_loop(*caps[i].element, *caps[j].element)) return {caps[i].cap, caps[j].cap};
    }
    throw PigeonholeFailure(piece);
}

inline std::pair<std::string, std::string> find_duplicate_pair(const CappedGrope& cg, std::size_t piece,
                                                               const std::string& piece_name)
{
    std::vector<CapElement> caps;
    for (const auto& c : piece_caps(cg, piece)) {
        const LabelClasses cls = label_classes(cg, c);
        if (cls.size() > 1) throw PreconditionError("split first: cap '" + c + "' carries more than one group element");
        caps.push_back({c, cls.empty() ? std::nullopt : std::optional<GroupWord>(*cls.begin())});
    }
    return find_duplicate_pair(caps, piece_name);
}

struct SphereHandle {
    std::size_t grope = 0;
    std::string sphere;
    friend bool operator==(const SphereHandle&, const SphereHandle&) = default;
};

struct SurgeryStats {
    std::size_t m = 0;
    std::size_t input_class = 0;
    std::vector<std::size_t> first_stage_genus_after_split;  // per grope
    std::size_t piece_count = 0;
};

struct SurgeryResult {
    std::vector<CappedGrope> gropes;  // final state: empty bodies, spheres and their intersections
    std::vector<std::pair<SphereHandle, SphereHandle>> sphere_pairs;
    std::vector<SphereHandle> unpaired;
    Trace trace;
    SurgeryStats stats;
};

struct SurgeryOptions {
    bool force = false;  // run even when check_hypotheses fails
    SplitOptions split;
};

inline SurgeryResult run_surgery(const SurgeryKernel& k, const SurgeryOptions& opts = {})
{
    if (auto v = validate(k); !v.empty()) throw ValidationError("invalid kernel: " + v.front());
    const HypothesisReport h = check_hypotheses(k);
    if (!h.ok && !opts.force)
        throw PreconditionError("hypotheses not met: class " + std::to_string(h.min_class) + " < m+1 = " +
                                std::to_string(h.m + 1));

    SurgeryResult r;
    r.stats.m = h.m;
    r.stats.input_class = h.min_class;
    std::vector<std::vector<std::string>> spheres(k.gropes.size());
    for (std::size_t i = 0; i < k.gropes.size(); ++i) {
        Trace local;
        CappedGrope cur = full_split(k.gropes[i], opts.split, &local);
        r.stats.first_stage_genus_after_split.push_back(cur.body.root.genus());
        for (std::size_t piece = 0; cur.body.root.genus() > 0; ++piece) {
            const auto [a, b] =
                find_duplicate_pair(cur, 0, "grope " + std::to_string(i) + " piece " + std::to_string(piece));
            ContractResult c = contract(cur, 0, a, b, &local);
            cur = pushoff(c.grope, c.sphere.id, &local);
            spheres[i].push_back(c.sphere.id);
            ++r.stats.piece_count;
        }
        for (const auto& s : spheres[i])
            if (!is_pi1_null_star(cur, s))
                throw Error("internal error: sphere " + s + " of grope " + std::to_string(i) + " is not pi_1-null");
        for (auto& e : local) e.grope = i;
        r.trace.insert(r.trace.end(), local.begin(), local.end());
        r.gropes.push_back(std::move(cur));
    }

    for (const auto& [p, q] : k.pairs) {
        const std::size_t n = std::min(spheres[p].size(), spheres[q].size());
        for (std::size_t i = 0; i < n; ++i)
            r.sphere_pairs.push_back({{p, spheres[p][i]}, {q, spheres[q][i]}});
        for (std::size_t i = n; i < spheres[p].size(); ++i) r.unpaired.push_back({p, spheres[p][i]});
        for (std::size_t i = n; i < spheres[q].size(); ++i) r.unpaired.push_back({q, spheres[q][i]});
    }
    return r;
}

/// Applies a trace entry by entry to the kernel's gropes.
inline std::vector<CappedGrope> replay(const SurgeryKernel& k, const Trace& trace)
{
    std::vector<CappedGrope> gs = k.gropes;
    SplitOptions subtree;
    subtree.allow_subtree_dual = true;
    for (const TraceEntry& e : trace) {
        if (e.grope >= gs.size()) throw ValidationError("trace references missing grope " + std::to_string(e.grope));
        CappedGrope& g = gs[e.grope];
        if (e.op == "split_cap") g = split_cap(g, e.cap, subtree);
        else if (e.op == "split_stage") g = split_stage(g, e.path);
        else if (e.op == "contract") g = contract(g, e.piece, e.cap, e.cap_b).grope;
        else if (e.op == "pushoff") g = pushoff(g, e.sphere);
        else throw ValidationError("unknown trace operation '" + e.op + "'");
    }
    return gs;
}

} // namespace grope
