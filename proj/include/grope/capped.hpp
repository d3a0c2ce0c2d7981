#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "grope/errors.hpp"
#include "grope/grope.hpp"
#include "grope/word.hpp"

namespace grope {

struct CapRef {
    std::string id;
    friend bool operator==(const CapRef&, const CapRef&) = default;
};
struct BodyRef {
    StagePath path;
    friend bool operator==(const BodyRef&, const BodyRef&) = default;
};
struct SphereRef {
    std::string id;
    friend bool operator==(const SphereRef&, const SphereRef&) = default;
};

/// A sheet an intersection point lies on: a cap, a body stage, or a sphere
/// produced by contraction.
using SheetRef = std::variant<CapRef, BodyRef, SphereRef>;

inline std::string to_string(const SheetRef& s)
{
    if (auto c = std::get_if<CapRef>(&s)) return "cap:" + c->id;
    if (auto b = std::get_if<BodyRef>(&s)) return "body:" + to_string(b->path);
    return "sphere:" + std::get<SphereRef>(s).id;
}

inline bool is_cap(const SheetRef& s, const std::string& id)
{
    auto c = std::get_if<CapRef>(&s);
    return c && c->id == id;
}

inline bool is_sphere(const SheetRef& s, const std::string& id)
{
    auto p = std::get_if<SphereRef>(&s);
    return p && p->id == id;
}

/// Transverse double point between two sheets. `label` is the double-point
/// loop read from end_a to end_b; read the other way it is the inverse.
struct Intersection {
    std::string id;
    SheetRef end_a;
    SheetRef end_b;
    GroupWord label;

    friend bool operator==(const Intersection&, const Intersection&) = default;
};

/// Sphere left behind by contracting a dyadic piece. `queue` lists the
/// intersections still waiting to be pushed off.
struct SphereRecord {
    std::string id;
    std::string cap_a;
    std::string cap_b;
    GroupWord label;  // the shared element of the two contracted caps
    std::vector<std::string> queue;

    friend bool operator==(const SphereRecord&, const SphereRecord&) = default;
};

struct CappedGrope {
    Grope body;
    std::map<std::string, std::string> caps;  // tip id -> cap id
    std::vector<Intersection> intersections;
    std::vector<SphereRecord> spheres;
    std::size_t alphabet = 0;  // rank of the free group carrying the labels
    bool strict = false;       // only cap-cap intersections allowed

    friend bool operator==(const CappedGrope&, const CappedGrope&) = default;
};

/// Caps every tip, naming the cap of the i-th tip "c<i+1>".
inline CappedGrope cap_all_tips(Grope body, std::size_t alphabet)
{
    CappedGrope cg;
    const auto ids = tips(body);
    for (std::size_t i = 0; i < ids.size(); ++i) cg.caps.emplace(ids[i], "c" + std::to_string(i + 1));
    cg.body = std::move(body);
    cg.alphabet = alphabet;
    return cg;
}

/// cap id -> tip id
inline std::map<std::string, std::string> tips_by_cap(const CappedGrope& cg)
{
    std::map<std::string, std::string> out;
    for (const auto& [tip, cap] : cg.caps) out.emplace(cap, tip);
    return out;
}

inline bool has_cap(const CappedGrope& cg, const std::string& cap)
{
    return std::any_of(cg.caps.begin(), cg.caps.end(), [&](const auto& kv) { return kv.second == cap; });
}

/// Caps in tip traversal order.
inline std::vector<std::string> caps_in_order(const CappedGrope& cg, const Stage& root)
{
    std::vector<std::string> out;
    for (const auto& t : tips(root)) {
        auto it = cg.caps.find(t);
        if (it != cg.caps.end()) out.push_back(it->second);
    }
    return out;
}

inline std::vector<std::string> caps_in_order(const CappedGrope& cg) { return caps_in_order(cg, cg.body.root); }

/// Labels of every intersection point on cap `cap`, read from the cap's
/// side, sorted. A self-intersection contributes both of its readings.
inline std::vector<GroupWord> cap_labels(const CappedGrope& cg, const std::string& cap)
{
    if (!has_cap(cg, cap)) throw ValidationError("unknown cap '" + cap + "'");
    std::vector<GroupWord> out;
    for (const Intersection& x : cg.intersections) {
        if (is_cap(x.end_a, cap)) out.push_back(x.label);
        if (is_cap(x.end_b, cap)) out.push_back(invert(x.label));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The group elements a cap carries: nonidentity labels up to inversion.
using LabelClasses = std::set<GroupWord>;

/// cap id -> label classes, for every cap (caps without intersections map
/// to the empty set).
inline std::map<std::string, LabelClasses> cap_classes(const CappedGrope& cg)
{
    std::map<std::string, LabelClasses> out;
    for (const auto& [tip, cap] : cg.caps) out[cap];
    for (const Intersection& x : cg.intersections) {
        if (x.label.is_identity()) continue;
        const GroupWord cls = unoriented(x.label);
        for (const SheetRef* end : {&x.end_a, &x.end_b})
            if (auto c = std::get_if<CapRef>(end)) out[c->id].insert(cls);
    }
    return out;
}

inline LabelClasses label_classes(const CappedGrope& cg, const std::string& cap)
{
    LabelClasses out;
    for (const GroupWord& w : cap_labels(cg, cap))
        if (!w.is_identity()) out.insert(unoriented(w));
    return out;
}

/// Distinct nonidentity labels over all intersections, g and g^-1 identified.
inline LabelClasses distinct_labels(const CappedGrope& cg)
{
    LabelClasses out;
    for (const Intersection& x : cg.intersections)
        if (!x.label.is_identity()) out.insert(unoriented(x.label));
    return out;
}

inline std::size_t distinct_label_count(const CappedGrope& cg) { return distinct_labels(cg).size(); }

inline bool is_pi1_null(const CappedGrope& cg)
{
    return std::all_of(cg.intersections.begin(), cg.intersections.end(),
                       [](const Intersection& x) { return x.label.is_identity(); });
}

/// Every intersection touching sphere `sphere` is identity-labelled.
inline bool is_pi1_null_star(const CappedGrope& cg, const std::string& sphere)
{
    return std::all_of(cg.intersections.begin(), cg.intersections.end(), [&](const Intersection& x) {
        return !(is_sphere(x.end_a, sphere) || is_sphere(x.end_b, sphere)) || x.label.is_identity();
    });
}

inline const SphereRecord* find_sphere(const CappedGrope& cg, const std::string& id)
{
    for (const auto& s : cg.spheres)
        if (s.id == id) return &s;
    return nullptr;
}

/// Structural problems; empty means valid.
inline std::vector<std::string> validate(const CappedGrope& cg)
{
    std::vector<std::string> v = validate(cg.body, !cg.spheres.empty());
    const auto tip_ids = tips(cg.body);
    const std::set<std::string> tip_set(tip_ids.begin(), tip_ids.end());
    std::set<std::string> cap_ids;
    for (const auto& t : tip_ids)
        if (!cg.caps.count(t)) v.push_back("tip '" + t + "' has no cap");
    for (const auto& [tip, cap] : cg.caps) {
        if (!tip_set.count(tip)) v.push_back("cap '" + cap + "' attached to unknown tip '" + tip + "'");
        if (!cap_ids.insert(cap).second) v.push_back("cap '" + cap + "' appears on more than one tip");
    }
    std::set<std::string> sphere_ids;
    for (const auto& s : cg.spheres)
        if (!sphere_ids.insert(s.id).second) v.push_back("duplicate sphere '" + s.id + "'");

    std::set<std::string> seen;
    for (const Intersection& x : cg.intersections) {
        if (!seen.insert(x.id).second) v.push_back("duplicate intersection '" + x.id + "'");
        if (x.label.rank() != cg.alphabet)
            v.push_back("intersection '" + x.id + "' label is over a different alphabet");
        bool body_a = std::holds_alternative<BodyRef>(x.end_a);
        bool body_b = std::holds_alternative<BodyRef>(x.end_b);
        if (body_a && body_b) v.push_back("intersection '" + x.id + "' joins two body stages");
        for (const SheetRef* end : {&x.end_a, &x.end_b}) {
            if (auto c = std::get_if<CapRef>(end)) {
                if (!cap_ids.count(c->id)) v.push_back("intersection '" + x.id + "' references unknown cap '" + c->id + "'");
            } else if (auto b = std::get_if<BodyRef>(end)) {
                if (cg.strict) v.push_back("intersection '" + x.id + "' touches the body in strict mode");
                if (!has_stage(cg.body.root, b->path) || (b->path.empty() && cg.body.root.pairs.empty()))
                    v.push_back("intersection '" + x.id + "' references missing stage " + to_string(b->path));
            } else {
                const auto& s = std::get<SphereRef>(*end);
                if (!sphere_ids.count(s.id))
                    v.push_back("intersection '" + x.id + "' references unknown sphere '" + s.id + "'");
            }
        }
    }
    for (const auto& s : cg.spheres)
        for (const auto& q : s.queue)
            if (!seen.count(q)) v.push_back("sphere '" + s.id + "' queues unknown intersection '" + q + "'");
    return v;
}

namespace detail {

// Fresh identifiers of the form <prefix><n>, above every existing id of that
// form, so rewrites are deterministic and never collide.
class FreshIds {
public:
    explicit FreshIds(const CappedGrope& cg)
    {
        for (const auto& [tip, cap] : cg.caps) {
            note('t', tip);
            note('c', cap);
        }
        for (const auto& t : tips(cg.body)) note('t', t);
        for (const auto& x : cg.intersections) note('i', x.id);
        for (const auto& s : cg.spheres) note('s', s.id);
    }

    std::string tip() { return "t" + std::to_string(++next_['t']); }
    std::string cap() { return "c" + std::to_string(++next_['c']); }
    std::string intersection() { return "i" + std::to_string(++next_['i']); }
    std::string sphere() { return "s" + std::to_string(++next_['s']); }

private:
    void note(char prefix, const std::string& id)
    {
        if (id.size() < 2 || id[0] != prefix || id.size() > 18) return;
        std::size_t n = 0;
        for (std::size_t i = 1; i < id.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(id[i]))) return;
            n = n * 10 + static_cast<std::size_t>(id[i] - '0');
        }
        auto& cur = next_[prefix];
        cur = std::max(cur, n);
    }

    std::map<char, std::size_t> next_;
};

} // namespace detail

} // namespace grope
