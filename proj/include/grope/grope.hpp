#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "grope/box.hpp"
#include "grope/errors.hpp"
#include "grope/expr.hpp"
#include "grope/word.hpp"

namespace grope {

struct Stage;

/// A top-stage basis circle with nothing glued on.
struct Tip {
    std::string id;
    friend bool operator==(const Tip&, const Tip&) = default;
};

using Slot = std::variant<Tip, Box<Stage>>;

enum class Side : std::uint8_t { alpha, beta };

inline Side other(Side s) { return s == Side::alpha ? Side::beta : Side::alpha; }
inline const char* to_string(Side s) { return s == Side::alpha ? "alpha" : "beta"; }

/// One symplectic pair (alpha_i, beta_i) of a surface stage.
struct Pair {
    Slot alpha;
    Slot beta;

    Slot& at(Side s) { return s == Side::alpha ? alpha : beta; }
    const Slot& at(Side s) const { return s == Side::alpha ? alpha : beta; }

    friend bool operator==(const Pair&, const Pair&) = default;
};

/// Surface stage of genus pairs.size().
struct Stage {
    std::vector<Pair> pairs;

    std::size_t genus() const noexcept { return pairs.size(); }
    friend bool operator==(const Stage&, const Stage&) = default;
};

struct Grope {
    Stage root;
    bool closed = false;  // a closed grope replaces a 2-cell of a sphere

    friend bool operator==(const Grope&, const Grope&) = default;
};

/// Tip id -> the group element its circle is sent to.
using TipAssignment = std::map<std::string, GroupWord>;

/// Address of a stage: the sequence of (pair index, side) steps from the
/// first stage. The empty path is the first stage.
struct PathStep {
    std::size_t pair = 0;
    Side side = Side::alpha;
    friend bool operator==(const PathStep&, const PathStep&) = default;
    friend auto operator<=>(const PathStep&, const PathStep&) = default;
};
using StagePath = std::vector<PathStep>;

inline std::string to_string(const StagePath& p)
{
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i].pair) + (p[i].side == Side::alpha ? "a" : "b");
    }
    return s + "]";
}

inline bool is_tip(const Slot& s) { return std::holds_alternative<Tip>(s); }
inline const Tip& as_tip(const Slot& s) { return std::get<Tip>(s); }
inline const Stage& as_stage(const Slot& s) { return *std::get<Box<Stage>>(s); }
inline Stage& as_stage(Slot& s) { return *std::get<Box<Stage>>(s); }

inline const Stage& stage_at(const Stage& root, const StagePath& path)
{
    const Stage* s = &root;
    for (const PathStep& step : path) {
        if (step.pair >= s->pairs.size()) throw ValidationError("stage path " + to_string(path) + " out of range");
        const Slot& slot = s->pairs[step.pair].at(step.side);
        if (is_tip(slot)) throw ValidationError("stage path " + to_string(path) + " runs into a tip");
        s = &as_stage(slot);
    }
    return *s;
}

inline Stage& stage_at(Stage& root, const StagePath& path)
{
    return const_cast<Stage&>(stage_at(static_cast<const Stage&>(root), path));
}

inline bool has_stage(const Stage& root, const StagePath& path)
{
    const Stage* s = &root;
    for (const PathStep& step : path) {
        if (step.pair >= s->pairs.size()) return false;
        const Slot& slot = s->pairs[step.pair].at(step.side);
        if (is_tip(slot)) return false;
        s = &as_stage(slot);
    }
    return true;
}

/// Where a tip sits: its stage, pair and side.
struct TipLocation {
    StagePath stage;
    std::size_t pair = 0;
    Side side = Side::alpha;
};

/// Visits every slot depth-first in pair order (alpha before beta), calling
/// `on_tip(tip, location)` for tips and `on_stage(path)` for stages in
/// preorder, the first stage included.
template <typename OnTip, typename OnStage>
void walk(const Stage& root, OnTip&& on_tip, OnStage&& on_stage)
{
    StagePath path;
    std::function<void(const Stage&)> rec = [&](const Stage& s) {
        on_stage(static_cast<const StagePath&>(path));
        for (std::size_t i = 0; i < s.pairs.size(); ++i) {
            for (Side side : {Side::alpha, Side::beta}) {
                const Slot& slot = s.pairs[i].at(side);
                if (is_tip(slot)) {
                    on_tip(as_tip(slot), TipLocation{path, i, side});
                } else {
                    path.push_back({i, side});
                    rec(as_stage(slot));
                    path.pop_back();
                }
            }
        }
    };
    rec(root);
}

inline std::optional<TipLocation> locate_tip(const Stage& root, const std::string& id)
{
    std::optional<TipLocation> found;
    walk(
        root, [&](const Tip& t, const TipLocation& loc) { if (!found && t.id == id) found = loc; },
        [](const StagePath&) {});
    return found;
}

/// Preorder list of all stage paths.
inline std::vector<StagePath> stage_paths(const Stage& root)
{
    std::vector<StagePath> out;
    walk(root, [](const Tip&, const TipLocation&) {}, [&](const StagePath& p) { out.push_back(p); });
    return out;
}

inline std::size_t class_of(const Stage& s);

inline std::size_t class_of(const Slot& slot)
{
    return is_tip(slot) ? 1 : class_of(as_stage(slot));
}

/// Class of a stage: the minimum over its pairs of class(alpha) + class(beta).
inline std::size_t class_of(const Stage& s)
{
    if (s.pairs.empty()) throw ValidationError("genus zero stage has no class");
    std::size_t best = 0;
    for (const Pair& p : s.pairs) {
        const std::size_t c = class_of(p.alpha) + class_of(p.beta);
        if (best == 0 || c < best) best = c;
    }
    return best;
}

inline std::size_t class_of(const Grope& g) { return class_of(g.root); }

/// Tip ids in depth-first pair order.
inline std::vector<std::string> tips(const Stage& root)
{
    std::vector<std::string> out;
    walk(root, [&](const Tip& t, const TipLocation&) { out.push_back(t.id); }, [](const StagePath&) {});
    return out;
}

inline std::vector<std::string> tips(const Grope& g) { return tips(g.root); }
inline std::size_t count_tips(const Grope& g) { return tips(g).size(); }

inline bool is_dyadic(const Stage& s)
{
    if (s.genus() != 1) return false;
    for (Side side : {Side::alpha, Side::beta}) {
        const Slot& slot = s.pairs.front().at(side);
        if (!is_tip(slot) && !is_dyadic(as_stage(slot))) return false;
    }
    return true;
}

inline bool is_dyadic(const Grope& g) { return is_dyadic(g.root); }

inline GroupWord boundary_word(const Stage& s, const TipAssignment& a);

inline GroupWord boundary_word(const Slot& slot, const TipAssignment& a)
{
    if (is_tip(slot)) {
        auto it = a.find(as_tip(slot).id);
        if (it == a.end()) throw ValidationError("tip '" + as_tip(slot).id + "' missing from assignment");
        return it->second;
    }
    return boundary_word(as_stage(slot), a);
}

/// Word read along the boundary: product over pairs of [word(alpha), word(beta)].
inline GroupWord boundary_word(const Stage& s, const TipAssignment& a)
{
    if (a.empty()) throw ValidationError("empty tip assignment");
    GroupWord w(a.begin()->second.rank());
    for (const Pair& p : s.pairs) w = multiply(w, commutator(boundary_word(p.alpha, a), boundary_word(p.beta, a)));
    return w;
}

inline GroupWord boundary_word(const Grope& g, const TipAssignment& a) { return boundary_word(g.root, a); }

/// Sends the i-th tip (depth-first order) to generator x_{i+1}.
inline TipAssignment injective_assignment(const Grope& g)
{
    const auto ids = tips(g);
    TipAssignment a;
    for (std::size_t i = 0; i < ids.size(); ++i)
        a.emplace(ids[i], GroupWord::generator(ids.size(), static_cast<std::uint32_t>(i)));
    return a;
}

struct ExpressionGrope {
    Grope grope;
    TipAssignment assignment;
};

namespace detail {

inline bool flatten_commutators(const CommutatorExpr& e, std::vector<const CommutatorExpr*>& out)
{
    switch (e.kind) {
    case CommutatorExpr::Kind::leaf:
        return false;
    case CommutatorExpr::Kind::comm:
        out.push_back(&e);
        return true;
    case CommutatorExpr::Kind::prod:
        for (const auto& f : e.children)
            if (!flatten_commutators(f, out)) return false;
        return true;
    }
    return false;
}

class ExpressionBuilder {
public:
    explicit ExpressionBuilder(std::size_t rank) : rank_(rank) {}

    Stage stage(const std::vector<const CommutatorExpr*>& comms)
    {
        Stage s;
        for (const CommutatorExpr* c : comms) {
            Slot a = slot(c->left());
            Slot b = slot(c->right());
            s.pairs.push_back(Pair{std::move(a), std::move(b)});
        }
        return s;
    }

    Slot slot(const CommutatorExpr& e)
    {
        std::vector<const CommutatorExpr*> comms;
        if (flatten_commutators(e, comms)) return Box<Stage>(stage(comms));
        std::string id = "t" + std::to_string(++next_tip_);
        assignment.emplace(id, eval(e, rank_));
        return Tip{id};
    }

    TipAssignment assignment;

private:
    std::size_t rank_;
    std::size_t next_tip_ = 0;
};

} // namespace detail

/// Grope whose boundary, under the returned assignment, spells eval(e).
/// Commutators become genus-1 pairs, products of commutators become
/// higher-genus stages (nested products are flattened), and any
/// subexpression that is not a product of commutators becomes a tip
/// labelled by its value.
inline ExpressionGrope grope_from_expression(const CommutatorExpr& e)
{
    std::vector<const CommutatorExpr*> comms;
    if (!detail::flatten_commutators(e, comms))
        throw ValidationError("expression is not a product of commutators, so it bounds no grope");
    detail::ExpressionBuilder b(min_rank(e));
    ExpressionGrope out;
    out.grope.root = b.stage(comms);
    out.assignment = std::move(b.assignment);
    return out;
}

/// Structural problems with a grope; empty means well formed.
inline std::vector<std::string> validate(const Grope& g, bool allow_empty_root = false)
{
    std::vector<std::string> v;
    std::set<std::string> seen;
    walk(
        g.root,
        [&](const Tip& t, const TipLocation&) {
            if (t.id.empty()) v.push_back("empty tip id");
            else if (!seen.insert(t.id).second) v.push_back("duplicate tip '" + t.id + "'");
        },
        [&](const StagePath& p) {
            if (stage_at(g.root, p).pairs.empty() && !(p.empty() && allow_empty_root))
                v.push_back("genus zero stage at " + to_string(p));
        });
    return v;
}

} // namespace grope
