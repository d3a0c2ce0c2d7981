#pragma once

// JSON interchange. Objects are emitted with sorted keys and two-space
// indentation, so serializing a value always gives the same bytes.
//
//   grope         {"closed": bool, "root": stage}
//   stage         {"pairs": [[slot, slot], ...]}
//   slot          {"tip": "<id>"} | {"stage": stage}
//   capped grope  grope fields plus "alphabet", "caps" (tip -> cap),
//                 "intersections", "spheres", "strict"
//   intersection  {"id", "endA", "endB", "label"}
//   sheet         {"cap": "<id>"} | {"body": path} | {"sphere": "<id>"}
//   path          [[pairIndex, "alpha"|"beta"], ...]
//   kernel        {"alphabet", "gropes": [capped...], "pairs": [[i, j], ...]}

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "grope/capped.hpp"
#include "grope/errors.hpp"
#include "grope/grope.hpp"
#include "grope/parse.hpp"
#include "grope/pipeline.hpp"
#include "grope/trace.hpp"

namespace grope {

using Json = nlohmann::json;

/// Serialized text: pretty-printed, sorted keys, trailing newline.
inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

/// Parses JSON text; syntax errors become ParseError at the byte offset.
inline Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
        std::string msg = e.what();
        if (auto p = msg.find("; "); p != std::string::npos) msg = msg.substr(p + 2);
        throw ParseError(at, msg);
    }
}

// ---------------------------------------------------------------- writing

inline Json to_json(const StagePath& path)
{
    Json j = Json::array();
    for (const auto& s : path) j.push_back(Json::array({s.pair, to_string(s.side)}));
    return j;
}

inline Json to_json(const Stage& s);

inline Json to_json(const Slot& slot)
{
    if (is_tip(slot)) return Json{{"tip", as_tip(slot).id}};
    return Json{{"stage", to_json(as_stage(slot))}};
}

inline Json to_json(const Stage& s)
{
    Json pairs = Json::array();
    for (const Pair& p : s.pairs) pairs.push_back(Json::array({to_json(p.alpha), to_json(p.beta)}));
    return Json{{"pairs", std::move(pairs)}};
}

inline Json to_json(const Grope& g) { return Json{{"closed", g.closed}, {"root", to_json(g.root)}}; }

inline Json to_json(const SheetRef& s)
{
    if (auto c = std::get_if<CapRef>(&s)) return Json{{"cap", c->id}};
    if (auto b = std::get_if<BodyRef>(&s)) return Json{{"body", to_json(b->path)}};
    return Json{{"sphere", std::get<SphereRef>(s).id}};
}

inline Json to_json(const Intersection& x)
{
    return Json{{"id", x.id}, {"endA", to_json(x.end_a)}, {"endB", to_json(x.end_b)}, {"label", to_string(x.label)}};
}

inline Json to_json(const SphereRecord& s)
{
    return Json{{"id", s.id}, {"caps", Json::array({s.cap_a, s.cap_b})}, {"label", to_string(s.label)}, {"queue", s.queue}};
}

inline Json to_json(const CappedGrope& cg)
{
    Json j = to_json(cg.body);
    j["alphabet"] = cg.alphabet;
    j["caps"] = Json::object();
    for (const auto& [tip, cap] : cg.caps) j["caps"][tip] = cap;
    j["intersections"] = Json::array();
    for (const auto& x : cg.intersections) j["intersections"].push_back(to_json(x));
    j["spheres"] = Json::array();
    for (const auto& s : cg.spheres) j["spheres"].push_back(to_json(s));
    j["strict"] = cg.strict;
    return j;
}

inline Json to_json(const SurgeryKernel& k)
{
    Json gs = Json::array();
    for (const auto& g : k.gropes) gs.push_back(to_json(g));
    Json pairs = Json::array();
    for (const auto& [a, b] : k.pairs) pairs.push_back(Json::array({a, b}));
    return Json{{"alphabet", k.alphabet}, {"gropes", std::move(gs)}, {"pairs", std::move(pairs)}};
}

inline Json to_json(const TraceEntry& e)
{
    Json j{{"op", e.op}, {"grope", e.grope}, {"genusBefore", e.genus_before}, {"genusAfter", e.genus_after}};
    if (e.op == "split_cap") {
        j["cap"] = e.cap;
        j["stage"] = to_json(e.path);
    } else if (e.op == "split_stage") {
        j["stage"] = to_json(e.path);
    } else if (e.op == "contract") {
        j["piece"] = e.piece;
        j["caps"] = Json::array({e.cap, e.cap_b});
        j["sphere"] = e.sphere;
    } else if (e.op == "pushoff") {
        j["sphere"] = e.sphere;
    }
    if (!e.notes.empty()) j["notes"] = e.notes;
    return j;
}

/// One compact JSON object per line.
inline std::string trace_lines(const Trace& t)
{
    std::string out;
    for (const auto& e : t) out += to_json(e).dump() + "\n";
    return out;
}

inline Json to_json(const HypothesisReport& h)
{
    return Json{{"m", h.m}, {"minClass", h.min_class}, {"ok", h.ok}, {"okLooseThreshold", h.ok_loose_threshold}};
}

inline Json to_json(const SurgeryStats& s)
{
    return Json{{"m", s.m},
                {"inputClass", s.input_class},
                {"firstStageGenusAfterSplit", s.first_stage_genus_after_split},
                {"pieceCount", s.piece_count}};
}

inline Json to_json(const SphereHandle& h) { return Json{{"grope", h.grope}, {"sphere", h.sphere}}; }

inline Json to_json(const SurgeryResult& r)
{
    Json gs = Json::array();
    for (const auto& g : r.gropes) gs.push_back(to_json(g));
    Json pairs = Json::array();
    for (const auto& [a, b] : r.sphere_pairs) pairs.push_back(Json::array({to_json(a), to_json(b)}));
    Json unpaired = Json::array();
    for (const auto& h : r.unpaired) unpaired.push_back(to_json(h));
    return Json{{"gropes", std::move(gs)},
                {"spherePairs", std::move(pairs)},
                {"unpaired", std::move(unpaired)},
                {"stats", to_json(r.stats)}};
}

// ---------------------------------------------------------------- reading

namespace detail {

// Cursor into a JSON document that remembers its JSON-pointer location, so
// schema errors name the offending node.
class JsonReader {
public:
    JsonReader(const Json& j, std::string where = "") : j_(j), where_(std::move(where)) {}

    const Json& json() const { return j_; }
    const std::string& where() const { return where_; }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ValidationError("at " + (where_.empty() ? std::string("/") : where_) + ": " + msg);
    }

    bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

    JsonReader at(const char* key) const
    {
        if (!j_.is_object()) fail("expected an object");
        if (!j_.contains(key)) fail(std::string("missing field '") + key + "'");
        return {j_.at(key), where_ + "/" + key};
    }

    JsonReader at(std::size_t i) const { return {j_.at(i), where_ + "/" + std::to_string(i)}; }

    std::size_t size() const
    {
        if (!j_.is_array()) fail("expected an array");
        return j_.size();
    }

    std::string str() const
    {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }

    bool boolean() const
    {
        if (!j_.is_boolean()) fail("expected true or false");
        return j_.get<bool>();
    }

    std::size_t index() const
    {
        if (!j_.is_number_unsigned() && !(j_.is_number_integer() && j_.get<long long>() >= 0))
            fail("expected a nonnegative integer");
        return j_.get<std::size_t>();
    }

    void only(std::initializer_list<const char*> keys) const
    {
        if (!j_.is_object()) fail("expected an object");
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            bool known = false;
            for (const char* k : keys) known = known || it.key() == k;
            if (!known) fail("unknown field '" + it.key() + "'");
        }
    }

private:
    const Json& j_;
    std::string where_;
};

constexpr std::size_t max_nesting = 10'000;

inline Stage read_stage(const JsonReader& r, std::size_t depth);

inline Slot read_slot(const JsonReader& r, std::size_t depth)
{
    if (r.has("tip")) {
        r.only({"tip"});
        std::string id = r.at("tip").str();
        if (id.empty()) r.at("tip").fail("tip id must not be empty");
        return Tip{std::move(id)};
    }
    if (r.has("stage")) {
        r.only({"stage"});
        return Box<Stage>(read_stage(r.at("stage"), depth + 1));
    }
    r.fail("slot must have a 'tip' or a 'stage' field");
}

inline Stage read_stage(const JsonReader& r, std::size_t depth)
{
    if (depth > max_nesting) r.fail("grope nested too deeply");
    r.only({"pairs"});
    const JsonReader pairs = r.at("pairs");
    Stage s;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const JsonReader p = pairs.at(i);
        if (p.size() != 2) p.fail("a pair has exactly two slots");
        Slot a = read_slot(p.at(std::size_t{0}), depth);
        Slot b = read_slot(p.at(std::size_t{1}), depth);
        s.pairs.push_back(Pair{std::move(a), std::move(b)});
    }
    return s;
}

inline StagePath read_path(const JsonReader& r)
{
    StagePath path;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const JsonReader step = r.at(i);
        if (step.size() != 2) step.fail("a path step is [pairIndex, \"alpha\"|\"beta\"]");
        const std::size_t pair = step.at(std::size_t{0}).index();
        const std::string side = step.at(std::size_t{1}).str();
        if (side != "alpha" && side != "beta") step.at(std::size_t{1}).fail("side must be \"alpha\" or \"beta\"");
        path.push_back({pair, side == "alpha" ? Side::alpha : Side::beta});
    }
    return path;
}

inline SheetRef read_sheet(const JsonReader& r)
{
    if (r.has("cap")) {
        r.only({"cap"});
        return CapRef{r.at("cap").str()};
    }
    if (r.has("body")) {
        r.only({"body"});
        return BodyRef{read_path(r.at("body"))};
    }
    if (r.has("sphere")) {
        r.only({"sphere"});
        return SphereRef{r.at("sphere").str()};
    }
    r.fail("sheet must have a 'cap', 'body' or 'sphere' field");
}

inline GroupWord read_label(const JsonReader& r, std::size_t alphabet)
{
    try {
        return parse_word(r.str(), alphabet);
    } catch (const ParseError& e) {
        r.fail("label position " + std::to_string(e.position()) + ": " + e.message());
    }
}

inline std::size_t infer_alphabet(const JsonReader& r)
{
    std::size_t rank = 0;
    auto note = [&](const JsonReader& label) {
        try {
            rank = std::max(rank, mentioned_rank(label.str()));
        } catch (const ParseError& e) {
            label.fail("label position " + std::to_string(e.position()) + ": " + e.message());
        }
    };
    if (r.has("intersections")) {
        const JsonReader xs = r.at("intersections");
        for (std::size_t i = 0; i < xs.size(); ++i) note(xs.at(i).at("label"));
    }
    if (r.has("spheres")) {
        const JsonReader ss = r.at("spheres");
        for (std::size_t i = 0; i < ss.size(); ++i) note(ss.at(i).at("label"));
    }
    return rank;
}

inline Grope read_grope(const JsonReader& r)
{
    Grope g;
    g.closed = r.has("closed") ? r.at("closed").boolean() : false;
    g.root = read_stage(r.at("root"), 0);
    return g;
}

inline CappedGrope read_capped(const JsonReader& r, std::optional<std::size_t> alphabet)
{
    r.only({"alphabet", "caps", "closed", "intersections", "root", "spheres", "strict"});
    CappedGrope cg;
    cg.body = read_grope(r);
    if (r.has("alphabet")) cg.alphabet = r.at("alphabet").index();
    else cg.alphabet = alphabet ? *alphabet : infer_alphabet(r);
    if (alphabet && cg.alphabet != *alphabet) r.at("alphabet").fail("grope alphabet differs from the kernel alphabet");
    cg.strict = r.has("strict") ? r.at("strict").boolean() : false;

    const JsonReader caps = r.at("caps");
    if (!caps.json().is_object()) caps.fail("expected an object mapping tip ids to cap ids");
    for (auto it = caps.json().begin(); it != caps.json().end(); ++it) {
        if (!it->is_string()) JsonReader(*it, caps.where() + "/" + it.key()).fail("expected a cap id string");
        cg.caps.emplace(it.key(), it->get<std::string>());
    }
    if (r.has("intersections")) {
        const JsonReader xs = r.at("intersections");
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const JsonReader x = xs.at(i);
            x.only({"id", "endA", "endB", "label"});
            cg.intersections.push_back(Intersection{x.at("id").str(), read_sheet(x.at("endA")), read_sheet(x.at("endB")),
                                                    read_label(x.at("label"), cg.alphabet)});
        }
    }
    if (r.has("spheres")) {
        const JsonReader ss = r.at("spheres");
        for (std::size_t i = 0; i < ss.size(); ++i) {
            const JsonReader s = ss.at(i);
            s.only({"id", "caps", "label", "queue"});
            SphereRecord rec;
            rec.id = s.at("id").str();
            const JsonReader c = s.at("caps");
            if (c.size() != 2) c.fail("a sphere records exactly two caps");
            rec.cap_a = c.at(std::size_t{0}).str();
            rec.cap_b = c.at(std::size_t{1}).str();
            rec.label = read_label(s.at("label"), cg.alphabet);
            const JsonReader q = s.at("queue");
            for (std::size_t k = 0; k < q.size(); ++k) rec.queue.push_back(q.at(k).str());
            cg.spheres.push_back(std::move(rec));
        }
    }
    return cg;
}

} // namespace detail

inline Grope grope_from_json(const Json& j)
{
    detail::JsonReader r(j);
    r.only({"closed", "root"});
    return detail::read_grope(r);
}

inline CappedGrope capped_from_json(const Json& j) { return detail::read_capped(detail::JsonReader(j), std::nullopt); }

inline SurgeryKernel kernel_from_json(const Json& j)
{
    detail::JsonReader r(j);
    r.only({"alphabet", "gropes", "pairs"});
    SurgeryKernel k;
    k.alphabet = r.at("alphabet").index();
    const auto gs = r.at("gropes");
    for (std::size_t i = 0; i < gs.size(); ++i) k.gropes.push_back(detail::read_capped(gs.at(i), k.alphabet));
    const auto ps = r.at("pairs");
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto p = ps.at(i);
        if (p.size() != 2) p.fail("a hyperbolic pair has exactly two grope indices");
        k.pairs.emplace_back(p.at(std::size_t{0}).index(), p.at(std::size_t{1}).index());
    }
    return k;
}

inline TraceEntry trace_entry_from_json(const Json& j)
{
    detail::JsonReader r(j);
    TraceEntry e;
    e.op = r.at("op").str();
    e.grope = r.at("grope").index();
    e.genus_before = r.has("genusBefore") ? r.at("genusBefore").index() : 0;
    e.genus_after = r.has("genusAfter") ? r.at("genusAfter").index() : 0;
    if (r.has("cap")) e.cap = r.at("cap").str();
    if (r.has("stage")) e.path = detail::read_path(r.at("stage"));
    if (r.has("piece")) e.piece = r.at("piece").index();
    if (r.has("caps")) {
        const auto c = r.at("caps");
        if (c.size() != 2) c.fail("expected two caps");
        e.cap = c.at(std::size_t{0}).str();
        e.cap_b = c.at(std::size_t{1}).str();
    }
    if (r.has("sphere")) e.sphere = r.at("sphere").str();
    if (r.has("notes"))
        for (std::size_t i = 0; i < r.at("notes").size(); ++i) e.notes.push_back(r.at("notes").at(i).str());
    return e;
}

/// Reads the line-per-entry format written by trace_lines.
inline Trace trace_from_lines(std::string_view text)
{
    Trace t;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(start, end - start);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
            try {
                t.push_back(trace_entry_from_json(parse_json(line)));
            } catch (const ParseError& e) {
                throw ParseError(start + e.position(), e.message());
            }
        }
        start = end + 1;
    }
    return t;
}

/// What a JSON document holds, judged by its top-level fields.
enum class DocumentKind { grope, capped, kernel };

inline DocumentKind document_kind(const Json& j)
{
    if (!j.is_object()) throw ValidationError("at /: expected an object");
    if (j.contains("gropes")) return DocumentKind::kernel;
    if (j.contains("caps")) return DocumentKind::capped;
    return DocumentKind::grope;
}

} // namespace grope
