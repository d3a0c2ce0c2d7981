#pragma once

#include <map>
#include <sstream>
#include <string>

#include "grope/capped.hpp"
#include "grope/grope.hpp"

namespace grope {

namespace detail {

inline std::string dot_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

inline std::string stage_node(const StagePath& p) { return dot_quote("stage " + to_string(p)); }
inline std::string tip_node(const std::string& tip) { return dot_quote("tip " + tip); }
inline std::string sphere_node(const std::string& s) { return dot_quote("sphere " + s); }

} // namespace detail

/// Graphviz rendering: stages are boxes, tips (with their caps and cap
/// labels) are ellipses, contraction spheres are double circles, and
/// intersections are dashed undirected edges labelled by their group element.
inline std::string render_dot(const CappedGrope& cg)
{
    using detail::dot_quote;
    std::ostringstream out;
    out << "digraph grope {\n";
    out << "  node [fontname=\"Helvetica\"];\n";
    const auto tip_of = tips_by_cap(cg);
    walk(
        cg.body.root,
        [&](const Tip& t, const TipLocation& loc) {
            std::string label = t.id;
            if (auto c = cg.caps.find(t.id); c != cg.caps.end()) {
                label += " / " + c->second + " {";
                bool first = true;
                for (const auto& w : cap_labels(cg, c->second)) {
                    label += (first ? "" : ", ") + to_string(w);
                    first = false;
                }
                label += "}";
            }
            out << "  " << detail::tip_node(t.id) << " [shape=ellipse,label=" << dot_quote(label) << "];\n";
            out << "  " << detail::stage_node(loc.stage) << " -> " << detail::tip_node(t.id)
                << " [label=" << dot_quote(std::to_string(loc.pair) + to_string(loc.side)) << "];\n";
        },
        [&](const StagePath& p) {
            const Stage& s = stage_at(cg.body.root, p);
            out << "  " << detail::stage_node(p) << " [shape=box,label="
                << dot_quote(to_string(p) + " genus " + std::to_string(s.genus())) << "];\n";
            if (!p.empty()) {
                const StagePath parent(p.begin(), p.end() - 1);
                out << "  " << detail::stage_node(parent) << " -> " << detail::stage_node(p)
                    << " [label=" << dot_quote(std::to_string(p.back().pair) + to_string(p.back().side)) << "];\n";
            }
        });
    for (const auto& s : cg.spheres)
        out << "  " << detail::sphere_node(s.id) << " [shape=doublecircle,label=" << dot_quote(s.id) << "];\n";
    auto node = [&](const SheetRef& r) {
        if (auto c = std::get_if<CapRef>(&r)) {
            auto it = tip_of.find(c->id);
            return it != tip_of.end() ? detail::tip_node(it->second) : dot_quote("cap " + c->id);
        }
        if (auto b = std::get_if<BodyRef>(&r)) return detail::stage_node(b->path);
        return detail::sphere_node(std::get<SphereRef>(r).id);
    };
    for (const auto& x : cg.intersections)
        out << "  " << node(x.end_a) << " -> " << node(x.end_b) << " [style=dashed,dir=none,label="
            << dot_quote(x.id + ": " + to_string(x.label)) << "];\n";
    out << "}\n";
    return out.str();
}

inline std::string render_dot(const Grope& g) { return render_dot(CappedGrope{g, {}, {}, {}, 0, false}); }

} // namespace grope
