#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "grope/grope.hpp"

namespace grope {

/// One rewrite, with enough detail to replay it. Only the fields relevant to
/// `op` are meaningful:
///   split_cap    cap
///   split_stage  path
///   contract     piece, cap, cap_b, sphere
///   pushoff      sphere
struct TraceEntry {
    std::string op;
    std::size_t grope = 0;
    std::string cap;
    std::string cap_b;
    StagePath path;
    std::size_t piece = 0;
    std::string sphere;
    std::size_t genus_before = 0;  // genus of the stage the rewrite grew or shrank
    std::size_t genus_after = 0;
    std::vector<std::string> notes;  // label computations, for audit only

    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

using Trace = std::vector<TraceEntry>;

} // namespace grope
