#pragma once

#include "bmap/mapper.hpp"

#include <string>
#include <string_view>

namespace bmap {

// GraphML with node attributes label, dwell_time (mean per visitor, time
// units), unique_visitors, layout x/y when present, and per-group channel
// attributes for overlays; edges carry their traversal count. Node ids
// follow sorted label order, so output bytes are deterministic.
std::string to_graphml(const BeliefGraph& graph);
std::string to_graphml(const OverlayMap& overlay);

// Structured text with the same fields, readable back by the parsers below.
std::string to_graph_text(const BeliefGraph& graph);
BeliefGraph parse_graph_text(std::string_view text);

std::string to_overlay_text(const OverlayMap& overlay);
OverlayMap parse_overlay_text(std::string_view text);

} // namespace bmap
