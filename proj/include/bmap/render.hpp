#pragma once

#include "bmap/analysis.hpp"
#include "bmap/mapper.hpp"
#include "bmap/trajectory_io.hpp"

#include <span>
#include <string>

namespace bmap {

// Agent positions over the cell grid at one recorded step. 2-D only: cells
// shaded by occupancy, agents drawn as dots. Throws DataError when the step
// was not recorded.
std::string render_heatmap(const TrajectoryFile& file, int step);

// Laid-out belief graph: disc area tracks mean dwell time, opacity tracks
// unique visitors (min-max normalized), edge width tracks traversal count.
std::string render_graph(const BeliefGraph& graph);

// Base graph in white on dark ground with per-group colored channel discs
// and a legend naming the base and every group.
std::string render_overlay(const OverlayMap& overlay);

// Per-agent mean DTW scatter, colored by phase, grouped along the x axis.
std::string render_phases(std::span<const ProfileRow> rows);

} // namespace bmap
