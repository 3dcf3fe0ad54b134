#pragma once

#include "bmap/engine.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bmap {

// Exact dynamic-time-warping cost between two vector sequences: Euclidean
// ground cost, steps (i-1,j), (i,j-1), (i-1,j-1), unnormalized total.
// `window` restricts the alignment to the Sakoe-Chiba band |i - j| <= window
// and must be >= |len(a) - len(b)| so the band reaches the end corner.
double dtw_distance(std::span<const Vec> a, std::span<const Vec> b,
                    std::optional<int> window = std::nullopt);

struct ProfileEntry {
    int agent_id = 0;
    std::string group;
    double sih = 0;
    double mean_dtw = 0; // mean distance to every other trajectory
};

struct DtwProfile {
    std::vector<ProfileEntry> entries; // agent_id ascending
    std::vector<double> matrix;        // row-major n x n, entry order
};

struct ProfileOptions {
    bool position_based = true; // false: DTW over cell-center positions
    bool normalized = false;    // divide each pair cost by len(a) + len(b)
    std::optional<int> window;
    int workers = 1;
};

// All-pairs DTW over the recorded position sequences. Cell-center mode
// needs `space` to quantize positions. Pair results land in preassigned
// matrix slots, so worker count cannot change the output.
DtwProfile pairwise_profile(std::span<const Trajectory> trajectories,
                            const ProfileOptions& options = {},
                            const BeliefSpace* space = nullptr);

// Norm of the mean heading: 1 = fully aligned population, 0 = dispersed.
double polarization(std::span<const AgentState> population);

enum class PhaseLabel { Nomadic, Flocking, Stampede };
std::string_view to_string(PhaseLabel label);

// Explicit thresholds (lo, hi): mean > hi -> Nomadic, mean <= lo -> Stampede,
// otherwise Flocking. Without thresholds, 1-D 3-means over the per-agent
// means (centroids seeded at min/median/max); descending cluster means map
// to Nomadic, Flocking, Stampede, and distance ties resolve toward the
// lower-mean cluster (Stampede).
std::vector<PhaseLabel> classify_phases(
    const DtwProfile& profile,
    std::optional<std::pair<double, double>> thresholds = std::nullopt);

// Tabular exports (tab-separated, one header line).
std::string format_profile_table(const DtwProfile& profile,
                                 std::span<const PhaseLabel> phases);
std::string format_phase_summary(const DtwProfile& profile,
                                 std::span<const PhaseLabel> phases);
std::string format_matrix(const DtwProfile& profile);

struct ProfileRow {
    int agent_id = 0;
    std::string group;
    double sih = 0;
    double mean_dtw = 0;
    std::string phase;
};

std::vector<ProfileRow> parse_profile_table(std::string_view text);

} // namespace bmap
