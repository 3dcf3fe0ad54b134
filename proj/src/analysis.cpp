#include "bmap/analysis.hpp"

#include "bmap/errors.hpp"
#include "bmap/text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace bmap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ground_cost(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        double diff = a[d] - b[d];
        s += diff * diff;
    }
    return std::sqrt(s);
}

void check_sequence(std::span<const Vec> seq, std::size_t dims, std::string_view which) {
    if (seq.empty()) throw DataError("dtw: " + std::string(which) + " sequence is empty");
    for (const Vec& v : seq)
        if (v.size() != dims)
            throw DataError("dtw: " + std::string(which) +
                            " sequence has mixed dimensionality");
}

} // namespace

double dtw_distance(std::span<const Vec> a, std::span<const Vec> b,
                    std::optional<int> window) {
    if (a.empty() || b.empty()) throw DataError("dtw: empty sequence");
    std::size_t dims = a[0].size();
    check_sequence(a, dims, "first");
    check_sequence(b, dims, "second");

    std::size_t n = a.size();
    std::size_t m = b.size();
    std::size_t band = m; // no restriction
    if (window) {
        std::size_t diff = n > m ? n - m : m - n;
        if (*window < 0 || static_cast<std::size_t>(*window) < diff)
            throw ConfigError("window " + format_int(*window) +
                              " is narrower than the sequence length difference " +
                              format_uint(diff) + "; the band cannot reach the end");
        band = static_cast<std::size_t>(*window);
    }

    std::vector<double> prev(m, kInf);
    std::vector<double> cur(m, kInf);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(cur.begin(), cur.end(), kInf);
        std::size_t jlo = (window && i > band) ? i - band : 0;
        std::size_t jhi = window ? std::min(m - 1, i + band) : m - 1;
        for (std::size_t j = jlo; j <= jhi; ++j) {
            double cost = ground_cost(a[i], b[j]);
            if (i == 0 && j == 0) {
                cur[j] = cost;
                continue;
            }
            double best = prev[j]; // (i-1, j)
            if (j > 0) {
                best = std::min(best, cur[j - 1]);  // (i, j-1)
                best = std::min(best, prev[j - 1]); // (i-1, j-1)
            }
            cur[j] = cost + best;
        }
        prev.swap(cur);
    }
    double result = prev[m - 1];
    if (!std::isfinite(result)) throw DataError("dtw: band excluded every alignment path");
    return result;
}

DtwProfile pairwise_profile(std::span<const Trajectory> trajectories,
                            const ProfileOptions& options, const BeliefSpace* space) {
    if (trajectories.size() < 2)
        throw DataError("pairwise profile needs at least 2 trajectories, got " +
                        format_uint(trajectories.size()));
    if (!options.position_based && space == nullptr)
        throw ConfigError("cell-center profile requires belief space parameters");

    std::vector<std::size_t> order(trajectories.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return trajectories[x].agent_id < trajectories[y].agent_id;
    });

    std::size_t n = order.size();
    std::size_t dims = 0;
    std::vector<std::vector<Vec>> sequences(n);
    DtwProfile profile;
    profile.entries.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Trajectory& traj = trajectories[order[i]];
        if (traj.samples.empty())
            throw DataError("trajectory of agent " + format_int(traj.agent_id) +
                            " has no samples");
        if (i == 0) dims = traj.samples[0].position.size();
        sequences[i].reserve(traj.samples.size());
        for (const TrajectorySample& s : traj.samples) {
            if (s.position.size() != dims)
                throw DataError("trajectory of agent " + format_int(traj.agent_id) +
                                " has mismatched dims");
            sequences[i].push_back(options.position_based
                                       ? s.position
                                       : space->cell_center(space->cell_of(s.position)));
        }
        profile.entries[i] = {traj.agent_id, traj.group, traj.sih, 0.0};
    }

    profile.matrix.assign(n * n, 0.0);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    auto compute_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            auto [i, j] = pairs[k];
            double d = dtw_distance(sequences[i], sequences[j], options.window);
            if (options.normalized)
                d /= static_cast<double>(sequences[i].size() + sequences[j].size());
            profile.matrix[i * n + j] = d;
            profile.matrix[j * n + i] = d;
        }
    };

    int workers = std::max(1, options.workers);
    workers = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(workers), std::max<std::size_t>(pairs.size(), 1)));
    if (workers == 1) {
        compute_range(0, pairs.size());
    } else {
        std::vector<std::thread> threads;
        std::size_t chunk = (pairs.size() + static_cast<std::size_t>(workers) - 1) /
                            static_cast<std::size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            std::size_t begin = static_cast<std::size_t>(w) * chunk;
            std::size_t end = std::min(pairs.size(), begin + chunk);
            if (begin >= end) break;
            threads.emplace_back(compute_range, begin, end);
        }
        for (std::thread& t : threads) t.join();
    }

    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0;
        for (std::size_t j = 0; j < n; ++j) sum += profile.matrix[i * n + j];
        profile.entries[i].mean_dtw = sum / static_cast<double>(n - 1);
    }
    return profile;
}

double polarization(std::span<const AgentState> population) {
    if (population.empty()) throw DataError("polarization of an empty population");
    Vec mean(population[0].heading.size(), 0.0);
    for (const AgentState& agent : population) add_scaled(mean, agent.heading, 1.0);
    for (double& x : mean) x /= static_cast<double>(population.size());
    return norm(mean);
}

std::string_view to_string(PhaseLabel label) {
    switch (label) {
        case PhaseLabel::Nomadic: return "Nomadic";
        case PhaseLabel::Flocking: return "Flocking";
        case PhaseLabel::Stampede: return "Stampede";
    }
    return "Nomadic";
}

namespace {

// 1-D 3-means; returns centroids sorted ascending. Values must be non-empty.
std::array<double, 3> three_means(const std::vector<double>& values) {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::array<double, 3> c = {sorted.front(), sorted[sorted.size() / 2], sorted.back()};
    std::vector<int> assign(values.size(), 0);
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < values.size(); ++i) {
            int best = 0;
            double best_d = std::abs(values[i] - c[0]);
            for (int k = 1; k < 3; ++k) {
                double d = std::abs(values[i] - c[static_cast<std::size_t>(k)]);
                if (d < best_d) { // ties keep the lower-mean cluster
                    best_d = d;
                    best = k;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }
        if (!changed && iter > 0) break;
        std::array<double, 3> sum = {0, 0, 0};
        std::array<std::size_t, 3> count = {0, 0, 0};
        for (std::size_t i = 0; i < values.size(); ++i) {
            sum[static_cast<std::size_t>(assign[i])] += values[i];
            ++count[static_cast<std::size_t>(assign[i])];
        }
        for (std::size_t k = 0; k < 3; ++k)
            if (count[k] > 0) c[k] = sum[k] / static_cast<double>(count[k]);
        std::sort(c.begin(), c.end());
    }
    return c;
}

} // namespace

std::vector<PhaseLabel> classify_phases(const DtwProfile& profile,
                                        std::optional<std::pair<double, double>> thresholds) {
    const auto& entries = profile.entries;
    std::vector<PhaseLabel> labels(entries.size());

    if (thresholds) {
        auto [lo, hi] = *thresholds;
        if (!(lo <= hi))
            throw ConfigError("thresholds must satisfy lo <= hi, got " + format_double(lo) +
                              " > " + format_double(hi));
        for (std::size_t i = 0; i < entries.size(); ++i) {
            double m = entries[i].mean_dtw;
            labels[i] = m > hi    ? PhaseLabel::Nomadic
                        : m <= lo ? PhaseLabel::Stampede
                                  : PhaseLabel::Flocking;
        }
        return labels;
    }

    if (entries.size() < 3)
        throw DataError("automatic phase classification needs at least 3 agents, got " +
                        format_uint(entries.size()));
    std::vector<double> means(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) means[i] = entries[i].mean_dtw;
    std::array<double, 3> c = three_means(means); // ascending: Stampede, Flocking, Nomadic
    for (std::size_t i = 0; i < entries.size(); ++i) {
        int best = 0;
        double best_d = std::abs(means[i] - c[0]);
        for (int k = 1; k < 3; ++k) {
            double d = std::abs(means[i] - c[static_cast<std::size_t>(k)]);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        labels[i] = best == 0   ? PhaseLabel::Stampede
                    : best == 1 ? PhaseLabel::Flocking
                                : PhaseLabel::Nomadic;
    }
    return labels;
}

std::string format_profile_table(const DtwProfile& profile,
                                 std::span<const PhaseLabel> phases) {
    std::string out = "agent_id\tgroup\tsih\tmean_dtw\tphase\n";
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
        const ProfileEntry& e = profile.entries[i];
        out += format_int(e.agent_id);
        out += '\t';
        out += e.group;
        out += '\t';
        out += format_double(e.sih);
        out += '\t';
        out += format_double(e.mean_dtw);
        out += '\t';
        out += to_string(phases[i]);
        out += '\n';
    }
    return out;
}

std::string format_phase_summary(const DtwProfile& profile,
                                 std::span<const PhaseLabel> phases) {
    std::vector<std::string> group_order;
    std::map<std::string, std::array<std::int64_t, 3>> counts;
    std::map<std::string, double> group_sih;
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
        const ProfileEntry& e = profile.entries[i];
        auto [it, inserted] = counts.try_emplace(e.group, std::array<std::int64_t, 3>{0, 0, 0});
        if (inserted) {
            group_order.push_back(e.group);
            group_sih[e.group] = e.sih;
        }
        switch (phases[i]) {
            case PhaseLabel::Nomadic: ++it->second[0]; break;
            case PhaseLabel::Flocking: ++it->second[1]; break;
            case PhaseLabel::Stampede: ++it->second[2]; break;
        }
    }
    std::string out = "group\tsih\tnomadic\tflocking\tstampede\n";
    for (const std::string& group : group_order) {
        const auto& c = counts[group];
        out += group;
        out += '\t';
        out += format_double(group_sih[group]);
        out += '\t';
        out += format_int(c[0]);
        out += '\t';
        out += format_int(c[1]);
        out += '\t';
        out += format_int(c[2]);
        out += '\n';
    }
    return out;
}

std::string format_matrix(const DtwProfile& profile) {
    std::size_t n = profile.entries.size();
    std::string out = "agent_id";
    for (const ProfileEntry& e : profile.entries) {
        out += '\t';
        out += format_int(e.agent_id);
    }
    out += '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out += format_int(profile.entries[i].agent_id);
        for (std::size_t j = 0; j < n; ++j) {
            out += '\t';
            out += format_double(profile.matrix[i * n + j]);
        }
        out += '\n';
    }
    return out;
}

std::vector<ProfileRow> parse_profile_table(std::string_view text) {
    auto lines = split(text, '\n');
    if (lines.empty() || trim(lines[0]) != "agent_id\tgroup\tsih\tmean_dtw\tphase")
        throw DataError("not a profile table: bad header");
    std::vector<ProfileRow> rows;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (trim(lines[li]).empty()) continue;
        auto cols = split(lines[li], '\t');
        if (cols.size() != 5)
            throw DataError("profile line " + format_uint(li + 1) + ": expected 5 columns");
        ProfileRow row;
        row.agent_id = static_cast<int>(parse_int(cols[0], "agent_id"));
        row.group = std::string(cols[1]);
        row.sih = parse_double(cols[2], "sih");
        row.mean_dtw = parse_double(cols[3], "mean_dtw");
        row.phase = std::string(cols[4]);
        if (row.phase != "Nomadic" && row.phase != "Flocking" && row.phase != "Stampede")
            throw DataError("profile line " + format_uint(li + 1) + ": unknown phase '" +
                            row.phase + "'");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("profile table has no rows");
    return rows;
}

} // namespace bmap
