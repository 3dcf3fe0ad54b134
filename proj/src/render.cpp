#include "bmap/render.hpp"

#include "bmap/errors.hpp"
#include "bmap/svg.hpp"
#include "bmap/text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace bmap {

namespace {

constexpr double kCanvas = 800;

const char* const kPalette[] = {"#4682b4", "#b22222", "#daa520",
                                "#2e8b57", "#9370db", "#cd5c5c"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

// Maps values onto [0,1]; a constant series maps to 1 so singleton maxima
// still render at full strength.
struct MinMax {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void feed(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double at(double v) const {
        if (!(hi > lo)) return 1.0;
        return (v - lo) / (hi - lo);
    }
};

} // namespace

std::string render_heatmap(const TrajectoryFile& file, int step) {
    if (file.meta.space.dims != 2)
        throw DataError("heatmap rendering requires dims=2, got dims=" +
                        format_int(file.meta.space.dims));
    int cells = file.meta.space.cells_per_axis;
    double he = file.meta.space.half_extent;

    std::map<std::pair<int, int>, int> counts;
    std::vector<const TrajectorySample*> at_step;
    for (const Trajectory& traj : file.trajectories) {
        auto it = std::lower_bound(traj.samples.begin(), traj.samples.end(), step,
                                   [](const TrajectorySample& s, int v) { return s.step < v; });
        if (it == traj.samples.end() || it->step != step)
            throw DataError("step " + format_int(step) + " is not recorded for agent " +
                            format_int(traj.agent_id));
        at_step.push_back(&*it);
    }

    double margin = 20;
    double size = kCanvas - 2 * margin;
    double cell_px = size / cells;
    auto px = [&](double x) { return margin + (x + he) / (2 * he) * size; };
    auto py = [&](double y) { return margin + (he - y) / (2 * he) * size; };

    for (const TrajectorySample* s : at_step) {
        int cx = std::min(cells - 1, static_cast<int>((s->position[0] + he) / (2 * he) * cells));
        int cy = std::min(cells - 1, static_cast<int>((s->position[1] + he) / (2 * he) * cells));
        counts[{cx, cy}] += 1;
    }
    int max_count = 1;
    for (const auto& [cell, count] : counts) max_count = std::max(max_count, count);

    SvgWriter svg(kCanvas, kCanvas);
    svg.rect(0, 0, kCanvas, kCanvas, "#ffffff");
    for (const auto& [cell, count] : counts) {
        double opacity = 0.15 + 0.85 * static_cast<double>(count) / max_count;
        svg.rect(margin + cell.first * cell_px,
                 margin + size - (cell.second + 1) * cell_px, cell_px, cell_px, "#4682b4",
                 opacity);
    }
    for (int i = 0; i <= cells; ++i) {
        double offset = margin + i * cell_px;
        svg.line(margin, offset, margin + size, offset, "#d0d0d0", 1);
        svg.line(offset, margin, offset, margin + size, "#d0d0d0", 1);
    }
    for (const TrajectorySample* s : at_step)
        svg.circle(px(s->position[0]), py(s->position[1]), 3, "#b22222");
    svg.text(margin, 14, 12, "#333333", "start", "step " + format_int(step));
    return svg.finish();
}

namespace {

struct Frame {
    MinMax x, y;
    double lo_px, hi_px;
    double map_x(double v) const { return lo_px + x.at(v) * (hi_px - lo_px); }
    double map_y(double v) const { return lo_px + (1.0 - y.at(v)) * (hi_px - lo_px); }
};

Frame layout_frame(const BeliefGraph& graph) {
    Frame frame;
    frame.lo_px = 40;
    frame.hi_px = kCanvas - 40;
    for (const auto& [label, p] : graph.layout) {
        frame.x.feed(p[0]);
        frame.y.feed(p[1]);
    }
    return frame;
}

std::array<double, 2> node_px(const Frame& frame, const std::array<double, 2>& p) {
    double cx = frame.x.hi > frame.x.lo ? frame.map_x(p[0]) : kCanvas / 2;
    double cy = frame.y.hi > frame.y.lo ? frame.map_y(p[1]) : kCanvas / 2;
    return {cx, cy};
}

} // namespace

std::string render_graph(const BeliefGraph& graph) {
    if (graph.layout.empty())
        throw DataError("graph rendering requires a layout; run the map command first");

    Frame frame = layout_frame(graph);
    MinMax dwell, visitors;
    for (const auto& [label, stats] : graph.nodes) {
        dwell.feed(mean_dwell_time(graph, stats));
        visitors.feed(static_cast<double>(stats.unique_visitors));
    }
    std::int64_t max_edge = 1;
    for (const auto& [key, count] : graph.edges) max_edge = std::max(max_edge, count);

    SvgWriter svg(kCanvas, kCanvas);
    svg.rect(0, 0, kCanvas, kCanvas, "#ffffff");
    for (const auto& [key, count] : graph.edges) {
        auto a = graph.layout.find(key.first);
        auto b = graph.layout.find(key.second);
        if (a == graph.layout.end() || b == graph.layout.end())
            throw DataError("layout missing edge endpoint: " + key.first + " -- " + key.second);
        auto pa = node_px(frame, a->second);
        auto pb = node_px(frame, b->second);
        double width = 0.5 + 2.5 * static_cast<double>(count) / static_cast<double>(max_edge);
        svg.line(pa[0], pa[1], pb[0], pb[1], "#999999", width, 0.6);
    }
    for (const auto& [label, stats] : graph.nodes) {
        auto p = node_px(frame, graph.layout.at(label));
        double r = 3 + 12 * std::sqrt(dwell.at(mean_dwell_time(graph, stats)));
        double opacity = 0.25 + 0.75 * visitors.at(static_cast<double>(stats.unique_visitors));
        svg.circle(p[0], p[1], r, "#4682b4", opacity);
    }
    return svg.finish();
}

std::string render_overlay(const OverlayMap& overlay) {
    const BeliefGraph& base = overlay.base;
    if (base.layout.empty())
        throw DataError("overlay rendering requires a laid-out base graph");

    Frame frame = layout_frame(base);
    MinMax dwell, visitors;
    for (const auto& [label, stats] : base.nodes) {
        dwell.feed(mean_dwell_time(base, stats));
        visitors.feed(static_cast<double>(stats.unique_visitors));
    }

    // Per-group scales so one dominant group cannot flatten the others.
    std::vector<MinMax> group_dwell(overlay.groups.size());
    std::vector<MinMax> group_visitors(overlay.groups.size());
    for (const auto& [label, channels] : overlay.channels)
        for (std::size_t g = 0; g < channels.size(); ++g)
            if (channels[g].dwell_samples > 0) {
                group_dwell[g].feed(static_cast<double>(channels[g].dwell_samples));
                group_visitors[g].feed(static_cast<double>(channels[g].visitors));
            }

    SvgWriter svg(kCanvas, kCanvas);
    svg.rect(0, 0, kCanvas, kCanvas, "#14141e");
    for (const auto& [key, count] : base.edges) {
        auto a = base.layout.find(key.first);
        auto b = base.layout.find(key.second);
        if (a == base.layout.end() || b == base.layout.end())
            throw DataError("layout missing edge endpoint: " + key.first + " -- " + key.second);
        auto pa = node_px(frame, a->second);
        auto pb = node_px(frame, b->second);
        svg.line(pa[0], pa[1], pb[0], pb[1], "#888888", 0.8, 0.25);
    }
    for (const auto& [label, stats] : base.nodes) {
        auto p = node_px(frame, base.layout.at(label));
        double r = 2 + 10 * std::sqrt(dwell.at(mean_dwell_time(base, stats)));
        double opacity = 0.2 + 0.8 * visitors.at(static_cast<double>(stats.unique_visitors));
        svg.circle(p[0], p[1], r, "#ffffff", opacity);
    }
    for (std::size_t g = 0; g < overlay.groups.size(); ++g) {
        const char* color = kPalette[g % kPaletteSize];
        for (const auto& [label, channels] : overlay.channels) {
            const OverlayChannel& ch = channels[g];
            if (ch.dwell_samples <= 0) continue;
            auto p = node_px(frame, base.layout.at(label));
            double r = 1.5 + 9 * std::sqrt(group_dwell[g].at(
                                 static_cast<double>(ch.dwell_samples)));
            double opacity =
                0.3 + 0.7 * group_visitors[g].at(static_cast<double>(ch.visitors));
            svg.circle(p[0], p[1], r, color, opacity);
        }
    }

    double ly = 24;
    svg.circle(24, ly - 4, 5, "#ffffff");
    svg.text(36, ly, 14, "#e8e8e8", "start", "base");
    for (std::size_t g = 0; g < overlay.groups.size(); ++g) {
        ly += 20;
        svg.circle(24, ly - 4, 5, kPalette[g % kPaletteSize]);
        svg.text(36, ly, 14, "#e8e8e8", "start", overlay.groups[g]);
    }
    return svg.finish();
}

std::string render_phases(std::span<const ProfileRow> rows) {
    if (rows.empty()) throw DataError("phase rendering needs at least one profile row");

    constexpr double kWidth = 800, kHeight = 500;
    constexpr double kLeft = 70, kRight = 780, kTop = 40, kBottom = 440;

    double max_mean = 0;
    for (const ProfileRow& row : rows) max_mean = std::max(max_mean, row.mean_dtw);
    if (max_mean <= 0) max_mean = 1;
    double y_span = max_mean * 1.05;

    auto px = [&](std::size_t i) {
        if (rows.size() == 1) return (kLeft + kRight) / 2;
        return kLeft + static_cast<double>(i) / static_cast<double>(rows.size() - 1) *
                           (kRight - kLeft);
    };
    auto py = [&](double v) { return kBottom - v / y_span * (kBottom - kTop); };

    auto phase_color = [](std::string_view phase) {
        if (phase == "Nomadic") return "#2e8b57";
        if (phase == "Flocking") return "#4682b4";
        return "#b22222";
    };

    SvgWriter svg(kWidth, kHeight);
    svg.rect(0, 0, kWidth, kHeight, "#ffffff");
    svg.line(kLeft, kTop, kLeft, kBottom, "#333333", 1);
    svg.line(kLeft, kBottom, kRight, kBottom, "#333333", 1);
    for (int tick = 0; tick <= 4; ++tick) {
        double v = y_span * tick / 4;
        svg.line(kLeft - 4, py(v), kLeft, py(v), "#333333", 1);
        svg.text(kLeft - 8, py(v) + 4, 11, "#333333", "end", SvgWriter::fixed(v));
    }
    svg.text(kLeft, kTop - 14, 13, "#333333", "start", "mean DTW per agent");

    // Group spans along the x axis, in row order.
    std::size_t span_start = 0;
    for (std::size_t i = 1; i <= rows.size(); ++i) {
        if (i < rows.size() && rows[i].group == rows[span_start].group) continue;
        double x0 = px(span_start), x1 = px(i - 1);
        svg.text((x0 + x1) / 2, kBottom + 24, 12, "#333333", "middle",
                 rows[span_start].group);
        if (i < rows.size()) {
            double xb = (px(i - 1) + px(i)) / 2;
            svg.line(xb, kTop, xb, kBottom, "#cccccc", 1);
        }
        span_start = i;
    }

    for (std::size_t i = 0; i < rows.size(); ++i)
        svg.circle(px(i), py(rows[i].mean_dtw), 4, phase_color(rows[i].phase), 0.85);

    double lx = kRight - 150, ly = kTop + 8;
    for (std::string_view phase : {"Nomadic", "Flocking", "Stampede"}) {
        svg.circle(lx, ly - 4, 5, phase_color(phase));
        svg.text(lx + 12, ly, 12, "#333333", "start", phase);
        ly += 18;
    }
    return svg.finish();
}

} // namespace bmap
