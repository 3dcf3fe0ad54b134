#include "bmap/graph_io.hpp"

#include "bmap/errors.hpp"
#include "bmap/text.hpp"

#include <map>

namespace bmap {

namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

struct GraphmlKey {
    std::string id;
    std::string domain; // "node" or "edge"
    std::string name;
    std::string type; // "string", "double", "long"
};

std::string graphml_document(const BeliefGraph& graph, const OverlayMap* overlay) {
    bool with_layout = !graph.layout.empty();

    std::vector<GraphmlKey> keys;
    keys.push_back({"d0", "node", "label", "string"});
    keys.push_back({"d1", "node", "dwell_time", "double"});
    keys.push_back({"d2", "node", "unique_visitors", "long"});
    if (with_layout) {
        keys.push_back({"d3", "node", "x", "double"});
        keys.push_back({"d4", "node", "y", "double"});
    }
    std::size_t group_key_base = keys.size();
    if (overlay != nullptr) {
        for (const std::string& group : overlay->groups) {
            keys.push_back({"d" + format_uint(keys.size()), "node", group + "_dwell_time",
                            "double"});
            keys.push_back({"d" + format_uint(keys.size()), "node", group + "_visitors",
                            "long"});
        }
    }

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    for (const GraphmlKey& key : keys)
        out += "  <key id=\"" + key.id + "\" for=\"" + key.domain + "\" attr.name=\"" +
               xml_escape(key.name) + "\" attr.type=\"" + key.type + "\"/>\n";
    out += "  <key id=\"e0\" for=\"edge\" attr.name=\"count\" attr.type=\"long\"/>\n";
    out += "  <graph id=\"G\" edgedefault=\"undirected\">\n";

    std::map<std::string, std::size_t> node_ids;
    std::size_t next_id = 0;
    for (const auto& [label, stats] : graph.nodes) {
        node_ids[label] = next_id;
        out += "    <node id=\"n" + format_uint(next_id) + "\">\n";
        out += "      <data key=\"d0\">" + xml_escape(label) + "</data>\n";
        out += "      <data key=\"d1\">" + format_double(mean_dwell_time(graph, stats)) +
               "</data>\n";
        out += "      <data key=\"d2\">" + format_int(stats.unique_visitors) + "</data>\n";
        if (with_layout) {
            auto it = graph.layout.find(label);
            if (it == graph.layout.end())
                throw DataError("layout missing node: " + label);
            out += "      <data key=\"d3\">" + format_double(it->second[0]) + "</data>\n";
            out += "      <data key=\"d4\">" + format_double(it->second[1]) + "</data>\n";
        }
        if (overlay != nullptr) {
            auto it = overlay->channels.find(label);
            if (it == overlay->channels.end())
                throw DataError("overlay channels missing node: " + label);
            for (std::size_t g = 0; g < overlay->groups.size(); ++g) {
                const OverlayChannel& ch = it->second[g];
                double dwell = ch.visitors > 0 ? static_cast<double>(ch.dwell_samples) /
                                                     static_cast<double>(ch.visitors) *
                                                     graph.sample_dt
                                               : 0.0;
                out += "      <data key=\"d" + format_uint(group_key_base + 2 * g) + "\">" +
                       format_double(dwell) + "</data>\n";
                out += "      <data key=\"d" + format_uint(group_key_base + 2 * g + 1) +
                       "\">" + format_int(ch.visitors) + "</data>\n";
            }
        }
        out += "    </node>\n";
        ++next_id;
    }

    std::size_t edge_id = 0;
    for (const auto& [key, count] : graph.edges) {
        auto a = node_ids.find(key.first);
        auto b = node_ids.find(key.second);
        if (a == node_ids.end() || b == node_ids.end())
            throw DataError("edge endpoint missing from nodes: " + key.first + " -- " +
                            key.second);
        out += "    <edge id=\"e" + format_uint(edge_id) + "\" source=\"n" +
               format_uint(a->second) + "\" target=\"n" + format_uint(b->second) + "\">\n";
        out += "      <data key=\"e0\">" + format_int(count) + "</data>\n";
        out += "    </edge>\n";
        ++edge_id;
    }

    out += "  </graph>\n";
    out += "</graphml>\n";
    return out;
}

} // namespace

std::string to_graphml(const BeliefGraph& graph) {
    return graphml_document(graph, nullptr);
}

std::string to_graphml(const OverlayMap& overlay) {
    return graphml_document(overlay.base, &overlay);
}

namespace {

constexpr std::string_view kGraphTag = "#beliefmap-graph v1";
constexpr std::string_view kOverlayTag = "#beliefmap-overlay v1";

void append_node_line(std::string& out, const std::string& label, const NodeStats& stats,
                      const BeliefGraph& graph, bool with_layout) {
    out += "node\t" + label + '\t' + format_int(stats.dwell_samples) + '\t' +
           format_int(stats.unique_visitors);
    if (with_layout) {
        auto it = graph.layout.find(label);
        if (it == graph.layout.end()) throw DataError("layout missing node: " + label);
        out += '\t' + format_double(it->second[0]) + '\t' + format_double(it->second[1]);
    }
}

void append_edges(std::string& out, const BeliefGraph& graph) {
    for (const auto& [key, count] : graph.edges)
        out += "edge\t" + key.first + '\t' + key.second + '\t' + format_int(count) + '\n';
}

} // namespace

std::string to_graph_text(const BeliefGraph& graph) {
    bool with_layout = !graph.layout.empty();
    std::string out(kGraphTag);
    out += " sample_dt=" + format_double(graph.sample_dt);
    out += " layout=";
    out += with_layout ? '1' : '0';
    out += '\n';
    for (const auto& [label, stats] : graph.nodes) {
        append_node_line(out, label, stats, graph, with_layout);
        out += '\n';
    }
    append_edges(out, graph);
    return out;
}

namespace {

struct HeaderFields {
    std::map<std::string, std::string> fields;
};

HeaderFields parse_header_fields(std::string_view line, std::string_view tag) {
    HeaderFields h;
    for (std::string_view field : split(line.substr(tag.size()), ' ')) {
        field = trim(field);
        if (field.empty()) continue;
        std::size_t eq = field.find('=');
        if (eq == std::string_view::npos)
            throw DataError("malformed header field: '" + std::string(field) + "'");
        auto [it, inserted] = h.fields.emplace(field.substr(0, eq), field.substr(eq + 1));
        if (!inserted) throw DataError("duplicate header field: " + it->first);
    }
    return h;
}

const std::string& require_field(const HeaderFields& h, const std::string& name) {
    auto it = h.fields.find(name);
    if (it == h.fields.end()) throw DataError("header missing field: " + name);
    return it->second;
}

} // namespace

BeliefGraph parse_graph_text(std::string_view text) {
    auto lines = split(text, '\n');
    if (lines.empty() || !starts_with(lines[0], kGraphTag))
        throw DataError("not a graph file: missing '" + std::string(kGraphTag) + "' header");
    HeaderFields header = parse_header_fields(lines[0], kGraphTag);

    BeliefGraph graph;
    graph.sample_dt = parse_double(require_field(header, "sample_dt"), "sample_dt");
    bool with_layout = require_field(header, "layout") == "1";

    std::size_t node_cols = with_layout ? 6u : 4u;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::string_view line = lines[li];
        if (trim(line).empty()) continue;
        auto cols = split(line, '\t');
        if (cols[0] == "node") {
            if (cols.size() != node_cols)
                throw DataError("graph line " + format_uint(li + 1) + ": expected " +
                                format_uint(node_cols) + " columns");
            std::string label(cols[1]);
            if (graph.nodes.count(label))
                throw DataError("graph line " + format_uint(li + 1) + ": duplicate node '" +
                                label + "'");
            NodeStats stats;
            stats.dwell_samples = parse_int(cols[2], "dwell_samples");
            stats.unique_visitors = parse_int(cols[3], "unique_visitors");
            graph.nodes[label] = stats;
            if (with_layout)
                graph.layout[label] = {parse_double(cols[4], "x"), parse_double(cols[5], "y")};
        } else if (cols[0] == "edge") {
            if (cols.size() != 4)
                throw DataError("graph line " + format_uint(li + 1) + ": expected 4 columns");
            EdgeKey key{std::string(cols[1]), std::string(cols[2])};
            if (key.second < key.first) std::swap(key.first, key.second);
            if (!graph.nodes.count(key.first) || !graph.nodes.count(key.second))
                throw DataError("graph line " + format_uint(li + 1) +
                                ": edge endpoint not declared before edges");
            graph.edges[key] += parse_int(cols[3], "count");
        } else {
            throw DataError("graph line " + format_uint(li + 1) + ": unknown record '" +
                            std::string(cols[0]) + "'");
        }
    }
    if (graph.nodes.empty()) throw DataError("graph file has no nodes");
    return graph;
}

std::string to_overlay_text(const OverlayMap& overlay) {
    std::string out(kOverlayTag);
    out += " sample_dt=" + format_double(overlay.base.sample_dt);
    out += " groups=";
    for (std::size_t g = 0; g < overlay.groups.size(); ++g) {
        if (g > 0) out += ',';
        out += overlay.groups[g];
    }
    out += '\n';
    for (std::size_t g = 0; g < overlay.groups.size(); ++g)
        out += "unmapped\t" + overlay.groups[g] + '\t' +
               format_int(overlay.unmapped_dwell[g]) + '\n';
    for (const auto& [label, stats] : overlay.base.nodes) {
        append_node_line(out, label, stats, overlay.base, true);
        auto it = overlay.channels.find(label);
        if (it == overlay.channels.end())
            throw DataError("overlay channels missing node: " + label);
        for (const OverlayChannel& ch : it->second)
            out += '\t' + format_int(ch.dwell_samples) + '\t' + format_int(ch.visitors);
        out += '\n';
    }
    append_edges(out, overlay.base);
    return out;
}

OverlayMap parse_overlay_text(std::string_view text) {
    auto lines = split(text, '\n');
    if (lines.empty() || !starts_with(lines[0], kOverlayTag))
        throw DataError("not an overlay file: missing '" + std::string(kOverlayTag) +
                        "' header");
    HeaderFields header = parse_header_fields(lines[0], kOverlayTag);

    OverlayMap overlay;
    overlay.base.sample_dt = parse_double(require_field(header, "sample_dt"), "sample_dt");
    const std::string& groups_value = require_field(header, "groups");
    if (!groups_value.empty())
        for (std::string_view g : split(groups_value, ','))
            overlay.groups.push_back(std::string(g));
    overlay.unmapped_dwell.assign(overlay.groups.size(), 0);

    std::size_t node_cols = 6 + 2 * overlay.groups.size();
    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::string_view line = lines[li];
        if (trim(line).empty()) continue;
        auto cols = split(line, '\t');
        if (cols[0] == "unmapped") {
            if (cols.size() != 3)
                throw DataError("overlay line " + format_uint(li + 1) + ": expected 3 columns");
            bool found = false;
            for (std::size_t g = 0; g < overlay.groups.size(); ++g)
                if (overlay.groups[g] == cols[1]) {
                    overlay.unmapped_dwell[g] = parse_int(cols[2], "unmapped");
                    found = true;
                }
            if (!found)
                throw DataError("overlay line " + format_uint(li + 1) + ": unknown group '" +
                                std::string(cols[1]) + "'");
        } else if (cols[0] == "node") {
            if (cols.size() != node_cols)
                throw DataError("overlay line " + format_uint(li + 1) + ": expected " +
                                format_uint(node_cols) + " columns");
            std::string label(cols[1]);
            if (overlay.base.nodes.count(label))
                throw DataError("overlay line " + format_uint(li + 1) +
                                ": duplicate node '" + label + "'");
            NodeStats stats;
            stats.dwell_samples = parse_int(cols[2], "dwell_samples");
            stats.unique_visitors = parse_int(cols[3], "unique_visitors");
            overlay.base.nodes[label] = stats;
            overlay.base.layout[label] = {parse_double(cols[4], "x"),
                                          parse_double(cols[5], "y")};
            auto& channels = overlay.channels[label];
            channels.resize(overlay.groups.size());
            for (std::size_t g = 0; g < overlay.groups.size(); ++g) {
                channels[g].dwell_samples = parse_int(cols[6 + 2 * g], "channel dwell");
                channels[g].visitors = parse_int(cols[7 + 2 * g], "channel visitors");
            }
        } else if (cols[0] == "edge") {
            if (cols.size() != 4)
                throw DataError("overlay line " + format_uint(li + 1) + ": expected 4 columns");
            EdgeKey key{std::string(cols[1]), std::string(cols[2])};
            if (key.second < key.first) std::swap(key.first, key.second);
            overlay.base.edges[key] += parse_int(cols[3], "count");
        } else {
            throw DataError("overlay line " + format_uint(li + 1) + ": unknown record '" +
                            std::string(cols[0]) + "'");
        }
    }
    if (overlay.base.nodes.empty()) throw DataError("overlay file has no nodes");
    return overlay;
}

} // namespace bmap
