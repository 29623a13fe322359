// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/scimap.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "scinet/graph_io.hpp"

namespace scinet {

namespace {

// Heavier first; canonical (src, dst) order breaks ties.
bool edge_order(const Edge& a, const Edge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return std::pair{a.src, a.dst} < std::pair{b.src, b.dst};
}

} // namespace

WeightedDigraph prune(const WeightedDigraph& g, const PruneSpec& spec) {
    if (g.node_count() == 0) throw EmptyGraphError("prune on an empty graph");
    std::vector<Edge> edges = g.edges();
    std::sort(edges.begin(), edges.end(), edge_order);
    if (edges.size() > spec.top_k_edges) edges.resize(spec.top_k_edges);

    // Rank retained edges at each endpoint, in the same order.
    std::vector<std::vector<std::uint32_t>> incident(g.node_count());
    for (std::uint32_t e = 0; e < edges.size(); ++e) {
        incident[edges[e].src].push_back(e);
        incident[edges[e].dst].push_back(e);
    }
    std::vector<bool> survives(edges.size(), false);
    for (const auto& list : incident) {
        const std::size_t keep = std::min(list.size(), spec.per_node_cap);
        for (std::size_t i = 0; i < keep; ++i) survives[list[i]] = true;
    }

    GraphBuilder b(g.directed());
    for (std::uint32_t e = 0; e < edges.size(); ++e) {
        if (!survives[e]) continue;
        b.add_edge(g.id_of(edges[e].src), g.id_of(edges[e].dst), edges[e].weight);
    }
    return b.build();
}

WeightedDigraph largest_connected_component(const WeightedDigraph& g) {
    if (g.node_count() == 0) throw EmptyGraphError("LCC of an empty graph");
    const auto cs = weak_components(g);
    // Largest size; ties resolved toward the smallest member id, which is
    // the component discovered first given sorted node ids.
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < cs.count; ++c)
        if (cs.sizes[c] > cs.sizes[best]) best = c;

    GraphBuilder b(g.directed());
    for (std::uint32_t v = 0; v < g.node_count(); ++v)
        if (cs.comp[v] == best) b.add_node(g.id_of(v));
    for (const auto& e : g.edges())
        if (cs.comp[e.src] == best) b.add_edge(g.id_of(e.src), g.id_of(e.dst), e.weight);
    return b.build();
}

Layout fr_layout(const WeightedDigraph& g, std::uint64_t seed, const FrOptions& opts) {
    const std::size_t n = g.node_count();
    Layout layout;
    layout.seed = seed;
    layout.iterations = opts.iterations;
    layout.frame = std::sqrt(opts.area);
    layout.journals = g.node_ids();
    layout.positions.resize(n);
    layout.radii.resize(n);
    if (n == 0) return layout;

    for (std::uint32_t v = 0; v < n; ++v) {
        // Connection count, direction ignored.
        std::size_t deg = g.out(v).size();
        if (g.directed()) deg += g.in(v).size();
        layout.radii[v] = std::log(std::max<std::size_t>(deg, 1));
    }

    std::mt19937_64 rng(seed);
    auto next_unit = [&] {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    const double side = layout.frame;
    for (auto& p : layout.positions) {
        p.first = next_unit() * side;
        p.second = next_unit() * side;
    }
    if (n == 1) return layout;

    const double k = std::sqrt(opts.area / static_cast<double>(n));
    std::vector<std::pair<double, double>> disp(n);
    const double t0 = 0.1 * side;

    for (std::size_t iter = 0; iter < opts.iterations; ++iter) {
        const double t =
            t0 * (1.0 - static_cast<double>(iter) / static_cast<double>(opts.iterations));
        const auto& pos = layout.positions;
        run_chunked(n, 64, default_workers(), [&](std::size_t, std::size_t lo, std::size_t hi) {
            for (std::size_t v = lo; v < hi; ++v) {
                double dx = 0.0, dy = 0.0;
                for (std::size_t u = 0; u < n; ++u) {
                    if (u == v) continue;
                    double ex = pos[v].first - pos[u].first;
                    double ey = pos[v].second - pos[u].second;
                    double d2 = ex * ex + ey * ey;
                    if (d2 < 1e-16) { // coincident points: deterministic nudge
                        ex = (v > u ? 1.0 : -1.0) * 1e-6;
                        ey = (v > u ? -1.0 : 1.0) * 1e-6;
                        d2 = ex * ex + ey * ey;
                    }
                    const double rep = k * k / d2; // k^2/d along the unit vector
                    dx += ex * rep;
                    dy += ey * rep;
                }
                // Attraction d^2/k along edges, scaled by connection
                // strength so heavily co-used journals sit closer.
                for (const auto& a : g.out(static_cast<std::uint32_t>(v))) {
                    const double ex = pos[a.to].first - pos[v].first;
                    const double ey = pos[a.to].second - pos[v].second;
                    const double d = std::sqrt(std::max(ex * ex + ey * ey, 1e-16));
                    const double att = a.weight * d / k;
                    dx += ex * att;
                    dy += ey * att;
                }
                if (g.directed()) {
                    for (const auto& a : g.in(static_cast<std::uint32_t>(v))) {
                        const double ex = pos[a.to].first - pos[v].first;
                        const double ey = pos[a.to].second - pos[v].second;
                        const double d = std::sqrt(std::max(ex * ex + ey * ey, 1e-16));
                        const double att = a.weight * d / k;
                        dx += ex * att;
                        dy += ey * att;
                    }
                }
                disp[v] = {dx, dy};
            }
        });
        for (std::size_t v = 0; v < n; ++v) {
            const double len = std::sqrt(disp[v].first * disp[v].first +
                                         disp[v].second * disp[v].second);
            if (len > 0.0) {
                const double step = std::min(len, t);
                layout.positions[v].first += disp[v].first / len * step;
                layout.positions[v].second += disp[v].second / len * step;
            }
            layout.positions[v].first = std::clamp(layout.positions[v].first, 0.0, side);
            layout.positions[v].second = std::clamp(layout.positions[v].second, 0.0, side);
        }
    }
    return layout;
}

GraphParams graph_params(const WeightedDigraph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) throw EmptyGraphError("graph_params on an empty graph");
    GraphParams p;
    p.edge_count = g.edge_count();
    if (!g.edges().empty()) {
        p.max_weight = g.edges()[0].weight;
        p.min_positive_weight = g.edges()[0].weight;
        for (const auto& e : g.edges()) {
            p.max_weight = std::max(p.max_weight, e.weight);
            p.min_positive_weight = std::min(p.min_positive_weight, e.weight);
        }
    }
    const double nn = static_cast<double>(n);
    if (n >= 2) {
        const double pairs = g.directed() ? nn * (nn - 1.0) : nn * (nn - 1.0) / 2.0;
        p.density = static_cast<double>(p.edge_count) / pairs;
    }

    if (n >= 3) {
        // Freeman degree centralization on the undirected view.
        std::vector<std::size_t> deg(n, 0);
        for (const auto& e : g.edges()) {
            ++deg[e.src];
            ++deg[e.dst];
        }
        const std::size_t cmax = *std::max_element(deg.begin(), deg.end());
        double sum = 0.0;
        for (const std::size_t d : deg) sum += static_cast<double>(cmax - d);
        p.centralization = sum / ((nn - 1.0) * (nn - 2.0));
    }

    if (g.directed()) {
        // Reachability by BFS from every node.
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        std::vector<std::uint32_t> queue;
        for (std::uint32_t s = 0; s < n; ++s) {
            queue.clear();
            queue.push_back(s);
            reach[s][s] = true;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                for (const auto& a : g.out(queue[head])) {
                    if (!reach[s][a.to]) {
                        reach[s][a.to] = true;
                        queue.push_back(a.to);
                    }
                }
            }
        }
        std::uint64_t reachable_pairs = 0, one_way = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = 0; j < n; ++j) {
                if (i == j || !reach[i][j]) continue;
                ++reachable_pairs;
                if (!reach[j][i]) ++one_way;
            }
        }
        p.hierarchy = reachable_pairs > 0
                          ? static_cast<double>(one_way) / static_cast<double>(reachable_pairs)
                          : 0.0;
    }
    return p;
}

std::string export_map_svg(const Layout& layout, const WeightedDigraph& g,
                           const MapStyle& style) {
    const double margin = style.width * 0.05;
    const double inner = style.width - 2.0 * margin;
    const double frame = layout.frame > 0.0 ? layout.frame : 1.0;
    auto sx = [&](double x) { return margin + x / frame * inner; };
    auto sy = [&](double y) { return margin + y / frame * inner; };

    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           format_fixed(style.width, 0) + "\" height=\"" + format_fixed(style.width, 0) +
           "\" viewBox=\"0 0 " + format_fixed(style.width, 0) + " " +
           format_fixed(style.width, 0) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const auto& e : g.edges()) {
        const auto& a = layout.positions[e.src];
        const auto& b = layout.positions[e.dst];
        const double sw = std::max(0.25, style.stroke_scale * std::log(e.weight));
        svg += "<line x1=\"" + format_fixed(sx(a.first), 2) + "\" y1=\"" +
               format_fixed(sy(a.second), 2) + "\" x2=\"" + format_fixed(sx(b.first), 2) +
               "\" y2=\"" + format_fixed(sy(b.second), 2) + "\" stroke=\"#9aa5b1\" stroke-width=\"" +
               format_fixed(sw, 2) + "\" stroke-opacity=\"0.5\"/>\n";
    }

    const std::size_t n = g.node_count();
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto& p = layout.positions[v];
        const double r = std::max(style.radius_scale * layout.radii[v], style.min_radius);
        svg += "<circle cx=\"" + format_fixed(sx(p.first), 2) + "\" cy=\"" +
               format_fixed(sy(p.second), 2) + "\" r=\"" + format_fixed(r, 2) +
               "\" fill=\"#3d7ab8\" fill-opacity=\"0.85\"/>\n";
    }

    // Labels for the most connected nodes only.
    std::vector<std::uint32_t> by_degree(n);
    for (std::uint32_t v = 0; v < n; ++v) by_degree[v] = v;
    std::sort(by_degree.begin(), by_degree.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (layout.radii[a] != layout.radii[b]) return layout.radii[a] > layout.radii[b];
        return g.id_of(a) < g.id_of(b);
    });
    const std::size_t labeled = std::min<std::size_t>(style.label_top, n);
    for (std::size_t i = 0; i < labeled; ++i) {
        const std::uint32_t v = by_degree[i];
        const auto& p = layout.positions[v];
        svg += "<text x=\"" + format_fixed(sx(p.first) + 5.0, 2) + "\" y=\"" +
               format_fixed(sy(p.second) - 5.0, 2) + "\" font-size=\"11\">" +
               xml_escape(g.id_of(v)) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace scinet
