// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scinet/graph.hpp"

namespace scinet {

struct PruneSpec {
    std::size_t top_k_edges = 5000;
    std::size_t per_node_cap = 12;
};

/// Two-phase pruning: keep the top_k_edges heaviest edges (ties broken
/// by canonical edge order), then cap every node's incident edges; an
/// edge survives when at least one endpoint retains it. Isolated nodes
/// are dropped.
WeightedDigraph prune(const WeightedDigraph& g, const PruneSpec& spec);

/// Induced subgraph of the largest weakly connected component; ties go
/// to the component holding the smallest journal id. Throws
/// EmptyGraphError on an empty graph.
WeightedDigraph largest_connected_component(const WeightedDigraph& g);

struct Layout {
    std::vector<std::string> journals;                // graph node order
    std::vector<std::pair<double, double>> positions; // inside the frame
    std::vector<double> radii;                        // ln(connection count)
    std::uint64_t seed = 0;
    std::size_t iterations = 0;
    double frame = 1.0; // side length of the square frame
};

struct FrOptions {
    std::size_t iterations = 500;
    double area = 1.0;
};

/// Seeded force-directed placement: k^2/d repulsion between all pairs,
/// d^2/k attraction along edges, displacement capped by a linearly
/// cooling temperature, positions clamped to the frame. Deterministic
/// for a fixed seed and iteration count.
Layout fr_layout(const WeightedDigraph& g, std::uint64_t seed, const FrOptions& opts = {});

struct GraphParams {
    std::size_t edge_count = 0;
    double max_weight = 0.0;
    double min_positive_weight = 0.0;
    double density = 0.0;
    std::optional<double> centralization; // absent when n < 3
    double hierarchy = 0.0;
};

/// Density, Freeman degree centralization, and the fraction of ordered
/// reachable pairs that are one-way (0 for undirected graphs).
GraphParams graph_params(const WeightedDigraph& g);

struct MapStyle {
    double width = 1000.0;
    double min_radius = 1.5;   // render floor for ln(degree)
    double radius_scale = 4.0;
    double stroke_scale = 1.0;
    std::size_t label_top = 25; // most connected nodes that get labels
};

/// SVG document: one circle per node (radius from ln(degree), floored),
/// one line per edge (stroke from ln(weight)), labels on the top-m
/// degree nodes only.
std::string export_map_svg(const Layout& layout, const WeightedDigraph& g,
                           const MapStyle& style = {});

} // namespace scinet
