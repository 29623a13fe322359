// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scinet/util.hpp"

namespace scinet {

struct Arc {
    std::uint32_t to;
    double weight;
};

struct Edge {
    std::uint32_t src;
    std::uint32_t dst;
    double weight;
};

/// Journal-level network in canonical form: node ids sorted
/// lexicographically, edge list sorted by (src, dst), CSR adjacency.
/// Undirected graphs store each unordered pair once with src < dst and
/// expose it from both endpoints. Immutable; build via GraphBuilder.
class WeightedDigraph {
public:
    WeightedDigraph() = default;

    bool directed() const { return directed_; }
    std::size_t node_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<std::string>& node_ids() const { return ids_; }
    const std::string& id_of(std::uint32_t v) const { return ids_[v]; }
    std::optional<std::uint32_t> index_of(std::string_view id) const;

    /// Outgoing arcs; for undirected graphs, all incident arcs.
    std::span<const Arc> out(std::uint32_t v) const;
    /// Incoming arcs; for undirected graphs, all incident arcs.
    std::span<const Arc> in(std::uint32_t v) const;

    const std::vector<Edge>& edges() const { return edges_; }

    /// Edge weight looked up by id, 0 when absent. Undirected graphs
    /// answer for either orientation.
    double weight(std::string_view a, std::string_view b) const;

    double total_weight() const;

    /// Undirected copy: antiparallel directed arcs merge by weight sum.
    WeightedDigraph undirected_view() const;

    bool operator==(const WeightedDigraph& o) const;

private:
    friend class GraphBuilder;

    bool directed_ = false;
    std::vector<std::string> ids_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> out_offsets_;
    std::vector<Arc> out_arcs_;
    std::vector<std::uint32_t> in_offsets_;
    std::vector<Arc> in_arcs_;
};

/// Accumulating builder: repeated add_edge on the same pair sums the
/// weights. Self loops and non-positive weights are rejected.
class GraphBuilder {
public:
    explicit GraphBuilder(bool directed) : directed_(directed) {}

    std::uint32_t add_node(const std::string& id);
    void add_edge(const std::string& a, const std::string& b, double weight);

    WeightedDigraph build() const;

private:
    bool directed_;
    std::vector<std::string> ids_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::unordered_map<std::uint64_t, double> weights_;
};

struct ComponentSet {
    std::vector<std::uint32_t> comp; // node -> component index
    std::vector<std::uint32_t> sizes;
    std::uint32_t count = 0;
};

/// Components under weak connectivity (direction ignored).
ComponentSet weak_components(const WeightedDigraph& g);

/// Strongly connected components (weak components for undirected graphs).
ComponentSet strong_components(const WeightedDigraph& g);

/// Size of the largest weak component; 0 for an empty graph.
std::size_t largest_weak_component_size(const WeightedDigraph& g);

} // namespace scinet
