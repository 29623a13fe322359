// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/graph.hpp"

#include <algorithm>
#include <numeric>

namespace scinet {

std::optional<std::uint32_t> WeightedDigraph::index_of(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::span<const Arc> WeightedDigraph::out(std::uint32_t v) const {
    return {out_arcs_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const Arc> WeightedDigraph::in(std::uint32_t v) const {
    if (!directed_) return out(v);
    return {in_arcs_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

double WeightedDigraph::weight(std::string_view a, std::string_view b) const {
    const auto ia = index_of(a);
    const auto ib = index_of(b);
    if (!ia || !ib) return 0.0;
    std::uint32_t s = *ia, d = *ib;
    if (!directed_ && s > d) std::swap(s, d);
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{s, d},
                                     [](const Edge& e, const std::pair<std::uint32_t, std::uint32_t>& k) {
                                         return std::pair{e.src, e.dst} < k;
                                     });
    if (it != edges_.end() && it->src == s && it->dst == d) return it->weight;
    return 0.0;
}

double WeightedDigraph::total_weight() const {
    double sum = 0.0;
    for (const auto& e : edges_) sum += e.weight;
    return sum;
}

WeightedDigraph WeightedDigraph::undirected_view() const {
    if (!directed_) return *this;
    GraphBuilder b(false);
    for (const auto& id : ids_) b.add_node(id);
    for (const auto& e : edges_) b.add_edge(ids_[e.src], ids_[e.dst], e.weight);
    return b.build();
}

bool WeightedDigraph::operator==(const WeightedDigraph& o) const {
    if (directed_ != o.directed_ || ids_ != o.ids_ || edges_.size() != o.edges_.size())
        return false;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].src != o.edges_[i].src || edges_[i].dst != o.edges_[i].dst ||
            edges_[i].weight != o.edges_[i].weight)
            return false;
    }
    return true;
}

std::uint32_t GraphBuilder::add_node(const std::string& id) {
    const auto it = index_.find(id);
    if (it != index_.end()) return it->second;
    const auto idx = static_cast<std::uint32_t>(ids_.size());
    ids_.push_back(id);
    index_.emplace(id, idx);
    return idx;
}

void GraphBuilder::add_edge(const std::string& a, const std::string& b, double weight) {
    if (a == b) throw std::invalid_argument("self-loop rejected: " + a);
    if (!(weight > 0.0)) throw std::invalid_argument("edge weight must be positive");
    std::uint32_t s = add_node(a);
    std::uint32_t d = add_node(b);
    if (!directed_ && s > d) std::swap(s, d);
    weights_[(std::uint64_t(s) << 32) | d] += weight;
}

WeightedDigraph GraphBuilder::build() const {
    WeightedDigraph g;
    g.directed_ = directed_;
    g.ids_ = ids_;
    std::sort(g.ids_.begin(), g.ids_.end());
    g.index_.reserve(g.ids_.size());
    for (std::uint32_t i = 0; i < g.ids_.size(); ++i) g.index_.emplace(g.ids_[i], i);
    std::vector<std::uint32_t> remap(ids_.size());
    for (std::uint32_t old = 0; old < ids_.size(); ++old) remap[old] = g.index_.at(ids_[old]);

    g.edges_.reserve(weights_.size());
    for (const auto& [key, w] : weights_) {
        std::uint32_t s = remap[static_cast<std::uint32_t>(key >> 32)];
        std::uint32_t d = remap[static_cast<std::uint32_t>(key & 0xFFFFFFFFu)];
        if (!directed_ && s > d) std::swap(s, d);
        g.edges_.push_back({s, d, w});
    }
    std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
        return std::pair{a.src, a.dst} < std::pair{b.src, b.dst};
    });

    const std::size_t n = g.ids_.size();
    std::vector<std::uint32_t> out_deg(n, 0), in_deg(n, 0);
    for (const auto& e : g.edges_) {
        ++out_deg[e.src];
        if (directed_) ++in_deg[e.dst];
        else ++out_deg[e.dst];
    }
    g.out_offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.out_offsets_[v + 1] = g.out_offsets_[v] + out_deg[v];
    g.out_arcs_.resize(g.out_offsets_[n]);
    std::vector<std::uint32_t> cursor(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
    for (const auto& e : g.edges_) {
        g.out_arcs_[cursor[e.src]++] = {e.dst, e.weight};
        if (!directed_) g.out_arcs_[cursor[e.dst]++] = {e.src, e.weight};
    }
    if (directed_) {
        g.in_offsets_.assign(n + 1, 0);
        for (std::size_t v = 0; v < n; ++v) g.in_offsets_[v + 1] = g.in_offsets_[v] + in_deg[v];
        g.in_arcs_.resize(g.in_offsets_[n]);
        std::vector<std::uint32_t> icursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
        for (const auto& e : g.edges_) g.in_arcs_[icursor[e.dst]++] = {e.src, e.weight};
    }
    return g;
}

ComponentSet weak_components(const WeightedDigraph& g) {
    const std::size_t n = g.node_count();
    ComponentSet cs;
    cs.comp.assign(n, UINT32_MAX);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t start = 0; start < n; ++start) {
        if (cs.comp[start] != UINT32_MAX) continue;
        const std::uint32_t c = cs.count++;
        cs.sizes.push_back(0);
        stack.push_back(start);
        cs.comp[start] = c;
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            ++cs.sizes[c];
            for (const auto& a : g.out(v)) {
                if (cs.comp[a.to] == UINT32_MAX) {
                    cs.comp[a.to] = c;
                    stack.push_back(a.to);
                }
            }
            if (g.directed()) {
                for (const auto& a : g.in(v)) {
                    if (cs.comp[a.to] == UINT32_MAX) {
                        cs.comp[a.to] = c;
                        stack.push_back(a.to);
                    }
                }
            }
        }
    }
    return cs;
}

ComponentSet strong_components(const WeightedDigraph& g) {
    if (!g.directed()) return weak_components(g);
    // Iterative Tarjan.
    const std::size_t n = g.node_count();
    ComponentSet cs;
    cs.comp.assign(n, UINT32_MAX);
    std::vector<std::uint32_t> idx(n, UINT32_MAX), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::uint32_t next_index = 0;

    struct Frame {
        std::uint32_t v;
        std::size_t arc;
    };
    std::vector<Frame> frames;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (idx[root] != UINT32_MAX) continue;
        frames.push_back({root, 0});
        idx[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& fr = frames.back();
            const auto arcs = g.out(fr.v);
            if (fr.arc < arcs.size()) {
                const std::uint32_t w = arcs[fr.arc++].to;
                if (idx[w] == UINT32_MAX) {
                    idx[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], idx[w]);
                }
            } else {
                const std::uint32_t v = fr.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == idx[v]) {
                    const std::uint32_t c = cs.count++;
                    cs.sizes.push_back(0);
                    for (;;) {
                        const std::uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        cs.comp[w] = c;
                        ++cs.sizes[c];
                        if (w == v) break;
                    }
                }
            }
        }
    }
    return cs;
}

std::size_t largest_weak_component_size(const WeightedDigraph& g) {
    if (g.node_count() == 0) return 0;
    const auto cs = weak_components(g);
    return *std::max_element(cs.sizes.begin(), cs.sizes.end());
}

} // namespace scinet
