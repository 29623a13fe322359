// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>

#include <Eigen/Dense>

namespace scinet {

const char* family_abbrev(MetricFamily f) {
    switch (f) {
    case MetricFamily::InDegree: return "ID";
    case MetricFamily::OutDegree: return "OD";
    case MetricFamily::InEntropy: return "IE";
    case MetricFamily::OutEntropy: return "OE";
    case MetricFamily::Closeness: return "CL";
    case MetricFamily::Betweenness: return "BW";
    case MetricFamily::NewmanLoad: return "NM";
    case MetricFamily::PageRank: return "PR";
    case MetricFamily::ImpactFactor: return "IF";
    }
    return "??";
}

namespace {

std::optional<MetricFamily> family_from_abbrev(std::string_view s) {
    if (s == "ID") return MetricFamily::InDegree;
    if (s == "OD") return MetricFamily::OutDegree;
    if (s == "IE") return MetricFamily::InEntropy;
    if (s == "OE") return MetricFamily::OutEntropy;
    if (s == "CL") return MetricFamily::Closeness;
    if (s == "BW") return MetricFamily::Betweenness;
    if (s == "NM") return MetricFamily::NewmanLoad;
    if (s == "PR") return MetricFamily::PageRank;
    if (s == "IF") return MetricFamily::ImpactFactor;
    return std::nullopt;
}

bool takes_lcc_flag(MetricFamily f) {
    switch (f) {
    case MetricFamily::Closeness:
    case MetricFamily::Betweenness:
    case MetricFamily::NewmanLoad:
    case MetricFamily::PageRank:
        return true;
    default:
        return false;
    }
}

} // namespace

std::string MetricSpec::label() const {
    if (family == MetricFamily::ImpactFactor) return "IF";
    std::string out = network == NetworkKind::Usage ? "USES_" : "CITE_";
    out += family_abbrev(family);
    if (weighted) out += "_W";
    if (!lcc_normalized) out += "_UN";
    return out;
}

std::optional<MetricSpec> MetricSpec::parse_label(std::string_view label) {
    if (label == "IF") {
        MetricSpec s;
        s.family = MetricFamily::ImpactFactor;
        s.network = NetworkKind::Citation;
        s.lcc_normalized = false;
        return s;
    }
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= label.size()) {
        const auto pos = label.find('_', start);
        parts.push_back(label.substr(start, pos == std::string_view::npos ? label.size() - start
                                                                          : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (parts.size() < 2 || parts.size() > 4) return std::nullopt;
    MetricSpec s;
    if (parts[0] == "USES") s.network = NetworkKind::Usage;
    else if (parts[0] == "CITE") s.network = NetworkKind::Citation;
    else return std::nullopt;
    const auto fam = family_from_abbrev(parts[1]);
    if (!fam || *fam == MetricFamily::ImpactFactor) return std::nullopt;
    s.family = *fam;
    s.lcc_normalized = true;
    std::size_t next = 2;
    if (next < parts.size() && parts[next] == "W") {
        s.weighted = true;
        ++next;
    }
    if (next < parts.size() && parts[next] == "UN") {
        s.lcc_normalized = false;
        ++next;
    }
    if (next != parts.size()) return std::nullopt;
    if (!spec_valid(s)) return std::nullopt;
    return s;
}

bool spec_valid(const MetricSpec& spec) {
    if (spec.family == MetricFamily::ImpactFactor)
        return spec.network == NetworkKind::Citation && !spec.weighted && !spec.lcc_normalized;
    if (!takes_lcc_flag(spec.family) && spec.lcc_normalized) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Degree and entropy
// ---------------------------------------------------------------------------

std::vector<double> degree_scores(const WeightedDigraph& g, Direction dir, bool weighted) {
    const std::size_t n = g.node_count();
    std::vector<double> scores(n, 0.0);
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto arcs = dir == Direction::Out ? g.out(v) : g.in(v);
        if (weighted) {
            double sum = 0.0;
            for (const auto& a : arcs) sum += a.weight;
            scores[v] = sum;
        } else {
            scores[v] = static_cast<double>(arcs.size());
        }
    }
    return scores;
}

std::vector<double> entropy_scores(const WeightedDigraph& g, Direction dir, bool weighted) {
    const std::size_t n = g.node_count();
    std::vector<double> scores(n, 0.0);
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto arcs = dir == Direction::Out ? g.out(v) : g.in(v);
        if (arcs.empty()) continue;
        double total = 0.0;
        for (const auto& a : arcs) total += weighted ? a.weight : 1.0;
        double h = 0.0;
        for (const auto& a : arcs) {
            const double p = (weighted ? a.weight : 1.0) / total;
            h -= p * std::log(p);
        }
        scores[v] = h;
    }
    return scores;
}

// ---------------------------------------------------------------------------
// Shortest-path machinery
// ---------------------------------------------------------------------------

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kChunks = 64;

// Single-source distances; unweighted uses BFS, weighted uses Dijkstra
// over reciprocal-weight lengths.
void sssp_distances(const WeightedDigraph& g, std::uint32_t s, bool weighted,
                    std::vector<double>& dist) {
    const std::size_t n = g.node_count();
    dist.assign(n, kInf);
    dist[s] = 0.0;
    if (!weighted) {
        std::vector<std::uint32_t> queue;
        queue.reserve(n);
        queue.push_back(s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::uint32_t v = queue[head];
            for (const auto& a : g.out(v)) {
                if (dist[a.to] == kInf) {
                    dist[a.to] = dist[v] + 1.0;
                    queue.push_back(a.to);
                }
            }
        }
        return;
    }
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, s});
    std::vector<bool> settled(n, false);
    while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (settled[v]) continue;
        settled[v] = true;
        for (const auto& a : g.out(v)) {
            const double nd = d + 1.0 / a.weight;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                pq.push({nd, a.to});
            }
        }
    }
}

} // namespace

std::vector<double> closeness_scores(const WeightedDigraph& g, bool weighted,
                                     bool lcc_normalized) {
    const std::size_t n = g.node_count();
    std::vector<double> scores(n, 0.0);
    if (n == 0) return scores;
    const auto comps = strong_components(g);
    const std::size_t lcc = largest_weak_component_size(g);

    run_chunked(n, kChunks, default_workers(), [&](std::size_t, std::size_t lo, std::size_t hi) {
        std::vector<double> dist;
        for (std::size_t v = lo; v < hi; ++v) {
            const std::uint32_t comp = comps.comp[v];
            const std::size_t members = comps.sizes[comp];
            if (members < 2) continue;
            sssp_distances(g, static_cast<std::uint32_t>(v), weighted, dist);
            double sum = 0.0;
            for (std::uint32_t u = 0; u < n; ++u) {
                if (u == v || comps.comp[u] != comp) continue;
                sum += dist[u];
            }
            if (sum > 0.0) scores[v] = static_cast<double>(members - 1) / sum;
        }
    });
    if (lcc_normalized && lcc > 0)
        for (auto& s : scores) s /= static_cast<double>(lcc);
    return scores;
}

std::vector<double> betweenness_scores(const WeightedDigraph& g, bool weighted,
                                       bool lcc_normalized) {
    const std::size_t n = g.node_count();
    std::vector<double> scores(n, 0.0);
    if (n < 3) return scores;

    const std::size_t chunk_count = std::min(kChunks, n);
    std::vector<std::vector<double>> partial(chunk_count);

    run_chunked(n, chunk_count, default_workers(),
                [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
        auto& bc = partial[chunk];
        bc.assign(n, 0.0);
        std::vector<double> dist(n), sigma(n), delta(n);
        std::vector<std::vector<std::uint32_t>> preds(n);
        std::vector<std::uint32_t> order;
        order.reserve(n);
        std::vector<bool> settled(n);
        using Item = std::pair<double, std::uint32_t>;

        for (std::size_t si = lo; si < hi; ++si) {
            const auto s = static_cast<std::uint32_t>(si);
            std::fill(dist.begin(), dist.end(), kInf);
            std::fill(sigma.begin(), sigma.end(), 0.0);
            for (auto& p : preds) p.clear();
            order.clear();
            dist[s] = 0.0;
            sigma[s] = 1.0;
            if (!weighted) {
                order.push_back(s);
                for (std::size_t head = 0; head < order.size(); ++head) {
                    const std::uint32_t v = order[head];
                    for (const auto& a : g.out(v)) {
                        if (dist[a.to] == kInf) {
                            dist[a.to] = dist[v] + 1.0;
                            order.push_back(a.to);
                        }
                        if (dist[a.to] == dist[v] + 1.0) {
                            sigma[a.to] += sigma[v];
                            preds[a.to].push_back(v);
                        }
                    }
                }
            } else {
                std::fill(settled.begin(), settled.end(), false);
                std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
                pq.push({0.0, s});
                while (!pq.empty()) {
                    const auto [d, v] = pq.top();
                    pq.pop();
                    if (settled[v]) continue;
                    settled[v] = true;
                    order.push_back(v);
                    for (const auto& a : g.out(v)) {
                        const double nd = d + 1.0 / a.weight;
                        if (nd < dist[a.to]) {
                            dist[a.to] = nd;
                            sigma[a.to] = sigma[v];
                            preds[a.to].assign(1, v);
                            pq.push({nd, a.to});
                        } else if (nd == dist[a.to]) {
                            sigma[a.to] += sigma[v];
                            preds[a.to].push_back(v);
                        }
                    }
                }
            }
            std::fill(delta.begin(), delta.end(), 0.0);
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                const std::uint32_t v = *it;
                for (const std::uint32_t p : preds[v])
                    delta[p] += sigma[p] / sigma[v] * (1.0 + delta[v]);
                if (v != s) bc[v] += delta[v];
            }
        }
    });

    for (std::size_t c = 0; c < chunk_count; ++c)
        for (std::size_t v = 0; v < n; ++v) scores[v] += partial[c][v];

    if (!g.directed())
        for (auto& s : scores) s *= 0.5;

    if (lcc_normalized) {
        const double nl = static_cast<double>(largest_weak_component_size(g));
        double norm = (nl - 1.0) * (nl - 2.0);
        if (!g.directed()) norm *= 0.5;
        if (norm <= 0.0) {
            std::fill(scores.begin(), scores.end(), 0.0);
        } else {
            for (auto& s : scores) s /= norm;
        }
    }
    return scores;
}

// ---------------------------------------------------------------------------
// Random-walk betweenness (current flow)
// ---------------------------------------------------------------------------

std::vector<double> newman_load_scores(const WeightedDigraph& g, bool weighted,
                                       bool lcc_normalized) {
    const WeightedDigraph undirected = g.directed() ? g.undirected_view() : WeightedDigraph();
    const WeightedDigraph& uv = g.directed() ? undirected : g;

    const std::size_t n = uv.node_count();
    std::vector<double> scores(n, 0.0);
    if (n == 0) return scores;

    const auto comps = weak_components(uv);
    std::vector<std::vector<Edge>> comp_edges(comps.count);
    for (const auto& e : uv.edges()) comp_edges[comps.comp[e.src]].push_back(e);
    std::vector<std::vector<std::uint32_t>> comp_nodes(comps.count);
    for (std::uint32_t v = 0; v < n; ++v) comp_nodes[comps.comp[v]].push_back(v);

    std::vector<std::uint32_t> local(n, 0);

    for (std::uint32_t c = 0; c < comps.count; ++c) {
        const auto& nodes = comp_nodes[c];
        const std::size_t nc = nodes.size();
        if (nc < 3) continue;
        for (std::uint32_t i = 0; i < nc; ++i) local[nodes[i]] = i;

        // Reduced Laplacian with local node 0 grounded.
        Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(nc - 1, nc - 1);
        for (const auto& e : comp_edges[c]) {
            const double cond = weighted ? e.weight : 1.0;
            const std::uint32_t a = local[e.src];
            const std::uint32_t b = local[e.dst];
            if (a > 0) lap(a - 1, a - 1) += cond;
            if (b > 0) lap(b - 1, b - 1) += cond;
            if (a > 0 && b > 0) {
                lap(a - 1, b - 1) -= cond;
                lap(b - 1, a - 1) -= cond;
            }
        }
        Eigen::LLT<Eigen::MatrixXd> llt(lap);
        if (llt.info() != Eigen::Success)
            throw NumericalError("component Laplacian is singular beyond its null space");
        const Eigen::MatrixXd inv =
            llt.solve(Eigen::MatrixXd::Identity(nc - 1, nc - 1));

        // Potential difference profile per edge; absolute-current sums via
        // sorted prefix sums.
        const auto& edges = comp_edges[c];
        const std::size_t chunk_count = std::min<std::size_t>(kChunks, edges.size());
        std::vector<std::vector<double>> partial(chunk_count);
        run_chunked(edges.size(), chunk_count, default_workers(),
                    [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
            auto& acc = partial[chunk];
            acc.assign(nc, 0.0);
            std::vector<double> x(nc), xs(nc), prefix(nc + 1);
            for (std::size_t ei = lo; ei < hi; ++ei) {
                const auto& e = edges[ei];
                const double cond = weighted ? e.weight : 1.0;
                const std::uint32_t a = local[e.src];
                const std::uint32_t b = local[e.dst];
                for (std::uint32_t u = 0; u < nc; ++u) {
                    const double ta = (u > 0 && a > 0) ? inv(u - 1, a - 1) : 0.0;
                    const double tb = (u > 0 && b > 0) ? inv(u - 1, b - 1) : 0.0;
                    x[u] = ta - tb;
                }
                xs = x;
                std::sort(xs.begin(), xs.end());
                prefix[0] = 0.0;
                for (std::size_t k = 0; k < nc; ++k) prefix[k + 1] = prefix[k] + xs[k];
                const double total = prefix[nc];
                double pair_sum = 0.0;
                for (std::size_t k = 0; k < nc; ++k)
                    pair_sum += (2.0 * static_cast<double>(k) - static_cast<double>(nc) + 1.0) *
                                xs[k];
                auto endpoint_sum = [&](double xv) {
                    const auto r = static_cast<std::size_t>(
                        std::upper_bound(xs.begin(), xs.end(), xv) - xs.begin());
                    return (static_cast<double>(r) * xv - prefix[r]) +
                           ((total - prefix[r]) - static_cast<double>(nc - r) * xv);
                };
                const double f_all = cond * pair_sum;
                acc[a] += 0.5 * (f_all - cond * endpoint_sum(x[a]));
                acc[b] += 0.5 * (f_all - cond * endpoint_sum(x[b]));
            }
        });
        for (std::size_t ch = 0; ch < chunk_count; ++ch)
            for (std::uint32_t i = 0; i < nc; ++i) scores[nodes[i]] += partial[ch][i];
    }

    if (lcc_normalized) {
        const double nl = static_cast<double>(largest_weak_component_size(uv));
        const double norm = (nl - 1.0) * (nl - 2.0) * 0.5;
        if (norm <= 0.0) {
            std::fill(scores.begin(), scores.end(), 0.0);
        } else {
            for (auto& s : scores) s /= norm;
        }
    }

    if (g.directed()) {
        // Map back through ids: undirected view shares the node ordering.
        std::vector<double> mapped(g.node_count(), 0.0);
        for (std::uint32_t v = 0; v < g.node_count(); ++v) {
            const auto idx = uv.index_of(g.id_of(v));
            if (idx) mapped[v] = scores[*idx];
        }
        return mapped;
    }
    return scores;
}

// ---------------------------------------------------------------------------
// PageRank
// ---------------------------------------------------------------------------

PageRankResult pagerank_scores(const WeightedDigraph& g, bool weighted,
                               const PageRankOptions& opts, bool lcc_normalized) {
    const std::size_t n = g.node_count();
    PageRankResult result;
    if (n == 0) return result;
    if (!(opts.damping > 0.0 && opts.damping < 1.0))
        throw ConfigError("PageRank damping must lie in (0, 1)");

    std::vector<double> outw(n, 0.0);
    for (std::uint32_t v = 0; v < n; ++v) {
        double sum = 0.0;
        for (const auto& a : g.out(v)) sum += weighted ? a.weight : 1.0;
        outw[v] = sum;
    }

    std::vector<double> x(n, 1.0 / static_cast<double>(n)), xn(n);
    const double d = opts.damping;
    int iter = 0;
    double residual = 0.0;
    for (iter = 1; iter <= opts.max_iter; ++iter) {
        double dangling = 0.0;
        for (std::size_t v = 0; v < n; ++v)
            if (outw[v] == 0.0) dangling += x[v];
        const double base = (1.0 - d) / static_cast<double>(n) +
                            d * dangling / static_cast<double>(n);
        std::fill(xn.begin(), xn.end(), base);
        for (std::uint32_t v = 0; v < n; ++v) {
            if (outw[v] == 0.0) continue;
            const double share = d * x[v] / outw[v];
            for (const auto& a : g.out(v)) xn[a.to] += share * (weighted ? a.weight : 1.0);
        }
        residual = 0.0;
        for (std::size_t v = 0; v < n; ++v) residual += std::abs(xn[v] - x[v]);
        x.swap(xn);
        if (residual < opts.tol) break;
    }
    result.iterations = std::min(iter, opts.max_iter);
    result.residual = residual;
    result.converged = residual < opts.tol;

    double sum = std::accumulate(x.begin(), x.end(), 0.0);
    if (sum > 0.0)
        for (auto& v : x) v /= sum;
    if (lcc_normalized) {
        const double nl = static_cast<double>(largest_weak_component_size(g));
        if (nl > 0.0)
            for (auto& v : x) v /= nl;
    }
    result.scores = std::move(x);
    return result;
}

// ---------------------------------------------------------------------------
// Impact Factor
// ---------------------------------------------------------------------------

ImpactFactorResult impact_factor(std::span<const CitationRecord> citations,
                                 std::span<const ArticleCountRecord> counts, int census_year,
                                 const std::set<int>& window) {
    ImpactFactorResult result;
    std::map<std::string, double> cites;
    std::map<std::string, std::int64_t> articles;
    for (const auto& r : citations) {
        if (r.census_year != census_year || !window.contains(r.pub_year)) continue;
        cites[r.cited_journal] += static_cast<double>(r.count);
    }
    for (const auto& c : counts) {
        if (!window.contains(c.year)) continue;
        articles[c.journal] += c.articles;
    }
    for (const auto& [journal, a] : articles) {
        if (a <= 0) {
            result.excluded.push_back(journal);
            continue;
        }
        const auto it = cites.find(journal);
        const double numer = it == cites.end() ? 0.0 : it->second;
        result.scores[journal] = numer / static_cast<double>(a);
    }
    for (const auto& [journal, c] : cites) {
        if (!articles.contains(journal)) result.excluded.push_back(journal);
    }
    std::sort(result.excluded.begin(), result.excluded.end());
    return result;
}

// ---------------------------------------------------------------------------
// Ranking and the catalog
// ---------------------------------------------------------------------------

std::vector<double> average_ranks(std::span<const double> scores) {
    const std::size_t n = scores.size();
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) ranks[idx[k]] = avg;
        i = j;
    }
    return ranks;
}

std::vector<MetricSpec> default_registry() {
    std::vector<MetricSpec> out;
    for (const auto net : {NetworkKind::Usage, NetworkKind::Citation}) {
        for (const auto fam : {MetricFamily::InDegree, MetricFamily::OutDegree,
                               MetricFamily::InEntropy, MetricFamily::OutEntropy}) {
            for (const bool w : {false, true}) out.push_back({fam, w, false, net});
        }
        for (const auto fam :
             {MetricFamily::Closeness, MetricFamily::Betweenness, MetricFamily::PageRank}) {
            for (const bool w : {false, true})
                for (const bool norm : {false, true}) out.push_back({fam, w, norm, net});
        }
        out.push_back({MetricFamily::NewmanLoad, false, false, net});
        out.push_back({MetricFamily::NewmanLoad, false, true, net});
        out.push_back({MetricFamily::NewmanLoad, true, true, net});
    }
    out.push_back({MetricFamily::ImpactFactor, false, false, NetworkKind::Citation});
    return out;
}

std::vector<MetricSpec> load_metric_registry(std::istream& in) {
    if (in.fail()) throw IoError("unreadable metric registry stream");
    std::vector<MetricSpec> out;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto spec = MetricSpec::parse_label(line);
        if (!spec)
            throw ConfigError("metric registry line " + std::to_string(line_no) +
                              ": unknown metric label " + line);
        out.push_back(*spec);
    }
    if (in.bad()) throw IoError("I/O failure while reading metric registry");
    return out;
}

void write_metric_registry(std::ostream& out, std::span<const MetricSpec> specs) {
    for (const auto& s : specs) out << s.label() << '\n';
}

namespace {

struct RawKey {
    MetricFamily family;
    bool weighted;
    NetworkKind network;
    bool operator<(const RawKey& o) const {
        return std::tuple{static_cast<int>(family), weighted, static_cast<int>(network)} <
               std::tuple{static_cast<int>(o.family), o.weighted, static_cast<int>(o.network)};
    }
};

} // namespace

CatalogResult run_catalog(const CatalogInputs& in, std::span<const MetricSpec> registry) {
    CatalogResult result;

    std::vector<std::string> common;
    if (in.usage && in.citation) {
        std::set_intersection(in.usage->node_ids().begin(), in.usage->node_ids().end(),
                              in.citation->node_ids().begin(), in.citation->node_ids().end(),
                              std::back_inserter(common));
    } else if (in.usage) {
        common = in.usage->node_ids();
    } else if (in.citation) {
        common = in.citation->node_ids();
    }

    // Unnormalized score vectors are shared between the _UN and
    // LCC-normalized variants of the same family.
    std::map<RawKey, std::vector<double>> raw_cache;
    auto raw_scores = [&](const MetricSpec& spec,
                          const WeightedDigraph& g) -> const std::vector<double>& {
        const RawKey key{spec.family, spec.weighted, spec.network};
        const auto it = raw_cache.find(key);
        if (it != raw_cache.end()) return it->second;
        std::vector<double> scores;
        switch (spec.family) {
        case MetricFamily::InDegree:
            scores = degree_scores(g, Direction::In, spec.weighted);
            break;
        case MetricFamily::OutDegree:
            scores = degree_scores(g, Direction::Out, spec.weighted);
            break;
        case MetricFamily::InEntropy:
            scores = entropy_scores(g, Direction::In, spec.weighted);
            break;
        case MetricFamily::OutEntropy:
            scores = entropy_scores(g, Direction::Out, spec.weighted);
            break;
        case MetricFamily::Closeness:
            scores = closeness_scores(g, spec.weighted, false);
            break;
        case MetricFamily::Betweenness:
            scores = betweenness_scores(g, spec.weighted, false);
            break;
        case MetricFamily::NewmanLoad:
            scores = newman_load_scores(g, spec.weighted, false);
            break;
        case MetricFamily::PageRank: {
            auto pr = pagerank_scores(g, spec.weighted, in.pagerank, false);
            if (!pr.converged)
                result.warnings.push_back(spec.label() + ": PageRank stopped at max_iter with residual " +
                                          format_double(pr.residual));
            scores = std::move(pr.scores);
            break;
        }
        case MetricFamily::ImpactFactor:
            break;
        }
        return raw_cache.emplace(key, std::move(scores)).first->second;
    };

    auto lcc_divisor = [&](const MetricSpec& spec, const WeightedDigraph& g) -> double {
        const double nl = static_cast<double>(largest_weak_component_size(g));
        switch (spec.family) {
        case MetricFamily::Closeness:
        case MetricFamily::PageRank:
            return nl > 0.0 ? nl : 0.0;
        case MetricFamily::Betweenness:
        case MetricFamily::NewmanLoad: {
            double norm = (nl - 1.0) * (nl - 2.0);
            if (!g.directed()) norm *= 0.5;
            return norm > 0.0 ? norm : 0.0;
        }
        default:
            return 1.0;
        }
    };

    for (const auto& spec : registry) {
        if (!spec_valid(spec)) {
            result.warnings.push_back(spec.label() + ": invalid spec, skipped");
            result.skipped.push_back(spec.label());
            continue;
        }
        if (spec.family == MetricFamily::ImpactFactor) {
            if (in.citations.empty() || in.article_counts.empty()) {
                result.skipped.push_back(spec.label());
                continue;
            }
            const auto ifr = impact_factor(in.citations, in.article_counts, in.census_year,
                                           in.window);
            MetricRanking ranking;
            ranking.spec = spec;
            for (const auto& j : common) {
                const auto it = ifr.scores.find(j);
                if (it == ifr.scores.end()) continue;
                ranking.journals.push_back(j);
                ranking.scores.push_back(it->second);
            }
            if (!ifr.excluded.empty())
                result.warnings.push_back(spec.label() + ": " +
                                          std::to_string(ifr.excluded.size()) +
                                          " journals lacked usable article counts");
            ranking.ranks = average_ranks(ranking.scores);
            result.rankings.push_back(std::move(ranking));
            continue;
        }
        const WeightedDigraph* g =
            spec.network == NetworkKind::Usage ? in.usage : in.citation;
        if (!g) {
            result.skipped.push_back(spec.label());
            continue;
        }
        try {
            const auto& raw = raw_scores(spec, *g);
            const double divisor = spec.lcc_normalized ? lcc_divisor(spec, *g) : 1.0;
            MetricRanking ranking;
            ranking.spec = spec;
            ranking.journals.reserve(common.size());
            ranking.scores.reserve(common.size());
            for (const auto& j : common) {
                const auto idx = g->index_of(j);
                if (!idx) continue;
                ranking.journals.push_back(j);
                ranking.scores.push_back(divisor > 0.0 ? raw[*idx] / divisor : 0.0);
            }
            ranking.ranks = average_ranks(ranking.scores);
            result.rankings.push_back(std::move(ranking));
        } catch (const std::exception& e) {
            result.warnings.push_back(spec.label() + ": " + e.what());
            result.skipped.push_back(spec.label());
        }
    }
    return result;
}

} // namespace scinet
