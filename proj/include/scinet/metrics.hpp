// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scinet/graph.hpp"
#include "scinet/ingest.hpp"

namespace scinet {

enum class MetricFamily {
    InDegree,     // ID
    OutDegree,    // OD
    InEntropy,    // IE
    OutEntropy,   // OE
    Closeness,    // CL
    Betweenness,  // BW
    NewmanLoad,   // NM
    PageRank,     // PR
    ImpactFactor, // IF
};

enum class NetworkKind { Usage, Citation };
enum class Direction { In, Out };

/// One entry of the metric catalog. Labels follow the
/// <NET>_<FAMILY>[_W][_UN] scheme: USES or CITE prefix, W when connection
/// weights are used, UN when the score is not normalized to the size of
/// the largest connected component. The Impact Factor is labeled "IF".
struct MetricSpec {
    MetricFamily family = MetricFamily::InDegree;
    bool weighted = false;
    bool lcc_normalized = false;
    NetworkKind network = NetworkKind::Usage;

    std::string label() const;
    static std::optional<MetricSpec> parse_label(std::string_view label);
    bool operator==(const MetricSpec&) const = default;
};

/// IF exists only on the citation side; degree and entropy families take
/// no LCC normalization.
bool spec_valid(const MetricSpec& spec);

const char* family_abbrev(MetricFamily f);

// ---- individual score functions (indexed by graph node) ----

std::vector<double> degree_scores(const WeightedDigraph& g, Direction dir, bool weighted);

/// Shannon entropy of the incident weight distribution; the unweighted
/// variant treats every link as weight 1 (giving ln k for k links).
std::vector<double> entropy_scores(const WeightedDigraph& g, Direction dir, bool weighted);

/// Closeness within the node's component (strongly connected component
/// for directed graphs): reachable count over summed distances. Weighted
/// distances are reciprocal edge weights.
std::vector<double> closeness_scores(const WeightedDigraph& g, bool weighted,
                                     bool lcc_normalized);

/// Shortest-path betweenness (Brandes). Undirected scores count each
/// unordered pair once. Normalization divides by (n-1)(n-2), halved for
/// undirected graphs, with n the largest weak component size.
std::vector<double> betweenness_scores(const WeightedDigraph& g, bool weighted,
                                       bool lcc_normalized);

/// Random-walk (current-flow) betweenness computed on the undirected
/// view, per component, with edge weights as conductances: the summed
/// absolute net flow through a node over all source/target pairs that do
/// not involve it. On trees this coincides with shortest-path
/// betweenness. Normalization mirrors betweenness_scores.
std::vector<double> newman_load_scores(const WeightedDigraph& g, bool weighted,
                                       bool lcc_normalized);

struct PageRankOptions {
    double damping = 0.85;
    double tol = 1e-9;
    int max_iter = 200;
};

struct PageRankResult {
    std::vector<double> scores;
    int iterations = 0;
    double residual = 0.0;
    bool converged = true;
};

/// Power iteration on the column-stochastic transition structure.
/// Dangling nodes redistribute uniformly; scores sum to one.
PageRankResult pagerank_scores(const WeightedDigraph& g, bool weighted,
                               const PageRankOptions& opts = {}, bool lcc_normalized = false);

struct ImpactFactorResult {
    std::map<std::string, double> scores;
    std::vector<std::string> excluded; // journals without usable article counts
};

/// Citations received in the census year to articles published in the
/// window, divided by the article count over the window.
ImpactFactorResult impact_factor(std::span<const CitationRecord> citations,
                                 std::span<const ArticleCountRecord> counts, int census_year,
                                 const std::set<int>& window);

/// Average ranks, descending: rank 1 is the highest score, tied scores
/// share the mean of the positions they span.
std::vector<double> average_ranks(std::span<const double> scores);

struct MetricRanking {
    MetricSpec spec;
    std::vector<std::string> journals; // sorted ascending
    std::vector<double> scores;        // parallel to journals
    std::vector<double> ranks;         // parallel to journals
};

/// The default 47-entry catalog: per network, degree and entropy
/// families in both weight variants (8), closeness / betweenness /
/// PageRank crossed with weight and LCC normalization (12), and three
/// random-walk betweenness variants (3); plus the Impact Factor.
std::vector<MetricSpec> default_registry();

std::vector<MetricSpec> load_metric_registry(std::istream& in); // one label per line
void write_metric_registry(std::ostream& out, std::span<const MetricSpec> specs);

struct CatalogInputs {
    const WeightedDigraph* usage = nullptr;    // undirected
    const WeightedDigraph* citation = nullptr; // directed
    std::span<const CitationRecord> citations;
    std::span<const ArticleCountRecord> article_counts;
    int census_year = 0;
    std::set<int> window;
    PageRankOptions pagerank;
};

struct CatalogResult {
    std::vector<MetricRanking> rankings;
    std::vector<std::string> skipped;  // labels with missing inputs
    std::vector<std::string> warnings; // convergence and error notes
};

/// Evaluates every spec of the registry whose inputs are present.
/// Rankings are restricted to the journals shared by all available
/// networks; per-metric failures are reported, not fatal.
CatalogResult run_catalog(const CatalogInputs& in, std::span<const MetricSpec> registry);

} // namespace scinet
