// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "scinet/identify.hpp"
#include "scinet/ingest.hpp"
#include "scinet/metrics.hpp"
#include "scinet/scimap.hpp"
#include "scinet/sessionize.hpp"

namespace scinet {

/// Everything the pipeline stages need; a structured config file or CLI
/// flags populate it. All stages work through files under outdir, so a
/// run can resume from any completed stage.
struct PipelineConfig {
    std::string outdir;

    std::vector<std::string> usage_logs;
    LogFormat usage_format = LogFormat::Delimited;
    std::string citations_path;      // optional
    std::string article_counts_path; // optional
    std::string journal_registry_path;
    std::string equivalences_path;   // optional
    std::string metric_registry_path; // optional; default catalog otherwise

    std::string salt; // never persisted

    double session_timeout = kDefaultSessionTimeout;
    BotPolicy bot_policy;
    ResolverOptions resolver;
    std::size_t session_cap = 50;
    bool pair_weighting_by_events = false;

    int census_year = 2005;
    std::vector<int> window; // empty = the two preceding years

    PruneSpec prune_spec;
    std::uint64_t layout_seed = 42;
    std::size_t layout_iterations = 500;
    std::size_t label_top = 25;

    PageRankOptions pagerank;
    std::size_t pca_components = 2;
    unsigned workers = 0; // 0 = hardware concurrency
};

/// Artifact names under outdir.
namespace artifacts {
inline constexpr const char* events = "events.csv";
inline constexpr const char* parse_errors = "errors.jsonl";
inline constexpr const char* rejected_events = "rejected_events.csv";
inline constexpr const char* sessions = "sessions.jsonl";
inline constexpr const char* journal_sessions = "journal_sessions.jsonl";
inline constexpr const char* resolve_report = "resolve_report.json";
inline constexpr const char* usage_edges = "usage_edges.csv";
inline constexpr const char* usage_graphml = "usage.graphml";
inline constexpr const char* usage_stats = "usage_stats.json";
inline constexpr const char* citation_edges = "citation_edges.csv";
inline constexpr const char* citation_graphml = "citation.graphml";
inline constexpr const char* citation_stats = "citation_stats.json";
inline constexpr const char* metrics_table = "metrics.csv";
inline constexpr const char* metrics_report = "metrics_report.json";
inline constexpr const char* correlation = "corr.csv";
inline constexpr const char* correlation_report = "corr_report.json";
inline constexpr const char* pca_table = "pca.csv";
inline constexpr const char* pca_svg = "pca.svg";
inline constexpr const char* report = "report.json";
} // namespace artifacts

std::string artifact_path(const PipelineConfig& cfg, const char* name);

// Each stage reads its inputs from outdir (or the configured source
// files), writes its artifacts, and returns its counters.
nlohmann::json stage_ingest(const PipelineConfig& cfg);
nlohmann::json stage_sessionize(const PipelineConfig& cfg);
nlohmann::json stage_resolve(const PipelineConfig& cfg);
nlohmann::json stage_netbuild(const PipelineConfig& cfg);
nlohmann::json stage_metrics(const PipelineConfig& cfg);
nlohmann::json stage_correlate(const PipelineConfig& cfg);
nlohmann::json stage_pca(const PipelineConfig& cfg);
nlohmann::json stage_map(const PipelineConfig& cfg);

/// Throws ConfigError when required inputs are missing or out of range.
void validate_config(const PipelineConfig& cfg);

struct RunOutcome {
    int exit_code = 0; // 0 ok, 2 stage failure, 3 partial
    nlohmann::json report;
};

/// Runs every stage in order, persists report.json (stage counters and
/// wall times), halts on the first failing stage keeping prior
/// artifacts.
RunOutcome run_pipeline(const PipelineConfig& cfg);

} // namespace scinet
