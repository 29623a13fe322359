// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
//
// scinet: turn raw scholarly usage logs and citation records into journal
// networks, impact-metric rankings, metric correlation maps, and
// force-directed science maps.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "scinet/pipeline.hpp"
#include "scinet/synth.hpp"

namespace {

std::string read_salt_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw scinet::ConfigError("cannot open salt file " + path);
    std::string salt;
    std::getline(in, salt);
    if (!salt.empty() && salt.back() == '\r') salt.pop_back();
    return salt;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"journal usage/citation network analytics"};
    app.set_config("--config", "", "structured config file presetting any flag");
    app.require_subcommand(1);

    scinet::PipelineConfig cfg;
    scinet::SynthSpec synth;
    std::string salt_file;
    std::string format = "csv";
    std::string pair_weighting = "binary";

    app.add_option("--out", cfg.outdir, "artifact directory")->required();
    app.add_option("--workers", cfg.workers, "parallelism bound (0 = hardware)");

    app.add_option("--usage", cfg.usage_logs, "usage log file(s)");
    app.add_option("--format", format, "usage log format: csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    app.add_option("--salt", cfg.salt, "anonymization salt (prefer --salt-file)");
    app.add_option("--salt-file", salt_file, "file whose first line is the salt");
    app.add_option("--citations", cfg.citations_path, "citation records file");
    app.add_option("--article-counts", cfg.article_counts_path, "article count file");
    app.add_option("--journals", cfg.journal_registry_path, "journal registry file");
    app.add_option("--equivalences", cfg.equivalences_path, "journal equivalence table");

    app.add_option("--session-timeout", cfg.session_timeout, "inactivity timeout, seconds");
    app.add_option("--bot-max-length", cfg.bot_policy.max_length,
                   "sessions longer than this are robots");
    app.add_option("--bot-min-gap", cfg.bot_policy.min_median_gap,
                   "median gap below this is a robot, seconds");
    app.add_option("--bot-gap-min-length", cfg.bot_policy.min_length_for_gap_test,
                   "gap test applies from this session length");

    app.add_option("--threshold", cfg.resolver.threshold, "fuzzy match acceptance threshold");
    app.add_option("--margin", cfg.resolver.margin, "fuzzy best-vs-second margin");

    app.add_option("--session-cap", cfg.session_cap, "max distinct journals per session");
    app.add_option("--pair-weighting", pair_weighting,
                   "co-occurrence weighting: binary or events")
        ->check(CLI::IsMember({"binary", "events"}));
    app.add_option("--census-year", cfg.census_year, "citation census year");
    app.add_option("--window", cfg.window, "publication window years");

    app.add_option("--registry", cfg.metric_registry_path, "metric registry file");
    app.add_option("--damping", cfg.pagerank.damping, "PageRank damping");
    app.add_option("--tol", cfg.pagerank.tol, "PageRank L1 tolerance");
    app.add_option("--max-iter", cfg.pagerank.max_iter, "PageRank iteration cap");
    app.add_option("--components", cfg.pca_components, "PCA components");

    app.add_option("--top-edges", cfg.prune_spec.top_k_edges, "heaviest edges kept");
    app.add_option("--node-cap", cfg.prune_spec.per_node_cap, "incident edges kept per node");
    app.add_option("--seed", cfg.layout_seed, "layout seed");
    app.add_option("--iterations", cfg.layout_iterations, "layout iterations");
    app.add_option("--labels", cfg.label_top, "labeled top-degree nodes");

    auto* sub_ingest = app.add_subcommand("ingest", "parse raw usage logs");
    auto* sub_sessionize = app.add_subcommand("sessionize", "group, featurize, classify");
    auto* sub_resolve = app.add_subcommand("resolve", "canonicalize journals per session");
    auto* sub_buildnet = app.add_subcommand("build-net", "usage and citation networks");
    auto* sub_metrics = app.add_subcommand("metrics", "impact metric catalog");
    auto* sub_correlate = app.add_subcommand("correlate", "metric correlation matrix");
    auto* sub_pca = app.add_subcommand("pca", "project the correlation matrix");
    auto* sub_map = app.add_subcommand("map", "prune, lay out, and render maps");
    auto* sub_run = app.add_subcommand("run", "whole pipeline");
    auto* sub_synth = app.add_subcommand("synth", "generate a synthetic corpus");

    sub_synth->add_option("--communities", synth.communities, "journal communities");
    sub_synth->add_option("--journals-per-community", synth.journals_per_community,
                          "journals in each community");
    sub_synth->add_option("--sessions", synth.sessions, "session count");
    sub_synth->add_option("--events-min", synth.human_min_events, "min human session length");
    sub_synth->add_option("--events-max", synth.human_max_events, "max human session length");
    sub_synth->add_option("--epsilon", synth.cross_community_probability,
                          "cross-community event probability");
    sub_synth->add_option("--bot-fraction", synth.bot_fraction, "robot session share");
    sub_synth->add_option("--keyless-fraction", synth.keyless_fraction,
                          "sessions identified only by agent");
    sub_synth->add_option("--synth-census-year", synth.census_year, "citation census year");
    sub_synth->add_option("--synth-seed", synth.seed, "generator seed");

    for (auto* sub : {sub_ingest, sub_sessionize, sub_resolve, sub_buildnet, sub_metrics,
                      sub_correlate, sub_pca, sub_map, sub_run, sub_synth})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        cfg.usage_format =
            format == "jsonl" ? scinet::LogFormat::JsonLines : scinet::LogFormat::Delimited;
        cfg.pair_weighting_by_events = pair_weighting == "events";
        if (cfg.salt.empty() && !salt_file.empty()) cfg.salt = read_salt_file(salt_file);

        if (sub_synth->parsed()) {
            scinet::generate_corpus(synth, cfg.outdir);
            std::cout << "synthetic corpus written to " << cfg.outdir << "\n";
            return 0;
        }
        if (sub_run->parsed()) {
            const auto outcome = scinet::run_pipeline(cfg);
            std::cout << outcome.report.dump(2) << "\n";
            return outcome.exit_code;
        }

        nlohmann::json counters;
        if (sub_ingest->parsed()) counters = scinet::stage_ingest(cfg);
        else if (sub_sessionize->parsed()) counters = scinet::stage_sessionize(cfg);
        else if (sub_resolve->parsed()) counters = scinet::stage_resolve(cfg);
        else if (sub_buildnet->parsed()) counters = scinet::stage_netbuild(cfg);
        else if (sub_metrics->parsed()) counters = scinet::stage_metrics(cfg);
        else if (sub_correlate->parsed()) counters = scinet::stage_correlate(cfg);
        else if (sub_pca->parsed()) counters = scinet::stage_pca(cfg);
        else if (sub_map->parsed()) counters = scinet::stage_map(cfg);
        std::cout << counters.dump(2) << "\n";
        if (counters.contains("skipped") && !counters["skipped"].empty()) return 3;
        return 0;
    } catch (const scinet::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "stage failure: " << e.what() << "\n";
        return 2;
    }
}
