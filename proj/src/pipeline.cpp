// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "scinet/csv.hpp"
#include "scinet/graph_io.hpp"
#include "scinet/metricstats.hpp"
#include "scinet/netbuild.hpp"

namespace scinet {

namespace fs = std::filesystem;

namespace {

void apply_runtime(const PipelineConfig& cfg) {
    set_default_workers(cfg.workers);
    fs::create_directories(cfg.outdir);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::set<int> effective_window(const PipelineConfig& cfg) {
    if (!cfg.window.empty()) return {cfg.window.begin(), cfg.window.end()};
    return {cfg.census_year - 2, cfg.census_year - 1};
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

template <typename Fn>
void write_file(const std::string& path, Fn&& fn) {
    auto out = open_output(path);
    fn(out);
    if (!out) throw IoError("short write: " + path);
}

void write_json_file(const std::string& path, const nlohmann::json& doc) {
    write_file(path, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
}

JournalResolver load_resolver(const PipelineConfig& cfg) {
    if (cfg.journal_registry_path.empty())
        throw ConfigError("journal registry path is required for resolution");
    auto reg_in = open_input(cfg.journal_registry_path);
    auto registry = load_registry(reg_in);
    std::map<std::string, std::string> equivalences;
    if (!cfg.equivalences_path.empty()) {
        auto eq_in = open_input(cfg.equivalences_path);
        equivalences = load_equivalences(eq_in);
    }
    return JournalResolver(std::move(registry), std::move(equivalences), cfg.resolver);
}

struct ResolvedCitations {
    std::vector<CitationRecord> records;
    std::uint64_t unresolved_refs = 0;
    std::uint64_t parse_errors = 0;
};

ResolvedCitations load_resolved_citations(const PipelineConfig& cfg,
                                          const JournalResolver& resolver) {
    ResolvedCitations out;
    auto in = open_input(cfg.citations_path);
    auto parsed = parse_citation_records(in);
    out.parse_errors = parsed.errors.size();
    std::unordered_map<std::string, std::optional<std::string>> memo;
    auto resolve_memo = [&](const std::string& ref) -> std::optional<std::string> {
        const auto it = memo.find(ref);
        if (it != memo.end()) return it->second;
        return memo.emplace(ref, resolver.resolve_ref(ref)).first->second;
    };
    for (auto& r : parsed.records) {
        const auto citing = resolve_memo(r.citing_journal);
        const auto cited = resolve_memo(r.cited_journal);
        if (!citing || !cited) {
            ++out.unresolved_refs;
            continue;
        }
        r.citing_journal = *citing;
        r.cited_journal = *cited;
        out.records.push_back(std::move(r));
    }
    return out;
}

std::vector<ArticleCountRecord> load_resolved_counts(const PipelineConfig& cfg,
                                                     const JournalResolver& resolver,
                                                     std::uint64_t& unresolved) {
    auto in = open_input(cfg.article_counts_path);
    auto parsed = parse_article_counts(in);
    std::vector<ArticleCountRecord> out;
    out.reserve(parsed.records.size());
    std::unordered_map<std::string, std::optional<std::string>> memo;
    for (auto& c : parsed.records) {
        auto it = memo.find(c.journal);
        if (it == memo.end()) it = memo.emplace(c.journal, resolver.resolve_ref(c.journal)).first;
        if (!it->second) {
            ++unresolved;
            continue;
        }
        c.journal = *it->second;
        out.push_back(std::move(c));
    }
    return out;
}

std::string serialize_journal_session(const std::string& id,
                                      std::span<const std::string> journals) {
    std::string out = "{\"id\":\"";
    out += json_escape(id);
    out += "\",\"j\":[";
    for (std::size_t i = 0; i < journals.size(); ++i) {
        if (i > 0) out += ',';
        out += '"';
        out += json_escape(journals[i]);
        out += '"';
    }
    out += "]}";
    return out;
}

} // namespace

std::string artifact_path(const PipelineConfig& cfg, const char* name) {
    return cfg.outdir + "/" + name;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

nlohmann::json stage_ingest(const PipelineConfig& cfg) {
    apply_runtime(cfg);
    if (cfg.usage_logs.empty()) throw ConfigError("no usage logs configured");
    Anonymizer anon(cfg.salt);

    auto events_out = open_output(artifact_path(cfg, artifacts::events));
    auto errors_out = open_output(artifact_path(cfg, artifacts::parse_errors));
    events_out << kCanonicalEventHeader << '\n';

    std::uint64_t seq = 1;
    std::uint64_t events = 0, errors = 0;
    for (const auto& path : cfg.usage_logs) {
        auto in = open_input(path);
        seq = parse_usage_log_stream(
            in, cfg.usage_format, anon, seq,
            [&](const UsageEvent& e) {
                events_out << serialize_usage_event(e) << '\n';
                ++events;
            },
            [&](const ParseError& e) {
                errors_out << serialize_parse_error(e) << '\n';
                ++errors;
            });
    }
    if (!events_out || !errors_out) throw IoError("short write during ingest");
    return {{"files", cfg.usage_logs.size()}, {"events", events}, {"parse_errors", errors}};
}

// ---------------------------------------------------------------------------
// sessionize
// ---------------------------------------------------------------------------

nlohmann::json stage_sessionize(const PipelineConfig& cfg) {
    apply_runtime(cfg);
    const auto events_path = artifact_path(cfg, artifacts::events);
    auto in = open_input(events_path);

    // Hash-partition by grouping key; every key's events land in one
    // partition, which then groups and classifies in memory.
    const auto bytes = fs::file_size(events_path);
    const std::size_t partitions =
        std::max<std::size_t>(16, static_cast<std::size_t>(bytes / (128ull << 20)) + 1);
    const std::string tmp_prefix = cfg.outdir + "/.spill_";
    {
        std::vector<std::ofstream> spills;
        spills.reserve(partitions);
        for (std::size_t p = 0; p < partitions; ++p)
            spills.push_back(open_output(tmp_prefix + std::to_string(p)));

        auto rejected_out = open_output(artifact_path(cfg, artifacts::rejected_events));
        rejected_out << kCanonicalEventHeader << '\n';

        std::string line;
        std::uint64_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            if (line_no == 1) {
                if (line != kCanonicalEventHeader)
                    throw ConfigError("events artifact has an unexpected header");
                continue;
            }
            // Cheap field peek: fields 1 (session_key) and 2 (agent_hash).
            const auto c1 = line.find(',');
            const auto c2 = line.find(',', c1 + 1);
            const auto c3 = line.find(',', c2 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos || c3 == std::string::npos)
                throw ConfigError("malformed events artifact at line " + std::to_string(line_no));
            const std::string_view session_key(line.data() + c1 + 1, c2 - c1 - 1);
            const std::string_view agent_hash(line.data() + c2 + 1, c3 - c2 - 1);
            std::string key;
            if (!session_key.empty()) {
                key = "k";
                key += session_key;
            } else if (!agent_hash.empty()) {
                key = "a";
                key += agent_hash;
            } else {
                rejected_out << line << '\n';
                continue;
            }
            spills[fnv1a64(key) % partitions] << line << '\n';
        }
    }

    auto sessions_out = open_output(artifact_path(cfg, artifacts::sessions));
    std::uint64_t sessions = 0, humans = 0, robots = 0, rejected = 0, grouped_events = 0;
    for (std::size_t p = 0; p < partitions; ++p) {
        const std::string spill_path = tmp_prefix + std::to_string(p);
        std::vector<UsageEvent> events;
        {
            auto spill_in = open_input(spill_path);
            std::string line;
            while (std::getline(spill_in, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.empty()) continue;
                auto event = parse_canonical_event(line);
                if (!event)
                    throw ConfigError("malformed events artifact row in partition " +
                                      std::to_string(p));
                events.push_back(std::move(*event));
            }
        }
        fs::remove(spill_path);
        auto grouped = group_sessions(std::move(events), cfg.session_timeout);
        rejected += grouped.rejected.size();
        for (auto& s : grouped.sessions) {
            s.classification = classify_session(s, cfg.bot_policy);
            if (s.classification == Classification::Robot) ++robots;
            else ++humans;
            grouped_events += s.events.size();
            sessions_out << serialize_session(s) << '\n';
            ++sessions;
        }
    }
    if (!sessions_out) throw IoError("short write during sessionize");
    return {{"partitions", partitions}, {"sessions", sessions},   {"humans", humans},
            {"robots", robots},         {"rejected", rejected},   {"events", grouped_events}};
}

// ---------------------------------------------------------------------------
// resolve
// ---------------------------------------------------------------------------

nlohmann::json stage_resolve(const PipelineConfig& cfg) {
    apply_runtime(cfg);
    const auto resolver = load_resolver(cfg);

    auto in = open_input(artifact_path(cfg, artifacts::sessions));
    auto out = open_output(artifact_path(cfg, artifacts::journal_sessions));

    MatchStats event_stats;
    std::uint64_t robots_skipped = 0, empty_sessions = 0, human_sessions = 0;
    std::unordered_map<std::string, std::optional<std::string>> memo;
    std::string line;
    std::vector<std::string> journals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto session = parse_session_line(line);
        if (!session) throw ConfigError("malformed session line");
        if (session->classification != Classification::Human) {
            ++robots_skipped;
            continue;
        }
        ++human_sessions;
        auto conflated = conflate_consecutive(std::move(*session));
        journals.clear();
        for (const auto& e : conflated.events) {
            std::string key = e.artifact.issn;
            key += '\x1f';
            key += e.artifact.title;
            auto it = memo.find(key);
            if (it == memo.end()) {
                const auto decision = resolver.resolve(e.artifact);
                it = memo.emplace(std::move(key), decision.resolved).first;
                // Method mix tracked per distinct artifact description.
                event_stats.add(decision.method);
            }
            if (it->second) journals.push_back(*it->second);
        }
        if (journals.empty()) {
            ++empty_sessions;
            continue;
        }
        out << serialize_journal_session(conflated.session_id, journals) << '\n';
    }
    if (!out) throw IoError("short write during resolve");

    nlohmann::json report = {
        {"human_sessions", human_sessions},
        {"robot_sessions_skipped", robots_skipped},
        {"sessions_without_resolved_events", empty_sessions},
        {"distinct_artifacts",
         {{"exact_issn", event_stats.exact_issn},
          {"equivalence_table", event_stats.equivalence},
          {"fuzzy_title", event_stats.fuzzy},
          {"unresolved", event_stats.unresolved}}},
        {"unresolved_rate",
         event_stats.total() == 0
             ? 0.0
             : static_cast<double>(event_stats.unresolved) /
                   static_cast<double>(event_stats.total())},
    };
    open_output(artifact_path(cfg, artifacts::resolve_report)) << report.dump(2) << '\n';
    return report;
}

// ---------------------------------------------------------------------------
// netbuild
// ---------------------------------------------------------------------------

namespace {

std::optional<std::pair<std::string, std::vector<std::string>>> parse_journal_session(
    const std::string& line) {
    const auto doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
    const auto id_it = doc.find("id");
    const auto j_it = doc.find("j");
    if (id_it == doc.end() || j_it == doc.end() || !j_it->is_array()) return std::nullopt;
    std::vector<std::string> journals;
    journals.reserve(j_it->size());
    for (const auto& j : *j_it) {
        if (!j.is_string()) return std::nullopt;
        journals.push_back(j.get<std::string>());
    }
    return std::make_pair(id_it->get<std::string>(), std::move(journals));
}

nlohmann::json stats_json(const BuildStats& s) {
    return {{"sessions_used", s.sessions_used},
            {"sessions_skipped_cap", s.sessions_skipped_cap},
            {"sessions_skipped_empty", s.sessions_skipped_empty},
            {"events_used", s.events_used},
            {"distinct_journals", s.distinct_journals},
            {"records_used", s.records_used},
            {"records_window_excluded", s.records_window_excluded},
            {"self_citations_dropped", s.self_citations_dropped}};
}

} // namespace

nlohmann::json stage_netbuild(const PipelineConfig& cfg) {
    apply_runtime(cfg);
    nlohmann::json counters;

    {
        auto in = open_input(artifact_path(cfg, artifacts::journal_sessions));
        UsageNetworkBuilder builder(cfg.session_cap, cfg.pair_weighting_by_events);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto session = parse_journal_session(line);
            if (!session) throw ConfigError("malformed journal session line");
            builder.add_session(session->second);
        }
        const auto graph = builder.build();
        write_file(artifact_path(cfg, artifacts::usage_edges),
                   [&](std::ostream& o) { write_edge_list(o, graph); });
        write_file(artifact_path(cfg, artifacts::usage_graphml),
                   [&](std::ostream& o) { write_graphml(o, graph); });
        const auto stats = builder.stats();
        open_output(artifact_path(cfg, artifacts::usage_stats)) << stats_json(stats).dump(2)
                                                                << '\n';
        counters["usage"] = stats_json(stats);
        counters["usage"]["edges"] = graph.edge_count();
    }

    if (!cfg.citations_path.empty() && fs::exists(cfg.citations_path)) {
        const auto resolver = load_resolver(cfg);
        const auto resolved = load_resolved_citations(cfg, resolver);
        const auto net =
            build_citation_network(resolved.records, cfg.census_year, effective_window(cfg));
        write_file(artifact_path(cfg, artifacts::citation_edges),
                   [&](std::ostream& o) { write_edge_list(o, net.graph); });
        write_file(artifact_path(cfg, artifacts::citation_graphml),
                   [&](std::ostream& o) { write_graphml(o, net.graph); });
        auto stats = stats_json(net.stats);
        stats["unresolved_refs"] = resolved.unresolved_refs;
        stats["parse_errors"] = resolved.parse_errors;
        open_output(artifact_path(cfg, artifacts::citation_stats)) << stats.dump(2) << '\n';
        counters["citation"] = stats;
        counters["citation"]["edges"] = net.graph.edge_count();
    } else {
        counters["citation"] = nullptr;
    }
    return counters;
}

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

nlohmann::json stage_metrics(const PipelineConfig& cfg) {
    apply_runtime(cfg);

    std::optional<WeightedDigraph> usage, citation;
    if (fs::exists(artifact_path(cfg, artifacts::usage_edges))) {
        auto in = open_input(artifact_path(cfg, artifacts::usage_edges));
        usage = read_edge_list(in, false);
    }
    if (fs::exists(artifact_path(cfg, artifacts::citation_edges))) {
        auto in = open_input(artifact_path(cfg, artifacts::citation_edges));
        citation = read_edge_list(in, true);
    }

    std::vector<CitationRecord> citation_records;
    std::vector<ArticleCountRecord> article_counts;
    std::uint64_t unresolved_counts = 0;
    if (!cfg.citations_path.empty() && fs::exists(cfg.citations_path) &&
        !cfg.article_counts_path.empty() && fs::exists(cfg.article_counts_path)) {
        const auto resolver = load_resolver(cfg);
        citation_records = load_resolved_citations(cfg, resolver).records;
        article_counts = load_resolved_counts(cfg, resolver, unresolved_counts);
    }

    std::vector<MetricSpec> registry;
    if (!cfg.metric_registry_path.empty()) {
        auto in = open_input(cfg.metric_registry_path);
        registry = load_metric_registry(in);
    } else {
        registry = default_registry();
    }

    CatalogInputs inputs;
    inputs.usage = usage ? &*usage : nullptr;
    inputs.citation = citation ? &*citation : nullptr;
    inputs.citations = citation_records;
    inputs.article_counts = article_counts;
    inputs.census_year = cfg.census_year;
    inputs.window = effective_window(cfg);
    inputs.pagerank = cfg.pagerank;

    const auto catalog = run_catalog(inputs, registry);

    // Score table: rows are the union of ranked journals, one column per
    // ranking, empty where a journal is not covered.
    std::vector<std::string> rows;
    for (const auto& r : catalog.rankings) {
        std::vector<std::string> merged;
        std::set_union(rows.begin(), rows.end(), r.journals.begin(), r.journals.end(),
                       std::back_inserter(merged));
        rows.swap(merged);
    }
    auto table = open_output(artifact_path(cfg, artifacts::metrics_table));
    table << "journal_id";
    for (const auto& r : catalog.rankings) table << ',' << r.spec.label();
    table << '\n';
    std::vector<std::size_t> cursor(catalog.rankings.size(), 0);
    for (const auto& journal : rows) {
        table << journal;
        for (std::size_t c = 0; c < catalog.rankings.size(); ++c) {
            const auto& r = catalog.rankings[c];
            table << ',';
            auto& pos = cursor[c];
            while (pos < r.journals.size() && r.journals[pos] < journal) ++pos;
            if (pos < r.journals.size() && r.journals[pos] == journal)
                table << format_double(r.scores[pos]);
        }
        table << '\n';
    }
    if (!table) throw IoError("short write during metrics");

    nlohmann::json report = {
        {"rankings", catalog.rankings.size()},
        {"journals", rows.size()},
        {"skipped", catalog.skipped},
        {"warnings", catalog.warnings},
        {"unresolved_article_count_refs", unresolved_counts},
    };
    open_output(artifact_path(cfg, artifacts::metrics_report)) << report.dump(2) << '\n';
    return report;
}

// ---------------------------------------------------------------------------
// correlate and pca
// ---------------------------------------------------------------------------

namespace {

std::vector<MetricRanking> load_rankings_from_table(const std::string& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty metrics table");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = csv_split(line);
    if (!header || header->size() < 2 || (*header)[0] != "journal_id")
        throw ConfigError("bad metrics table header");
    const std::size_t columns = header->size() - 1;
    std::vector<MetricRanking> rankings(columns);
    for (std::size_t c = 0; c < columns; ++c) {
        const auto spec = MetricSpec::parse_label((*header)[c + 1]);
        if (!spec) throw ConfigError("unknown metric column " + (*header)[c + 1]);
        rankings[c].spec = *spec;
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = csv_split(line);
        if (!fields || fields->size() != columns + 1)
            throw ConfigError("metrics table row width mismatch");
        for (std::size_t c = 0; c < columns; ++c) {
            const auto& cell = (*fields)[c + 1];
            if (cell.empty()) continue;
            double v = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
                throw ConfigError("bad score cell: " + cell);
            rankings[c].journals.push_back((*fields)[0]);
            rankings[c].scores.push_back(v);
        }
    }
    for (auto& r : rankings) r.ranks = average_ranks(r.scores);
    return rankings;
}

} // namespace

nlohmann::json stage_correlate(const PipelineConfig& cfg) {
    apply_runtime(cfg);
    const auto rankings = load_rankings_from_table(artifact_path(cfg, artifacts::metrics_table));
    const auto matrix = correlation_matrix(rankings);
    write_file(artifact_path(cfg, artifacts::correlation),
               [&](std::ostream& o) { write_correlation_csv(o, matrix); });

    nlohmann::json flagged = nlohmann::json::array();
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = i + 1; j < matrix.size(); ++j) {
            if (matrix.status_at(i, j) != CellStatus::Ok) {
                flagged.push_back({{"a", matrix.labels[i]},
                                   {"b", matrix.labels[j]},
                                   {"status", to_string(matrix.status_at(i, j))}});
            }
        }
    }
    nlohmann::json report = {{"metrics", matrix.size()},
                             {"common_n", matrix.common_n},
                             {"flagged", flagged}};
    open_output(artifact_path(cfg, artifacts::correlation_report)) << report.dump(2) << '\n';
    return report;
}

nlohmann::json stage_pca(const PipelineConfig& cfg) {
    apply_runtime(cfg);
    auto in = open_input(artifact_path(cfg, artifacts::correlation));
    const auto matrix = read_correlation_csv(in);
    const auto projection = pca(matrix, std::min(cfg.pca_components, matrix.size()));
    write_file(artifact_path(cfg, artifacts::pca_table),
               [&](std::ostream& o) { write_pca_csv(o, projection); });
    open_output(artifact_path(cfg, artifacts::pca_svg)) << pca_scatter_svg(projection);

    const std::size_t k = projection.coordinates.empty() ? 0 : projection.coordinates[0].size();
    nlohmann::json explained = nlohmann::json::array();
    for (std::size_t m = 0; m < k; ++m) explained.push_back(projection.explained[m]);
    return {{"components", k}, {"explained", explained}};
}

// ---------------------------------------------------------------------------
// map
// ---------------------------------------------------------------------------

namespace {

nlohmann::json map_one_network(const PipelineConfig& cfg, const WeightedDigraph& g,
                               const std::string& tag) {
    const auto pruned = prune(g, cfg.prune_spec);
    const auto params = graph_params(pruned);
    const auto lcc = largest_connected_component(pruned);
    FrOptions fr;
    fr.iterations = cfg.layout_iterations;
    const auto layout = fr_layout(lcc, cfg.layout_seed, fr);

    MapStyle style;
    style.label_top = cfg.label_top;
    open_output(cfg.outdir + "/map_" + tag + ".svg") << export_map_svg(layout, lcc, style);
    write_file(cfg.outdir + "/map_" + tag + ".dot",
               [&](std::ostream& o) { write_dot(o, lcc); });
    write_file(cfg.outdir + "/map_" + tag + ".graphml",
               [&](std::ostream& o) { write_graphml(o, lcc); });

    auto layout_out = open_output(cfg.outdir + "/layout_" + tag + ".csv");
    layout_out << "journal_id,x,y,radius\n";
    for (std::size_t i = 0; i < layout.journals.size(); ++i) {
        layout_out << layout.journals[i] << ',' << format_double(layout.positions[i].first)
                   << ',' << format_double(layout.positions[i].second) << ','
                   << format_double(layout.radii[i]) << '\n';
    }

    nlohmann::json params_json = {
        {"connections", params.edge_count},
        {"max_connection_strength", params.max_weight},
        {"min_connection_strength", params.min_positive_weight},
        {"density", params.density},
        {"hierarchy", params.hierarchy},
    };
    if (params.centralization) params_json["centralization"] = *params.centralization;
    else params_json["centralization"] = nullptr;
    params_json["lcc_nodes"] = lcc.node_count();
    open_output(cfg.outdir + "/params_" + tag + ".json") << params_json.dump(2) << '\n';
    return params_json;
}

} // namespace

nlohmann::json stage_map(const PipelineConfig& cfg) {
    apply_runtime(cfg);
    nlohmann::json counters;
    if (fs::exists(artifact_path(cfg, artifacts::usage_edges))) {
        auto in = open_input(artifact_path(cfg, artifacts::usage_edges));
        const auto g = read_edge_list(in, false);
        if (g.node_count() > 0) counters["uses"] = map_one_network(cfg, g, "uses");
    }
    if (fs::exists(artifact_path(cfg, artifacts::citation_edges))) {
        auto in = open_input(artifact_path(cfg, artifacts::citation_edges));
        const auto g = read_edge_list(in, true);
        if (g.node_count() > 0) counters["cite"] = map_one_network(cfg, g, "cite");
    }
    return counters;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

void validate_config(const PipelineConfig& cfg) {
    if (cfg.outdir.empty()) throw ConfigError("outdir is required");
    if (cfg.salt.empty()) throw ConfigError("anonymization salt is required");
    if (cfg.usage_logs.empty()) throw ConfigError("at least one usage log is required");
    for (const auto& p : cfg.usage_logs)
        if (!fs::exists(p)) throw ConfigError("usage log does not exist: " + p);
    if (cfg.journal_registry_path.empty())
        throw ConfigError("journal registry path is required");
    if (!fs::exists(cfg.journal_registry_path))
        throw ConfigError("journal registry does not exist: " + cfg.journal_registry_path);
    if (!cfg.equivalences_path.empty() && !fs::exists(cfg.equivalences_path))
        throw ConfigError("equivalence table does not exist: " + cfg.equivalences_path);
    if (!cfg.metric_registry_path.empty() && !fs::exists(cfg.metric_registry_path))
        throw ConfigError("metric registry does not exist: " + cfg.metric_registry_path);
    if (!(cfg.pagerank.damping > 0.0 && cfg.pagerank.damping < 1.0))
        throw ConfigError("PageRank damping must lie in (0, 1)");
    if (cfg.resolver.threshold < 0.0 || cfg.resolver.threshold > 1.0)
        throw ConfigError("fuzzy threshold must lie in [0, 1]");
    if (cfg.session_timeout <= 0.0) throw ConfigError("session timeout must be positive");
    if (cfg.prune_spec.top_k_edges == 0 || cfg.prune_spec.per_node_cap == 0)
        throw ConfigError("prune bounds must be positive");
    if (cfg.pca_components == 0) throw ConfigError("pca components must be positive");
}

RunOutcome run_pipeline(const PipelineConfig& cfg) {
    validate_config(cfg); // config problems surface before any stage runs
    apply_runtime(cfg);
    RunOutcome outcome;
    nlohmann::json stages = nlohmann::json::array();

    struct StageDef {
        const char* name;
        nlohmann::json (*fn)(const PipelineConfig&);
    };
    const StageDef defs[] = {
        {"ingest", stage_ingest},       {"sessionize", stage_sessionize},
        {"resolve", stage_resolve},     {"netbuild", stage_netbuild},
        {"metrics", stage_metrics},     {"correlate", stage_correlate},
        {"pca", stage_pca},             {"map", stage_map},
    };

    std::string failure;
    std::vector<std::string> partial_reasons;
    for (const auto& def : defs) {
        const auto t0 = std::chrono::steady_clock::now();
        nlohmann::json counters;
        try {
            counters = def.fn(cfg);
        } catch (const std::exception& e) {
            failure = std::string(def.name) + ": " + e.what();
            stages.push_back({{"stage", def.name}, {"error", e.what()}});
            break;
        }
        const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
        if (std::string(def.name) == "metrics" && counters.contains("skipped") &&
            !counters["skipped"].empty()) {
            partial_reasons.push_back("metrics skipped " +
                                      std::to_string(counters["skipped"].size()) + " specs");
        }
        stages.push_back({{"stage", def.name}, {"wall_ms", wall_ms}, {"counters", counters}});
    }

    outcome.report["stages"] = stages;
    if (!failure.empty()) {
        outcome.report["status"] = "failed";
        outcome.report["error"] = failure;
        outcome.exit_code = 2;
    } else if (!partial_reasons.empty()) {
        outcome.report["status"] = "partial";
        outcome.report["partial"] = partial_reasons;
        outcome.exit_code = 3;
    } else {
        outcome.report["status"] = "ok";
        outcome.exit_code = 0;
    }
    open_output(artifact_path(cfg, artifacts::report)) << outcome.report.dump(2) << '\n';
    return outcome;
}

} // namespace scinet
