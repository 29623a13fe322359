// Acceptance suite: one entry per criterion, each timed and reported as a
// single PASS/FAIL line. Run with no arguments for the whole suite, with a
// number for one criterion; the optional second argument is the CLI binary
// used by the end-to-end determinism criterion.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "oracles.hpp"
#include "scinet/graph_io.hpp"
#include "scinet/identify.hpp"
#include "scinet/metricstats.hpp"
#include "scinet/netbuild.hpp"
#include "scinet/pipeline.hpp"
#include "scinet/scimap.hpp"
#include "scinet/sessionize.hpp"
#include "scinet/synth.hpp"

namespace fs = std::filesystem;
using namespace scinet;

namespace {

std::string g_cli_path = "../scinet";

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::map<std::string, std::size_t> load_truth_communities(const std::string& path) {
    std::map<std::string, std::size_t> out;
    std::ifstream in(path);
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        out[line.substr(0, comma)] = std::stoul(line.substr(comma + 1));
    }
    return out;
}

// ---------------------------------------------------------------------------
// 1. Centrality oracle suite
// ---------------------------------------------------------------------------

Outcome criterion_1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260401);
    const double tol = 1e-8;
    std::size_t checks = 0;

    auto close = [&](const std::vector<double>& got, const std::vector<double>& want) {
        if (got.size() != want.size()) return false;
        for (std::size_t i = 0; i < got.size(); ++i)
            if (std::abs(got[i] - want[i]) > tol) return false;
        return true;
    };

    for (int trial = 0; trial < 200 && o.pass; ++trial) {
        const auto tg = oracle::random_graph(rng, 4, 8);
        const auto g = tg.to_graph();
        for (const bool weighted : {false, true}) {
            for (const bool incoming : {false, true}) {
                const auto dir = incoming ? Direction::In : Direction::Out;
                if (!close(degree_scores(g, dir, weighted), oracle::degree(tg, incoming, weighted)))
                    o.fail("degree mismatch at trial " + std::to_string(trial));
                if (!close(entropy_scores(g, dir, weighted),
                           oracle::entropy(tg, incoming, weighted)))
                    o.fail("entropy mismatch at trial " + std::to_string(trial));
                checks += 2;
            }
            for (const bool norm : {false, true}) {
                if (!close(closeness_scores(g, weighted, norm),
                           oracle::closeness(tg, weighted, norm)))
                    o.fail("closeness mismatch at trial " + std::to_string(trial));
                if (!close(betweenness_scores(g, weighted, norm),
                           oracle::betweenness(tg, weighted, norm)))
                    o.fail("betweenness mismatch at trial " + std::to_string(trial));
                if (!close(newman_load_scores(g, weighted, norm),
                           oracle::newman_load(tg, weighted, norm)))
                    o.fail("random-walk betweenness mismatch at trial " + std::to_string(trial));
                checks += 3;
            }
            PageRankOptions opts;
            opts.tol = 1e-13;
            opts.max_iter = 5000;
            if (!close(pagerank_scores(g, weighted, opts).scores,
                       oracle::pagerank(tg, weighted, opts.damping, 1e-13, 5000)))
                o.fail("pagerank mismatch at trial " + std::to_string(trial));
            ++checks;
        }
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 60.0) o.fail("runtime " + std::to_string(elapsed) + "s exceeds 60s");
    o.detail += "200 graphs, " + std::to_string(checks) + " score-vector checks, " +
                format_fixed(elapsed, 1) + "s";
    return o;
}

// ---------------------------------------------------------------------------
// 2. Spearman / PCA correctness
// ---------------------------------------------------------------------------

Outcome criterion_2() {
    Outcome o;
    std::mt19937_64 rng(20260402);

    // Tie-free: closed form 1 - 6 sum d^2 / (n(n^2-1)).
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 5 + rng() % 45;
        std::vector<std::string> journals;
        for (std::size_t i = 0; i < n; ++i) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "j%04zu", i);
            journals.emplace_back(buf);
        }
        std::vector<double> ra(n), rb(n);
        for (std::size_t i = 0; i < n; ++i) ra[i] = rb[i] = static_cast<double>(i + 1);
        std::shuffle(ra.begin(), ra.end(), rng);
        std::shuffle(rb.begin(), rb.end(), rng);
        double d2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
        const double nn = static_cast<double>(n);
        const double closed = 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
        const auto got = spearman_ranks(journals, ra, journals, rb);
        if (got.status != CellStatus::Ok || std::abs(got.value - closed) > 1e-10) {
            o.fail("closed-form mismatch at trial " + std::to_string(trial));
            break;
        }
    }

    // Tied: average-rank Pearson oracle.
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 10 + rng() % 40;
        std::vector<std::string> journals;
        for (std::size_t i = 0; i < n; ++i) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "j%04zu", i);
            journals.emplace_back(buf);
        }
        std::vector<double> sa(n), sb(n);
        for (auto& v : sa) v = static_cast<double>(rng() % 6);
        for (auto& v : sb) v = static_cast<double>(rng() % 6);
        const auto ra = average_ranks(sa);
        const auto rb = average_ranks(sb);
        const auto got = spearman_ranks(journals, ra, journals, rb);
        if (got.status != CellStatus::Ok) continue; // constant vectors are flagged
        double ma = 0, mb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            ma += ra[i];
            mb += rb[i];
        }
        ma /= static_cast<double>(n);
        mb /= static_cast<double>(n);
        double num = 0, da = 0, db = 0;
        for (std::size_t i = 0; i < n; ++i) {
            num += (ra[i] - ma) * (rb[i] - mb);
            da += (ra[i] - ma) * (ra[i] - ma);
            db += (rb[i] - mb) * (rb[i] - mb);
        }
        const double want = num / std::sqrt(da * db);
        if (std::abs(got.value - want) > 1e-10) {
            o.fail("tied-case mismatch at trial " + std::to_string(trial));
            break;
        }
    }

    // PCA reconstruction of random symmetric PSD matrices.
    for (int trial = 0; trial < 60 && o.pass; ++trial) {
        const std::size_t n = 3 + rng() % 10;
        std::vector<std::vector<double>> a(n, std::vector<double>(n));
        for (auto& row : a)
            for (auto& v : row) v = static_cast<double>(rng() % 2000) / 1000.0 - 1.0;
        CorrelationMatrix c;
        c.values.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            c.labels.push_back("m" + std::to_string(i));
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += a[i][k] * a[j][k];
                c.values[i * n + j] = s;
            }
        }
        c.statuses.assign(n * n, CellStatus::Ok);
        const auto p = pca(c, n);
        const auto dec = symmetric_eigen(c.values, n);
        for (std::size_t i = 0; i < n && o.pass; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    s += dec.values[k] * dec.vectors[k][i] * dec.vectors[k][j];
                if (std::abs(s - c.values[i * n + j]) > 1e-8) {
                    o.fail("reconstruction error at trial " + std::to_string(trial));
                    break;
                }
            }
        }
        double total = 0.0;
        for (const double e : p.explained) total += e;
        if (std::abs(total - 1.0) > 1e-9)
            o.fail("explained fractions sum to " + format_double(total));
    }
    o.detail += "spearman closed-form + tie oracle, PSD reconstruction at 1e-8";
    return o;
}

// ---------------------------------------------------------------------------
// 3. 47-metric catalog at 5,000 journals
// ---------------------------------------------------------------------------

Outcome criterion_3() {
    Outcome o;
    const std::string corpus = "t_acc3_corpus", out = "t_acc3_out";
    fs::remove_all(corpus);
    fs::remove_all(out);

    SynthSpec spec;
    spec.communities = 250;
    spec.journals_per_community = 20; // 5,000 journals
    spec.sessions = 30000;
    spec.human_min_events = 2;
    spec.human_max_events = 8;
    spec.cross_community_probability = 0.02;
    spec.bot_fraction = 0.02;
    spec.keyless_fraction = 0.1;
    spec.intra_citation_partners = 5;
    spec.inter_citation_partners = 1;
    spec.seed = 33;
    generate_corpus(spec, corpus);

    const auto files = synth_file_names(corpus);
    PipelineConfig cfg;
    cfg.outdir = out;
    cfg.usage_logs = {files.usage_log};
    cfg.journal_registry_path = files.registry;
    cfg.citations_path = files.citations;
    cfg.article_counts_path = files.article_counts;
    cfg.salt = "acceptance-3";
    cfg.census_year = 2005;

    const auto t0 = std::chrono::steady_clock::now();
    try {
        stage_ingest(cfg);
        stage_sessionize(cfg);
        stage_resolve(cfg);
        stage_netbuild(cfg);
        const auto metrics = stage_metrics(cfg);
        if (metrics.at("rankings") != 47)
            o.fail("expected 47 rankings, got " + metrics.at("rankings").dump());
        if (!metrics.at("skipped").empty()) o.fail("catalog skipped specs");
        stage_correlate(cfg);
        stage_pca(cfg);
    } catch (const std::exception& e) {
        o.fail(std::string("pipeline failure: ") + e.what());
        return o;
    }
    const double elapsed = seconds_since(t0);

    std::ifstream corr_in(out + "/" + std::string(artifacts::correlation));
    const auto matrix = read_correlation_csv(corr_in);
    if (matrix.size() != 47) o.fail("correlation matrix is not 47x47");
    if (!matrix.symmetric(0.0)) o.fail("correlation matrix asymmetric");
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        if (matrix.at(i, i) != 1.0) o.fail("unit diagonal violated");
        for (std::size_t j = 0; j < matrix.size(); ++j)
            if (matrix.at(i, j) < -1.0 || matrix.at(i, j) > 1.0) o.fail("entry outside [-1,1]");
    }

    // The PCA table carries one 2-D row per metric plus the explained row.
    std::ifstream pca_in(out + "/" + std::string(artifacts::pca_table));
    std::string line;
    std::getline(pca_in, line);
    if (line != "metric,pca1,pca2") o.fail("unexpected pca header: " + line);
    std::size_t rows = 0;
    bool explained_row = false;
    while (std::getline(pca_in, line)) {
        if (line.empty()) continue;
        if (line.rfind("explained,", 0) == 0) explained_row = true;
        else ++rows;
    }
    if (rows != 47) o.fail("pca rows " + std::to_string(rows));
    if (!explained_row) o.fail("missing explained-variance row");

    if (elapsed >= 300.0) o.fail("runtime " + format_fixed(elapsed, 1) + "s exceeds 300s");
    o.detail += "47 rankings over 5,000 journals, 47x47 matrix, 2-D map, " +
                format_fixed(elapsed, 1) + "s";
    fs::remove_all(corpus);
    fs::remove_all(out);
    return o;
}

// ---------------------------------------------------------------------------
// 4. Planted-structure recovery
// ---------------------------------------------------------------------------

Outcome criterion_4() {
    Outcome o;
    const std::string corpus = "t_acc4_corpus", out = "t_acc4_out";
    fs::remove_all(corpus);
    fs::remove_all(out);

    SynthSpec spec;
    spec.communities = 2;
    spec.journals_per_community = 20;
    spec.sessions = 10000;
    spec.cross_community_probability = 0.05;
    spec.bot_fraction = 0.0;
    spec.keyless_fraction = 0.0;
    spec.seed = 44;
    generate_corpus(spec, corpus);

    const auto files = synth_file_names(corpus);
    PipelineConfig cfg;
    cfg.outdir = out;
    cfg.usage_logs = {files.usage_log};
    cfg.journal_registry_path = files.registry;
    cfg.salt = "acceptance-4";

    const auto t0 = std::chrono::steady_clock::now();
    stage_ingest(cfg);
    stage_sessionize(cfg);
    stage_resolve(cfg);
    stage_netbuild(cfg);

    std::ifstream edges_in(out + "/" + std::string(artifacts::usage_edges));
    const auto g = read_edge_list(edges_in, false);
    const auto communities = load_truth_communities(corpus + "/truth_journals.csv");

    double intra = 0.0, inter = 0.0;
    for (const auto& e : g.edges()) {
        const auto ca = communities.at(g.id_of(e.src));
        const auto cb = communities.at(g.id_of(e.dst));
        (ca == cb ? intra : inter) += e.weight;
    }
    if (inter <= 0.0 || intra / inter < 5.0)
        o.fail("intra/inter weight ratio " + format_fixed(inter > 0 ? intra / inter : 0.0, 2) +
               " below 5");

    const auto lcc = largest_connected_component(g);
    const auto layout = fr_layout(lcc, 4242);
    double intra_sum = 0.0, inter_sum = 0.0;
    std::size_t intra_n = 0, inter_n = 0;
    for (std::size_t i = 0; i < layout.journals.size(); ++i) {
        for (std::size_t j = i + 1; j < layout.journals.size(); ++j) {
            const double dx = layout.positions[i].first - layout.positions[j].first;
            const double dy = layout.positions[i].second - layout.positions[j].second;
            const double d = std::sqrt(dx * dx + dy * dy);
            if (communities.at(layout.journals[i]) == communities.at(layout.journals[j])) {
                intra_sum += d;
                ++intra_n;
            } else {
                inter_sum += d;
                ++inter_n;
            }
        }
    }
    const double mean_intra = intra_sum / static_cast<double>(intra_n);
    const double mean_inter = inter_sum / static_cast<double>(inter_n);
    if (!(mean_intra < mean_inter))
        o.fail("layout means: intra " + format_fixed(mean_intra, 4) + " !< inter " +
               format_fixed(mean_inter, 4));

    const double elapsed = seconds_since(t0);
    if (elapsed >= 120.0) o.fail("runtime " + format_fixed(elapsed, 1) + "s exceeds 120s");
    o.detail += "weight ratio " + format_fixed(inter > 0 ? intra / inter : 0.0, 1) +
                "x, layout " + format_fixed(mean_intra, 3) + " < " +
                format_fixed(mean_inter, 3) + ", " + format_fixed(elapsed, 1) + "s";
    fs::remove_all(corpus);
    fs::remove_all(out);
    return o;
}

// ---------------------------------------------------------------------------
// 5. Bot filtering
// ---------------------------------------------------------------------------

Outcome criterion_5() {
    Outcome o;
    const std::string corpus = "t_acc5_corpus", out = "t_acc5_out";
    fs::remove_all(corpus);
    fs::remove_all(out);

    SynthSpec spec;
    spec.communities = 4;
    spec.journals_per_community = 10;
    spec.sessions = 4000;
    spec.human_min_events = 2;
    spec.human_max_events = 30;
    spec.human_min_gap = 5.0;
    spec.human_max_gap = 300.0;
    spec.bot_fraction = 0.3;
    spec.bot_min_events = 200;
    spec.bot_max_events = 400;
    spec.bot_min_gap = 0.05;
    spec.bot_max_gap = 0.5;
    spec.keyless_fraction = 0.0; // keep the truth join exact
    spec.seed = 55;
    const auto corpus_truth = generate_corpus(spec, corpus);

    const auto files = synth_file_names(corpus);
    PipelineConfig cfg;
    cfg.outdir = out;
    cfg.usage_logs = {files.usage_log};
    cfg.salt = "acceptance-5";
    stage_ingest(cfg);
    stage_sessionize(cfg);

    std::map<std::string, bool> truth;
    for (const auto& s : corpus_truth.sessions) truth["k:" + s.session_key] = s.is_bot;

    std::size_t bots = 0, bot_hits = 0, humans = 0, human_misses = 0;
    std::ifstream store(out + "/" + std::string(artifacts::sessions));
    std::string line;
    std::size_t parsed = 0;
    while (std::getline(store, line)) {
        if (line.empty()) continue;
        const auto s = parse_session_line(line);
        if (!s) {
            o.fail("unparseable session line");
            break;
        }
        ++parsed;
        const auto it = truth.find(s->session_id);
        if (it == truth.end()) {
            o.fail("session without ground truth: " + s->session_id);
            break;
        }
        const bool classified_robot = s->classification == Classification::Robot;
        if (it->second) {
            ++bots;
            if (classified_robot) ++bot_hits;
        } else {
            ++humans;
            if (classified_robot) ++human_misses;
        }
    }
    if (parsed != spec.sessions) o.fail("session count mismatch");
    const double recall = bots ? static_cast<double>(bot_hits) / static_cast<double>(bots) : 0.0;
    const double fpr =
        humans ? static_cast<double>(human_misses) / static_cast<double>(humans) : 1.0;
    if (recall < 0.99) o.fail("bot recall " + format_fixed(recall, 4));
    if (fpr > 0.01) o.fail("human false-positive rate " + format_fixed(fpr, 4));
    o.detail += "recall " + format_fixed(recall * 100.0, 2) + "%, fpr " +
                format_fixed(fpr * 100.0, 2) + "% over " + std::to_string(parsed) + " sessions";
    fs::remove_all(corpus);
    fs::remove_all(out);
    return o;
}

// ---------------------------------------------------------------------------
// 6. De-duplication fixture
// ---------------------------------------------------------------------------

Outcome criterion_6() {
    Outcome o;
    std::mt19937_64 rng(20260406);

    const char* adjectives[] = {"applied",    "theoretical",  "clinical",   "molecular",
                                "european",   "quantitative", "structural", "comparative",
                                "industrial", "cognitive",    "maritime",   "veterinary"};
    // Pool chosen so every pair of nouns is at least 4 edits apart, which
    // keeps 2-character perturbations unambiguous.
    const char* nouns[] = {"physics",   "chemistry",  "biology",     "medicine",
                           "genetics",  "materials",  "neuroscience", "statistics",
                           "economics", "psychology", "hydrology",    "astronomy",
                           "toxicology", "linguistics", "climatology", "oceanography"};

    std::vector<CanonicalJournal> registry;
    std::map<std::string, std::string> equivalences;
    std::vector<std::string> titles;
    auto abbreviate = [](const std::string& title) {
        std::string abbrev;
        std::istringstream words(title);
        std::string w;
        while (words >> w) {
            abbrev += w.substr(0, std::min<std::size_t>(4, w.size()));
            abbrev += ' ';
        }
        return abbrev;
    };
    for (int i = 0; i < 100; ++i) {
        const std::string adj = adjectives[i % 12];
        const std::string noun = nouns[(i / 12) % 16];
        const std::string title = "journal of " + adj + " " + noun;
        titles.push_back(title);
        CanonicalJournal j;
        j.journal_id = "gt" + std::to_string(i);
        j.canonical_title = title;
        j.issns.insert(make_issn(static_cast<std::uint32_t>(2000000 + i)));
        registry.push_back(j);
        equivalences[abbreviate(title)] = j.journal_id;
    }
    // Pairwise separation keeps 2-character edits unambiguous.
    for (std::size_t i = 0; i < titles.size(); ++i)
        for (std::size_t j = i + 1; j < titles.size(); ++j)
            if (levenshtein(titles[i], titles[j]) < 4)
                o.fail("fixture titles too close: " + titles[i] + " / " + titles[j]);

    JournalResolver resolver(registry, equivalences, {0.90, 0.02});

    std::size_t correct = 0, wrong_merges = 0, unresolved = 0;
    const std::size_t total = 500;
    for (int i = 0; i < 100; ++i) {
        const auto& truth = registry[static_cast<std::size_t>(i)];
        const std::string issn = *truth.issns.begin();
        std::vector<RawArtifactRef> variants;
        // 1: exact ISSN with a useless title.
        variants.push_back({"v1", issn, "record " + std::to_string(i), {}});
        // 2: clean title, no ISSN.
        variants.push_back({"v2", "", titles[static_cast<std::size_t>(i)], {}});
        // 3: one or two character edits beyond the first token.
        std::string edited = titles[static_cast<std::size_t>(i)];
        const int edits = 1 + static_cast<int>(rng() % 2);
        for (int e = 0; e < edits; ++e) {
            const std::size_t pos = 8 + rng() % (edited.size() - 8);
            edited[pos] = static_cast<char>('a' + rng() % 26);
        }
        variants.push_back({"v3", "", edited, {}});
        // 4: registered abbreviation.
        variants.push_back({"v4", "", abbreviate(titles[static_cast<std::size_t>(i)]), {}});
        // 5: punctuation and case noise.
        std::string noisy;
        for (const char c : titles[static_cast<std::size_t>(i)]) {
            noisy += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            if (c == ' ' && rng() % 2 == 0) noisy += ". ";
        }
        noisy += "!!";
        variants.push_back({"v5", "", noisy, {}});

        for (const auto& raw : variants) {
            const auto d = resolver.resolve(raw);
            if (!d.resolved) ++unresolved;
            else if (*d.resolved == truth.journal_id) ++correct;
            else ++wrong_merges;
        }
    }
    const double rate = static_cast<double>(correct) / static_cast<double>(total);
    if (rate < 0.95) o.fail("correct resolution rate " + format_fixed(rate, 4));
    if (wrong_merges != 0) o.fail(std::to_string(wrong_merges) + " incorrect merges");
    o.detail += format_fixed(rate * 100.0, 1) + "% correct, " + std::to_string(wrong_merges) +
                " wrong merges, " + std::to_string(unresolved) + " unresolved of 500";
    return o;
}

// ---------------------------------------------------------------------------
// 7. Pruning / LCC semantics at scale
// ---------------------------------------------------------------------------

Outcome criterion_7() {
    Outcome o;
    std::mt19937_64 rng(20260407);
    const int n = 6000;
    GraphBuilder b(false);
    std::set<std::pair<int, int>> seen;
    auto name = [](int v) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "v%05d", v);
        return std::string(buf);
    };
    while (seen.size() < 100000) {
        int u = static_cast<int>(rng() % n);
        int v = static_cast<int>(rng() % n);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second) continue;
        b.add_edge(name(u), name(v), static_cast<double>(1 + rng() % 1000));
    }
    const auto g = b.build();
    if (g.edge_count() != 100000) o.fail("fixture edge count off");

    const PruneSpec spec{5000, 12};
    const auto pruned = prune(g, spec);
    if (pruned.edge_count() > 5000)
        o.fail("pruned edge count " + std::to_string(pruned.edge_count()));

    // Recompute phase 1 independently.
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& bb) {
        if (a.weight != bb.weight) return a.weight > bb.weight;
        return std::pair{a.src, a.dst} < std::pair{bb.src, bb.dst};
    });
    edges.resize(5000);
    std::set<std::pair<std::string, std::string>> top_k;
    for (const auto& e : edges) top_k.insert({g.id_of(e.src), g.id_of(e.dst)});
    // Independent per-node retention among the surviving phase-1 edges.
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> incident;
    for (const auto& e : edges) {
        incident[g.id_of(e.src)].push_back({g.id_of(e.src), g.id_of(e.dst)});
        incident[g.id_of(e.dst)].push_back({g.id_of(e.src), g.id_of(e.dst)});
    }
    std::set<std::pair<std::string, std::string>> retained;
    for (const auto& [node, list] : incident) {
        const std::size_t keep = std::min<std::size_t>(list.size(), 12);
        for (std::size_t i = 0; i < keep; ++i) retained.insert(list[i]);
    }
    std::size_t survivors = 0;
    for (const auto& e : pruned.edges()) {
        const std::pair<std::string, std::string> key{pruned.id_of(e.src), pruned.id_of(e.dst)};
        ++survivors;
        if (!top_k.contains(key)) o.fail("survivor outside the top-5000 set");
        if (!retained.contains(key)) o.fail("survivor not retained by any endpoint");
        if (pruned.weight(key.first, key.second) != g.weight(key.first, key.second))
            o.fail("weight changed by pruning");
    }
    if (survivors != retained.size()) o.fail("survivor set mismatch with the two-phase oracle");

    // Per-node retained-by-self counts stay within the cap.
    std::map<std::string, std::size_t> self_retained;
    for (const auto& [node, list] : incident) {
        const std::size_t keep = std::min<std::size_t>(list.size(), 12);
        std::size_t kept_here = 0;
        for (std::size_t i = 0; i < keep; ++i)
            if (retained.contains(list[i])) ++kept_here;
        self_retained[node] = kept_here;
    }
    for (const auto& [node, count] : self_retained)
        if (count > 12) o.fail("retained-by-self over cap at " + node);

    // LCC against a union-find oracle: exact node and edge sets.
    const auto lcc = largest_connected_component(pruned);
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        return it->second = find(it->second);
    };
    for (const auto& e : pruned.edges()) {
        const auto ra = find(pruned.id_of(e.src));
        const auto rb = find(pruned.id_of(e.dst));
        parent[pruned.id_of(e.src)] = ra;
        if (ra != rb) parent[ra] = rb;
    }
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& id : pruned.node_ids()) groups[find(id)].push_back(id);
    std::vector<std::string> best;
    for (const auto& [root, members] : groups) {
        if (members.size() > best.size() ||
            (members.size() == best.size() && !best.empty() && members.front() < best.front()))
            best = members;
    }
    if (lcc.node_count() != best.size()) o.fail("LCC size disagrees with union-find");
    for (const auto& id : best)
        if (!lcc.index_of(id)) o.fail("LCC membership disagrees at " + id);
    std::size_t expected_edges = 0;
    std::set<std::string> members(best.begin(), best.end());
    for (const auto& e : pruned.edges())
        if (members.contains(pruned.id_of(e.src))) ++expected_edges;
    if (lcc.edge_count() != expected_edges) o.fail("LCC edge set disagrees");

    o.detail += std::to_string(pruned.edge_count()) + " pruned edges, LCC " +
                std::to_string(lcc.node_count()) + " nodes, exact oracle agreement";
    return o;
}

// ---------------------------------------------------------------------------
// 8. End-to-end determinism and throughput
// ---------------------------------------------------------------------------

Outcome criterion_8() {
    Outcome o;
    const std::string corpus = "t_acc8_corpus";
    const std::string out_a = "t_acc8_a", out_b = "t_acc8_b";
    fs::remove_all(corpus);
    fs::remove_all(out_a);
    fs::remove_all(out_b);

    SynthSpec spec;
    spec.communities = 25;
    spec.journals_per_community = 20; // 500 journals
    spec.sessions = 1430000;
    spec.human_min_events = 2;
    spec.human_max_events = 12; // ~7 events per human session
    spec.bot_fraction = 0.002;
    spec.keyless_fraction = 0.05;
    spec.cross_community_probability = 0.03;
    spec.seed = 88;
    generate_corpus(spec, corpus);

    const auto files = synth_file_names(corpus);
    auto run_once = [&](const std::string& out) {
        const std::string cmd = g_cli_path + " run --out " + out + " --usage " +
                                files.usage_log + " --journals " + files.registry +
                                " --citations " + files.citations + " --article-counts " +
                                files.article_counts +
                                " --salt acceptance-8 --census-year 2005 --seed 42" + " > " +
                                out + ".stdout 2>&1";
        const auto t0 = std::chrono::steady_clock::now();
        const int rc = std::system(cmd.c_str());
        return std::pair<int, double>{rc, seconds_since(t0)};
    };

    const auto [rc1, wall1] = run_once(out_a);
    if (rc1 != 0) {
        o.fail("first run exited " + std::to_string(rc1) + ": " + slurp(out_a + ".stdout"));
        return o;
    }
    const auto [rc2, wall2] = run_once(out_b);
    if (rc2 != 0) {
        o.fail("second run exited " + std::to_string(rc2));
        return o;
    }

    // The log really is at the ten-million-event scale.
    std::ifstream report_in(out_a + "/" + std::string(artifacts::report));
    const auto report = nlohmann::json::parse(report_in);
    std::uint64_t events = 0;
    for (const auto& stage : report.at("stages")) {
        if (stage.at("stage") == "ingest") events = stage.at("counters").at("events");
    }
    if (events < 10000000) o.fail("only " + std::to_string(events) + " events generated");

    if (wall1 >= 600.0) o.fail("run took " + format_fixed(wall1, 0) + "s, over 10 minutes");

    // Byte-identical artifacts; the report holds wall times and is the one
    // documented exception.
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(out_a)) {
        const auto name = entry.path().filename().string();
        if (name == artifacts::report) continue;
        if (slurp(entry.path().string()) != slurp(out_b + "/" + name))
            o.fail("artifact differs between runs: " + name);
        ++compared;
    }
    if (compared < 20) o.fail("unexpectedly few artifacts: " + std::to_string(compared));

    o.detail += std::to_string(events) + " events, run " + format_fixed(wall1, 0) + "s / " +
                format_fixed(wall2, 0) + "s, " + std::to_string(compared) +
                " artifacts byte-identical";
    fs::remove_all(corpus);
    fs::remove_all(out_a);
    fs::remove_all(out_b);
    fs::remove(out_a + ".stdout");
    fs::remove(out_b + ".stdout");
    return o;
}

// ---------------------------------------------------------------------------
// 9. Conflation and co-occurrence correctness
// ---------------------------------------------------------------------------

Outcome criterion_9() {
    Outcome o;
    std::mt19937_64 rng(20260409);

    std::vector<Session> sessions;
    for (int s = 0; s < 1000; ++s) {
        Session session;
        session.session_id = "k:s" + std::to_string(s);
        const std::size_t len = 1 + rng() % 20;
        std::int64_t t = 1000000 + static_cast<std::int64_t>(rng() % 100000);
        std::string last;
        for (std::size_t e = 0; e < len; ++e) {
            UsageEvent ev;
            ev.event_seq = static_cast<std::uint64_t>(s) * 100 + e;
            ev.session_key = session.session_id;
            // Half the time repeat the previous artifact to exercise runs.
            if (!last.empty() && rng() % 2 == 0) ev.artifact.source_id = last;
            else ev.artifact.source_id = "j" + std::to_string(rng() % 40);
            last = ev.artifact.source_id;
            ev.timestamp = t;
            t += static_cast<std::int64_t>(1 + rng() % 60);
            session.events.push_back(ev);
        }
        session.features = compute_features(session.events);
        sessions.push_back(std::move(session));
    }

    // Production route: conflate, then build.
    UsageNetworkBuilder builder(50);
    for (const auto& s : sessions) {
        const auto conflated = conflate_consecutive(s);
        std::vector<std::string> journals;
        for (const auto& e : conflated.events) journals.push_back(e.artifact.source_id);
        builder.add_session(journals);
    }
    const auto g = builder.build();

    // Oracle route: independent run collapse and pair enumeration.
    std::map<std::pair<std::string, std::string>, double> oracle_weights;
    for (const auto& s : sessions) {
        std::vector<std::string> collapsed;
        for (const auto& e : s.events) {
            if (collapsed.empty() || collapsed.back() != e.artifact.source_id)
                collapsed.push_back(e.artifact.source_id);
        }
        std::sort(collapsed.begin(), collapsed.end());
        collapsed.erase(std::unique(collapsed.begin(), collapsed.end()), collapsed.end());
        for (std::size_t i = 0; i < collapsed.size(); ++i)
            for (std::size_t j = i + 1; j < collapsed.size(); ++j)
                oracle_weights[{collapsed[i], collapsed[j]}] += 1.0;
    }

    std::size_t oracle_edges = 0;
    for (const auto& [pair, w] : oracle_weights) {
        ++oracle_edges;
        if (g.weight(pair.first, pair.second) != w) {
            o.fail("weight mismatch on " + pair.first + "-" + pair.second);
            break;
        }
    }
    if (g.edge_count() != oracle_edges) o.fail("edge count mismatch");
    o.detail += "1000 sessions, " + std::to_string(oracle_edges) + " edges, exact agreement";
    return o;
}

struct Criterion {
    int id;
    const char* summary;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "centrality oracle suite (200 random graphs, every variant, 1e-8)", criterion_1},
    {2, "spearman closed form and PCA reconstruction", criterion_2},
    {3, "47-metric catalog, 47x47 matrix, 2-D map at 5,000 journals", criterion_3},
    {4, "planted-structure recovery (weights and layout)", criterion_4},
    {5, "bot filtering recall/false-positive bounds", criterion_5},
    {6, "de-duplication on 500 perturbed variants", criterion_6},
    {7, "prune and LCC semantics on a 100k-edge graph", criterion_7},
    {8, "end-to-end determinism and throughput at 10M events", criterion_8},
    {9, "conflation + co-occurrence vs pair-enumeration oracle", criterion_9},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    if (argc > 2) g_cli_path = argv[2];

    bool all_pass = true;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double elapsed = seconds_since(t0);
        std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": "
                  << c.summary << " -- " << outcome.detail << " (" << format_fixed(elapsed, 1)
                  << "s)\n";
        std::cout.flush();
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
