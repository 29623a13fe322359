#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scinet/identify.hpp"
#include "scinet/ingest.hpp"
#include "scinet/synth.hpp"

using namespace scinet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

SynthSpec tiny_spec() {
    SynthSpec spec;
    spec.communities = 2;
    spec.journals_per_community = 5;
    spec.sessions = 120;
    spec.seed = 99;
    spec.bot_fraction = 0.2;
    return spec;
}

} // namespace

TEST_SUITE("synth") {

TEST_CASE("out-of-range generator parameters are rejected") {
    auto spec = tiny_spec();
    spec.bot_fraction = 1.5;
    CHECK_THROWS_AS(generate_corpus(spec, "t_synth_invalid"), ConfigError);
    spec = tiny_spec();
    spec.human_max_events = 1; // below the minimum
    CHECK_THROWS_AS(generate_corpus(spec, "t_synth_invalid"), ConfigError);
    fs::remove_all("t_synth_invalid");
}

TEST_CASE("generated ISSNs pass validation") {
    for (std::uint32_t i = 0; i < 500; ++i) REQUIRE(validate_issn(make_issn(1000000 + i)));
}

TEST_CASE("generation is deterministic for a fixed seed") {
    const std::string d1 = "t_synth_det1", d2 = "t_synth_det2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    generate_corpus(tiny_spec(), d1);
    generate_corpus(tiny_spec(), d2);
    for (const char* name :
         {"usage.csv", "citations.csv", "article_counts.csv", "registry.csv",
          "truth_sessions.csv", "truth_journals.csv"}) {
        REQUIRE(slurp(d1 + "/" + name) == slurp(d2 + "/" + name));
    }
    auto changed = tiny_spec();
    changed.seed = 100;
    fs::remove_all(d2);
    generate_corpus(changed, d2);
    CHECK(slurp(d1 + "/usage.csv") != slurp(d2 + "/usage.csv"));
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("zero bot fraction labels every session human in the ground truth") {
    const std::string dir = "t_synth_nobots";
    fs::remove_all(dir);
    auto spec = tiny_spec();
    spec.bot_fraction = 0.0;
    const auto corpus = generate_corpus(spec, dir);
    for (const auto& s : corpus.sessions) REQUIRE_FALSE(s.is_bot);
    fs::remove_all(dir);
}

TEST_CASE("the registry loads and covers every journal with one community") {
    const std::string dir = "t_synth_reg";
    fs::remove_all(dir);
    const auto corpus = generate_corpus(tiny_spec(), dir);
    std::ifstream reg(dir + "/registry.csv");
    const auto loaded = load_registry(reg);
    CHECK(loaded.size() == 10);
    CHECK(corpus.journal_community.size() == 10);
    for (const auto& j : loaded) REQUIRE_FALSE(j.issns.empty());
    fs::remove_all(dir);
}

TEST_CASE("generator honesty: session statistics match the requested parameters") {
    const std::string dir = "t_synth_honest";
    fs::remove_all(dir);
    SynthSpec spec;
    spec.communities = 3;
    spec.journals_per_community = 8;
    spec.sessions = 2000;
    spec.bot_fraction = 0.25;
    spec.seed = 7;
    const auto corpus = generate_corpus(spec, dir);

    std::size_t bots = 0;
    for (const auto& s : corpus.sessions) {
        if (s.is_bot) {
            ++bots;
            REQUIRE(s.events >= spec.bot_min_events);
            REQUIRE(s.events <= spec.bot_max_events);
        } else {
            REQUIRE(s.events >= spec.human_min_events);
            REQUIRE(s.events <= spec.human_max_events);
        }
        REQUIRE(s.home_community < spec.communities);
    }
    // 3-sigma band around the Bernoulli expectation.
    const double expected = 2000.0 * 0.25;
    const double sigma = std::sqrt(2000.0 * 0.25 * 0.75);
    CHECK(std::abs(static_cast<double>(bots) - expected) < 3.0 * sigma);

    // The usage log parses cleanly and in timestamp order.
    std::ifstream usage(dir + "/usage.csv");
    Anonymizer anon("salt");
    const auto parsed = parse_usage_log(usage, LogFormat::Delimited, anon);
    CHECK(parsed.errors.empty());
    std::size_t expected_events = 0;
    for (const auto& s : corpus.sessions) expected_events += s.events;
    CHECK(parsed.events.size() == expected_events);
    for (std::size_t i = 1; i < parsed.events.size(); ++i)
        REQUIRE(parsed.events[i].timestamp >= parsed.events[i - 1].timestamp);
    fs::remove_all(dir);
}

TEST_CASE("citation records stay within the configured years") {
    const std::string dir = "t_synth_cites";
    fs::remove_all(dir);
    auto spec = tiny_spec();
    spec.census_year = 2005;
    generate_corpus(spec, dir);
    std::ifstream in(dir + "/citations.csv");
    const auto parsed = parse_citation_records(in);
    CHECK(parsed.errors.empty());
    REQUIRE(!parsed.records.empty());
    bool saw_self = false, saw_stale = false;
    for (const auto& r : parsed.records) {
        REQUIRE(r.census_year == 2005);
        REQUIRE(r.pub_year <= 2005);
        if (r.citing_journal == r.cited_journal) saw_self = true;
        if (r.pub_year < 2003) saw_stale = true;
    }
    // The generator plants both edge cases for downstream filters.
    CHECK(saw_self);
    CHECK(saw_stale);
    fs::remove_all(dir);
}

} // TEST_SUITE
