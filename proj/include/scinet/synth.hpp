// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scinet/identify.hpp"

namespace scinet {

/// Parameters of the synthetic corpus generator. Human sessions draw
/// journals from their home community with probability 1 - epsilon;
/// bots emit long, fast sessions. Everything is seeded.
struct SynthSpec {
    std::size_t communities = 2;
    std::size_t journals_per_community = 20;
    std::size_t sessions = 1000;

    std::size_t human_min_events = 2;
    std::size_t human_max_events = 12;
    double human_min_gap = 5.0;   // seconds
    double human_max_gap = 300.0;

    double cross_community_probability = 0.05; // epsilon
    double bot_fraction = 0.0;
    std::size_t bot_min_events = 200;
    std::size_t bot_max_events = 400;
    double bot_min_gap = 0.05;
    double bot_max_gap = 0.5;

    double keyless_fraction = 0.1; // sessions identified only by agent
    std::size_t articles_per_journal = 20;

    int census_year = 2005; // citations occur here; window is the 2 prior years
    std::size_t intra_citation_partners = 6;
    std::size_t inter_citation_partners = 2;
    std::int64_t max_citation_count = 40;
    double self_citation_probability = 0.05;
    double stale_citation_probability = 0.05; // pub year outside the window

    std::int64_t min_articles_per_year = 5;
    std::int64_t max_articles_per_year = 60;

    std::int64_t start_time = 1136073600; // 2006-01-01T00:00:00Z
    std::int64_t time_span = 31536000;    // one year of activity

    std::uint64_t seed = 1;
};

struct SynthTruthSession {
    std::string session_key; // empty for keyless sessions
    std::string agent_id;    // raw agent, only for keyless sessions
    bool is_bot = false;
    std::size_t home_community = 0;
    std::size_t events = 0;
};

struct SynthCorpus {
    std::vector<CanonicalJournal> registry;
    std::vector<std::size_t> journal_community; // parallel to registry
    std::vector<SynthTruthSession> sessions;
};

struct SynthFiles {
    std::string usage_log;      // usage.csv
    std::string citations;      // citations.csv
    std::string article_counts; // article_counts.csv
    std::string registry;       // registry.csv
    std::string truth_sessions; // truth_sessions.csv
    std::string truth_journals; // truth_journals.csv
};

SynthFiles synth_file_names(const std::string& dir);

/// Writes the whole corpus (usage log, citation records, article counts,
/// journal registry, ground truth) under dir and returns the in-memory
/// ground truth.
SynthCorpus generate_corpus(const SynthSpec& spec, const std::string& dir);

/// Valid ISSN for a serial index (check digit computed).
std::string make_issn(std::uint32_t serial);

std::string synth_journal_id(std::size_t index);

} // namespace scinet
