// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "scinet/csv.hpp"
#include "scinet/ingest.hpp"

namespace scinet {

namespace {

double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t bound) {
    return bound == 0 ? 0 : rng() % bound;
}

std::int64_t next_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<std::int64_t>(next_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

double next_range_d(std::mt19937_64& rng, double lo, double hi) {
    return lo + next_unit(rng) * (hi - lo);
}

const char* const kAdjectives[] = {
    "applied",  "theoretical", "computational", "experimental", "clinical",  "molecular",
    "european", "international", "quantitative", "structural",  "comparative", "modern",
};
const char* const kNouns[] = {
    "physics",   "chemistry",  "biology",   "medicine",   "ecology",    "genetics",
    "materials", "neuroscience", "geology", "statistics", "linguistics", "economics",
    "psychology", "engineering", "mathematics", "agronomy",
};

std::string make_title(std::size_t index, std::mt19937_64& rng) {
    const auto a = kAdjectives[next_below(rng, std::size(kAdjectives))];
    const auto n1 = kNouns[next_below(rng, std::size(kNouns))];
    const auto n2 = kNouns[next_below(rng, std::size(kNouns))];
    std::string title = "journal of ";
    title += a;
    title += ' ';
    title += n1;
    if (n2 != n1) {
        title += " and ";
        title += n2;
    }
    title += " series ";
    title += std::to_string(index);
    return title;
}

struct PendingEvent {
    std::int64_t timestamp;
    std::uint64_t order; // global tie-break
    std::string session_key;
    std::string agent_id;
    std::uint32_t journal;
    std::uint32_t article;
    const char* request_type;
};

const char* const kRequestTypes[] = {"full_text", "abstract_view", "download", "other"};

} // namespace

std::string make_issn(std::uint32_t serial) {
    char digits[8];
    std::snprintf(digits, sizeof(digits), "%07u", serial % 10000000u);
    int sum = 0;
    for (int i = 0; i < 7; ++i) sum += (digits[i] - '0') * (8 - i);
    const int check = (11 - sum % 11) % 11;
    std::string out(digits, 7);
    out.insert(4, "-");
    out += check == 10 ? 'X' : static_cast<char>('0' + check);
    return out;
}

std::string synth_journal_id(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "j%05zu", index);
    return buf;
}

SynthFiles synth_file_names(const std::string& dir) {
    SynthFiles f;
    f.usage_log = dir + "/usage.csv";
    f.citations = dir + "/citations.csv";
    f.article_counts = dir + "/article_counts.csv";
    f.registry = dir + "/registry.csv";
    f.truth_sessions = dir + "/truth_sessions.csv";
    f.truth_journals = dir + "/truth_journals.csv";
    return f;
}

SynthCorpus generate_corpus(const SynthSpec& spec, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const auto files = synth_file_names(dir);
    std::mt19937_64 rng(spec.seed);
    SynthCorpus corpus;

    const std::size_t journal_count = spec.communities * spec.journals_per_community;
    if (journal_count == 0) throw ConfigError("synth spec yields zero journals");
    for (const double p : {spec.cross_community_probability, spec.bot_fraction,
                           spec.keyless_fraction, spec.self_citation_probability,
                           spec.stale_citation_probability}) {
        if (p < 0.0 || p > 1.0) throw ConfigError("synth probabilities must lie in [0, 1]");
    }
    if (spec.human_min_events == 0 || spec.human_max_events < spec.human_min_events ||
        spec.bot_min_events == 0 || spec.bot_max_events < spec.bot_min_events)
        throw ConfigError("synth event-count bounds must be positive and ordered");
    if (spec.articles_per_journal == 0) throw ConfigError("articles per journal must be positive");

    corpus.registry.reserve(journal_count);
    corpus.journal_community.reserve(journal_count);
    for (std::size_t j = 0; j < journal_count; ++j) {
        CanonicalJournal cj;
        cj.journal_id = synth_journal_id(j);
        cj.canonical_title = make_title(j, rng);
        cj.issns.insert(make_issn(static_cast<std::uint32_t>(1000000u + j)));
        corpus.registry.push_back(std::move(cj));
        corpus.journal_community.push_back(j / spec.journals_per_community);
    }

    {
        std::ofstream reg(files.registry);
        if (!reg) throw IoError("cannot write " + files.registry);
        write_registry(reg, corpus.registry);
    }
    {
        std::ofstream tj(files.truth_journals);
        if (!tj) throw IoError("cannot write " + files.truth_journals);
        tj << "journal_id,community\n";
        for (std::size_t j = 0; j < journal_count; ++j)
            tj << corpus.registry[j].journal_id << ',' << corpus.journal_community[j] << '\n';
    }

    // Sessions and their events.
    std::vector<PendingEvent> events;
    corpus.sessions.reserve(spec.sessions);
    std::uint64_t order = 0;
    for (std::size_t s = 0; s < spec.sessions; ++s) {
        SynthTruthSession truth;
        truth.is_bot = next_unit(rng) < spec.bot_fraction;
        truth.home_community = next_below(rng, spec.communities);
        const bool keyless = next_unit(rng) < spec.keyless_fraction;
        char key[32];
        if (keyless) {
            std::snprintf(key, sizeof(key), "visitor%07zu@host", s);
            truth.agent_id = key;
        } else {
            std::snprintf(key, sizeof(key), "s%08zu", s);
            truth.session_key = key;
        }
        const std::size_t length =
            truth.is_bot
                ? static_cast<std::size_t>(next_range(
                      rng, static_cast<std::int64_t>(spec.bot_min_events),
                      static_cast<std::int64_t>(spec.bot_max_events)))
                : static_cast<std::size_t>(next_range(
                      rng, static_cast<std::int64_t>(spec.human_min_events),
                      static_cast<std::int64_t>(spec.human_max_events)));
        truth.events = length;
        std::int64_t t = spec.start_time + next_range(rng, 0, spec.time_span - 1);
        double frac = 0.0;
        for (std::size_t e = 0; e < length; ++e) {
            std::size_t community = truth.home_community;
            if (spec.communities > 1 && next_unit(rng) < spec.cross_community_probability) {
                community = next_below(rng, spec.communities - 1);
                if (community >= truth.home_community) ++community;
            }
            const std::uint32_t journal = static_cast<std::uint32_t>(
                community * spec.journals_per_community +
                next_below(rng, spec.journals_per_community));
            const std::uint32_t article =
                static_cast<std::uint32_t>(next_below(rng, spec.articles_per_journal));
            PendingEvent ev;
            ev.timestamp = t;
            ev.order = order++;
            ev.session_key = truth.session_key;
            ev.agent_id = truth.agent_id;
            ev.journal = journal;
            ev.article = article;
            ev.request_type = kRequestTypes[next_below(rng, std::size(kRequestTypes))];
            events.push_back(std::move(ev));
            const double gap = truth.is_bot
                                   ? next_range_d(rng, spec.bot_min_gap, spec.bot_max_gap)
                                   : next_range_d(rng, spec.human_min_gap, spec.human_max_gap);
            frac += gap;
            const auto whole = static_cast<std::int64_t>(frac);
            t += std::max<std::int64_t>(whole, truth.is_bot ? 0 : 1);
            frac -= static_cast<double>(whole);
        }
        corpus.sessions.push_back(std::move(truth));
    }

    std::sort(events.begin(), events.end(), [](const PendingEvent& a, const PendingEvent& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.order < b.order;
    });

    {
        std::ofstream usage(files.usage_log);
        if (!usage) throw IoError("cannot write " + files.usage_log);
        usage << kUsageLogHeader << '\n';
        std::string line;
        for (const auto& ev : events) {
            const auto& journal = corpus.registry[ev.journal];
            char artifact[32];
            std::snprintf(artifact, sizeof(artifact), "a%05u.%03u", ev.journal, ev.article);
            line.clear();
            line += ev.session_key;
            line += ',';
            line += ev.agent_id;
            line += ',';
            line += format_rfc3339(ev.timestamp);
            line += ',';
            line += artifact;
            line += ',';
            line += *journal.issns.begin();
            line += ",,";
            line += std::to_string(2000 + static_cast<int>(ev.journal % 7));
            line += ',';
            line += ev.request_type;
            usage << line << '\n';
        }
    }
    {
        std::ofstream truth(files.truth_sessions);
        if (!truth) throw IoError("cannot write " + files.truth_sessions);
        truth << "session_key,agent_id,is_bot,home_community,events\n";
        for (const auto& s : corpus.sessions) {
            truth << s.session_key << ',' << s.agent_id << ',' << (s.is_bot ? 1 : 0) << ','
                  << s.home_community << ',' << s.events << '\n';
        }
    }

    // Citation records and article counts over the two preceding years.
    const int y1 = spec.census_year - 1;
    const int y2 = spec.census_year - 2;
    {
        std::ofstream cites(files.citations);
        if (!cites) throw IoError("cannot write " + files.citations);
        cites << kCitationHeader << '\n';
        for (std::size_t j = 0; j < journal_count; ++j) {
            const std::size_t community = corpus.journal_community[j];
            auto emit = [&](std::size_t cited, int pub_year, std::int64_t count) {
                cites << corpus.registry[j].journal_id << ','
                      << corpus.registry[cited].journal_id << ',' << spec.census_year << ','
                      << pub_year << ',' << count << '\n';
            };
            for (std::size_t p = 0; p < spec.intra_citation_partners; ++p) {
                std::size_t cited = community * spec.journals_per_community +
                                    next_below(rng, spec.journals_per_community);
                if (cited == j) cited = community * spec.journals_per_community +
                                        (cited + 1 - community * spec.journals_per_community) %
                                            spec.journals_per_community;
                if (cited == j) continue; // single-journal community
                const int pub = next_unit(rng) < 0.5 ? y1 : y2;
                emit(cited, pub, next_range(rng, 1, spec.max_citation_count));
            }
            for (std::size_t p = 0; p < spec.inter_citation_partners; ++p) {
                if (spec.communities < 2) break;
                std::size_t other = next_below(rng, spec.communities - 1);
                if (other >= community) ++other;
                const std::size_t cited = other * spec.journals_per_community +
                                          next_below(rng, spec.journals_per_community);
                const int pub = next_unit(rng) < 0.5 ? y1 : y2;
                emit(cited, pub, next_range(rng, 1, std::max<std::int64_t>(spec.max_citation_count / 4, 1)));
            }
            if (next_unit(rng) < spec.self_citation_probability)
                emit(j, y1, next_range(rng, 1, 5));
            if (next_unit(rng) < spec.stale_citation_probability) {
                std::size_t cited = next_below(rng, journal_count);
                if (cited != j) emit(cited, spec.census_year - 4, next_range(rng, 1, 5));
            }
        }
    }
    {
        std::ofstream counts(files.article_counts);
        if (!counts) throw IoError("cannot write " + files.article_counts);
        counts << kArticleCountHeader << '\n';
        for (std::size_t j = 0; j < journal_count; ++j) {
            for (const int y : {y2, y1}) {
                counts << corpus.registry[j].journal_id << ',' << y << ','
                       << next_range(rng, spec.min_articles_per_year, spec.max_articles_per_year)
                       << '\n';
            }
        }
    }
    return corpus;
}

} // namespace scinet
