// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scinet/graph.hpp"
#include "scinet/ingest.hpp"

namespace scinet {

struct BuildStats {
    std::uint64_t sessions_used = 0;
    std::uint64_t sessions_skipped_cap = 0;   // distinct journal set over the cap
    std::uint64_t sessions_skipped_empty = 0; // nothing resolved
    std::uint64_t events_used = 0;
    std::uint64_t distinct_journals = 0;
    // citation path
    std::uint64_t records_used = 0;
    std::uint64_t records_window_excluded = 0;
    std::uint64_t self_citations_dropped = 0;
};

/// Accumulates the journal usage network from session co-occurrence.
/// Each session contributes its set of distinct journals; every
/// unordered pair in the set increments the edge weight by one. When
/// weight_by_event_pairs is set, a pair instead gains the product of the
/// two journals' event counts within the session.
class UsageNetworkBuilder {
public:
    explicit UsageNetworkBuilder(std::size_t session_cap = 50,
                                 bool weight_by_event_pairs = false);

    /// journals: the session's per-event journal sequence (conflated,
    /// unresolved events already dropped).
    void add_session(std::span<const std::string> journals);

    WeightedDigraph build() const;
    BuildStats stats() const {
        BuildStats s = stats_;
        s.distinct_journals = journal_ids_.size();
        return s;
    }

private:
    std::size_t cap_;
    bool by_event_pairs_;
    BuildStats stats_;
    std::vector<std::string> journal_ids_;
    std::unordered_map<std::string, std::uint32_t> journal_index_;
    std::unordered_map<std::uint64_t, double> pair_weights_;
};

struct UsageNetwork {
    WeightedDigraph graph;
    BuildStats stats;
};

UsageNetwork build_usage_network(std::span<const std::vector<std::string>> sessions,
                                 std::size_t session_cap = 50,
                                 bool weight_by_event_pairs = false);

/// Directed citation network: keeps records whose census year matches
/// and whose publication year falls in the window, sums counts per
/// (citing, cited) pair, drops and counts self citations. Journal refs
/// must already be canonical.
UsageNetwork build_citation_network(std::span<const CitationRecord> records, int census_year,
                                    const std::set<int>& window);

} // namespace scinet
