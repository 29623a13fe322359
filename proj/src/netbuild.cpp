// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/netbuild.hpp"

#include <algorithm>

namespace scinet {

UsageNetworkBuilder::UsageNetworkBuilder(std::size_t session_cap, bool weight_by_event_pairs)
    : cap_(session_cap), by_event_pairs_(weight_by_event_pairs) {}

void UsageNetworkBuilder::add_session(std::span<const std::string> journals) {
    if (journals.empty()) {
        ++stats_.sessions_skipped_empty;
        return;
    }
    // Distinct journals with event counts, session-locally.
    std::map<std::string_view, std::uint64_t> counts;
    for (const auto& j : journals) ++counts[j];
    if (counts.size() > cap_) {
        ++stats_.sessions_skipped_cap;
        return;
    }
    ++stats_.sessions_used;
    stats_.events_used += journals.size();
    std::vector<std::pair<std::uint32_t, std::uint64_t>> members;
    members.reserve(counts.size());
    for (const auto& [j, c] : counts) {
        const std::string key(j);
        auto it = journal_index_.find(key);
        if (it == journal_index_.end()) {
            const auto idx = static_cast<std::uint32_t>(journal_ids_.size());
            journal_ids_.push_back(key);
            it = journal_index_.emplace(key, idx).first;
        }
        members.emplace_back(it->second, c);
    }
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            std::uint32_t s = members[a].first, d = members[b].first;
            double w = 1.0;
            if (by_event_pairs_)
                w = static_cast<double>(members[a].second) *
                    static_cast<double>(members[b].second);
            if (s > d) std::swap(s, d);
            pair_weights_[(std::uint64_t(s) << 32) | d] += w;
        }
    }
}

WeightedDigraph UsageNetworkBuilder::build() const {
    GraphBuilder b(false);
    for (const auto& id : journal_ids_) b.add_node(id);
    for (const auto& [key, w] : pair_weights_) {
        const auto s = static_cast<std::uint32_t>(key >> 32);
        const auto d = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
        b.add_edge(journal_ids_[s], journal_ids_[d], w);
    }
    return b.build();
}

UsageNetwork build_usage_network(std::span<const std::vector<std::string>> sessions,
                                 std::size_t session_cap, bool weight_by_event_pairs) {
    UsageNetworkBuilder builder(session_cap, weight_by_event_pairs);
    for (const auto& s : sessions) builder.add_session(s);
    UsageNetwork out;
    out.graph = builder.build();
    out.stats = builder.stats();
    return out;
}

UsageNetwork build_citation_network(std::span<const CitationRecord> records, int census_year,
                                    const std::set<int>& window) {
    GraphBuilder b(true);
    BuildStats stats;
    for (const auto& r : records) {
        if (r.census_year != census_year || !window.contains(r.pub_year)) {
            ++stats.records_window_excluded;
            continue;
        }
        if (r.citing_journal == r.cited_journal) {
            ++stats.self_citations_dropped;
            continue;
        }
        if (r.count <= 0) continue; // carries no citations
        ++stats.records_used;
        b.add_node(r.citing_journal);
        b.add_node(r.cited_journal);
        b.add_edge(r.citing_journal, r.cited_journal, static_cast<double>(r.count));
    }
    UsageNetwork out;
    out.graph = b.build();
    stats.distinct_journals = out.graph.node_count();
    out.stats = stats;
    return out;
}

} // namespace scinet
