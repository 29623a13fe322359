// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <string>
#include <vector>

#include "scinet/ingest.hpp"

namespace scinet {

enum class Classification { Human, Robot, Undecided };

const char* to_string(Classification c);
std::optional<Classification> classification_from_string(std::string_view s);

struct SessionFeatures {
    std::size_t length = 0;        // event count
    double duration = 0.0;         // seconds, last minus first
    double median_gap = 0.0;       // seconds between consecutive requests
    std::size_t distinct_artifacts = 0;
};

/// Ordered event group attributed to one agent.
struct Session {
    std::string session_id;
    std::string agent_hash; // empty = unknown
    Classification classification = Classification::Undecided;
    SessionFeatures features;
    std::vector<UsageEvent> events; // non-decreasing timestamps, ties by event_seq
};

struct BotPolicy {
    std::size_t max_length = 100;          // longer sessions are robots
    double min_median_gap = 1.0;           // seconds
    std::size_t min_length_for_gap_test = 10;
};

struct GroupingResult {
    std::vector<Session> sessions;
    std::vector<UsageEvent> rejected; // neither session key nor agent hash
};

constexpr double kDefaultSessionTimeout = 1800.0; // seconds

/// Groups events into sessions. Events sharing a session key form one
/// session; key-less events are grouped by agent hash and split whenever
/// the gap to the previous event exceeds the timeout. Features are
/// computed for every session; classification is left Undecided.
GroupingResult group_sessions(std::vector<UsageEvent> events,
                              double timeout_seconds = kDefaultSessionTimeout);

SessionFeatures compute_features(const std::vector<UsageEvent>& events);

/// Collapses maximal runs of consecutive events for the same artifact
/// (by source id) to the run's first event.
Session conflate_consecutive(Session session);

/// Deterministic rule: robot iff the session is longer than
/// policy.max_length, or long enough for the gap test and pacing below
/// policy.min_median_gap. Everything else is human.
Classification classify_session(const Session& s, const BotPolicy& policy);

/// One structured line per session; events serialized as compact arrays.
std::string serialize_session(const Session& s);
std::optional<Session> parse_session_line(std::string_view line);

} // namespace scinet
