// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/sessionize.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace scinet {

const char* to_string(Classification c) {
    switch (c) {
    case Classification::Human: return "human";
    case Classification::Robot: return "robot";
    case Classification::Undecided: return "undecided";
    }
    return "undecided";
}

std::optional<Classification> classification_from_string(std::string_view s) {
    if (s == "human") return Classification::Human;
    if (s == "robot") return Classification::Robot;
    if (s == "undecided") return Classification::Undecided;
    return std::nullopt;
}

SessionFeatures compute_features(const std::vector<UsageEvent>& events) {
    SessionFeatures f;
    f.length = events.size();
    if (events.empty()) return f;
    f.duration = static_cast<double>(events.back().timestamp - events.front().timestamp);
    std::vector<double> gaps;
    gaps.reserve(events.size());
    for (std::size_t i = 1; i < events.size(); ++i)
        gaps.push_back(static_cast<double>(events[i].timestamp - events[i - 1].timestamp));
    f.median_gap = median(std::move(gaps));
    std::set<std::string> artifacts;
    for (const auto& e : events) artifacts.insert(e.artifact.source_id);
    f.distinct_artifacts = artifacts.size();
    return f;
}

namespace {

// Grouping key: explicit session keys win over agent identity.
struct GroupKey {
    bool keyed;
    std::string id;
    bool operator<(const GroupKey& o) const {
        if (keyed != o.keyed) return keyed > o.keyed; // keyed groups first
        return id < o.id;
    }
    bool operator==(const GroupKey& o) const { return keyed == o.keyed && id == o.id; }
};

Session make_session(std::string id, std::vector<UsageEvent> events) {
    Session s;
    s.session_id = std::move(id);
    for (const auto& e : events) {
        if (!e.agent_hash.empty()) {
            s.agent_hash = e.agent_hash;
            break;
        }
    }
    s.events = std::move(events);
    s.features = compute_features(s.events);
    return s;
}

} // namespace

GroupingResult group_sessions(std::vector<UsageEvent> events, double timeout_seconds) {
    GroupingResult result;
    std::vector<UsageEvent> kept;
    kept.reserve(events.size());
    for (auto& e : events) {
        if (e.session_key.empty() && e.agent_hash.empty())
            result.rejected.push_back(std::move(e));
        else
            kept.push_back(std::move(e));
    }
    std::vector<std::pair<GroupKey, UsageEvent>> tagged;
    tagged.reserve(kept.size());
    for (auto& e : kept) {
        GroupKey k;
        if (!e.session_key.empty())
            k = GroupKey{true, e.session_key};
        else
            k = GroupKey{false, e.agent_hash};
        tagged.emplace_back(std::move(k), std::move(e));
    }
    std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
        if (!(a.first == b.first)) return a.first < b.first;
        if (a.second.timestamp != b.second.timestamp)
            return a.second.timestamp < b.second.timestamp;
        return a.second.event_seq < b.second.event_seq;
    });

    std::size_t i = 0;
    while (i < tagged.size()) {
        std::size_t j = i;
        while (j < tagged.size() && tagged[j].first == tagged[i].first) ++j;
        const GroupKey& key = tagged[i].first;
        if (key.keyed) {
            std::vector<UsageEvent> ev;
            ev.reserve(j - i);
            for (std::size_t k = i; k < j; ++k) ev.push_back(std::move(tagged[k].second));
            result.sessions.push_back(make_session("k:" + key.id, std::move(ev)));
        } else {
            // Split on inactivity.
            std::size_t part = 0;
            std::vector<UsageEvent> ev;
            for (std::size_t k = i; k < j; ++k) {
                if (!ev.empty() &&
                    static_cast<double>(tagged[k].second.timestamp - ev.back().timestamp) >
                        timeout_seconds) {
                    result.sessions.push_back(
                        make_session("a:" + key.id + ":" + std::to_string(part++), std::move(ev)));
                    ev.clear();
                }
                ev.push_back(std::move(tagged[k].second));
            }
            if (!ev.empty())
                result.sessions.push_back(
                    make_session("a:" + key.id + ":" + std::to_string(part), std::move(ev)));
        }
        i = j;
    }
    return result;
}

Session conflate_consecutive(Session session) {
    std::vector<UsageEvent> out;
    out.reserve(session.events.size());
    for (auto& e : session.events) {
        if (out.empty() || out.back().artifact.source_id != e.artifact.source_id)
            out.push_back(std::move(e));
    }
    session.events = std::move(out);
    session.features = compute_features(session.events);
    return session;
}

Classification classify_session(const Session& s, const BotPolicy& policy) {
    const auto& f = s.features;
    if (f.length > policy.max_length) return Classification::Robot;
    if (f.length >= policy.min_length_for_gap_test && f.median_gap < policy.min_median_gap)
        return Classification::Robot;
    return Classification::Human;
}

std::string serialize_session(const Session& s) {
    std::string out = "{\"id\":\"";
    out += json_escape(s.session_id);
    out += "\",\"cls\":\"";
    out += to_string(s.classification);
    out += "\",\"agent\":\"";
    out += json_escape(s.agent_hash);
    out += "\",\"f\":[";
    out += std::to_string(s.features.length);
    out += ',';
    out += format_double(s.features.duration);
    out += ',';
    out += format_double(s.features.median_gap);
    out += ',';
    out += std::to_string(s.features.distinct_artifacts);
    out += "],\"ev\":[";
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const auto& e = s.events[i];
        if (i > 0) out += ',';
        out += '[';
        out += std::to_string(e.event_seq);
        out += ',';
        out += std::to_string(e.timestamp);
        out += ",\"";
        out += json_escape(e.artifact.source_id);
        out += "\",\"";
        out += json_escape(e.artifact.issn);
        out += "\",\"";
        out += json_escape(e.artifact.title);
        out += "\",";
        out += e.artifact.year ? std::to_string(*e.artifact.year) : "null";
        out += ",\"";
        out += to_string(e.request_type);
        out += "\"]";
    }
    out += "]}";
    return out;
}

std::optional<Session> parse_session_line(std::string_view line) {
    const auto doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
    Session s;
    try {
        s.session_id = doc.at("id").get<std::string>();
        const auto cls = classification_from_string(doc.at("cls").get<std::string>());
        if (!cls) return std::nullopt;
        s.classification = *cls;
        s.agent_hash = doc.at("agent").get<std::string>();
        const auto& f = doc.at("f");
        s.features.length = f.at(0).get<std::size_t>();
        s.features.duration = f.at(1).get<double>();
        s.features.median_gap = f.at(2).get<double>();
        s.features.distinct_artifacts = f.at(3).get<std::size_t>();
        for (const auto& ev : doc.at("ev")) {
            UsageEvent e;
            e.event_seq = ev.at(0).get<std::uint64_t>();
            e.timestamp = ev.at(1).get<std::int64_t>();
            e.session_key = s.session_id;
            e.agent_hash = s.agent_hash;
            e.artifact.source_id = ev.at(2).get<std::string>();
            e.artifact.issn = ev.at(3).get<std::string>();
            e.artifact.title = ev.at(4).get<std::string>();
            if (!ev.at(5).is_null()) e.artifact.year = ev.at(5).get<int>();
            const auto rt = request_type_from_string(ev.at(6).get<std::string>());
            if (!rt) return std::nullopt;
            e.request_type = *rt;
            s.events.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    return s;
}

} // namespace scinet
