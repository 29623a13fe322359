// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/ingest.hpp"

#include <charconv>
#include <istream>

#include "json.hpp"
#include "scinet/csv.hpp"
#include "scinet/sha256.hpp"

namespace scinet {

const char* const kUsageLogHeader =
    "session_key,agent_id,timestamp,artifact_id,issn,title,year,request_type";
const char* const kCanonicalEventHeader =
    "event_seq,session_key,agent_hash,timestamp,artifact_id,issn,title,year,request_type";
const char* const kCitationHeader = "citing_journal,cited_journal,census_year,pub_year,count";
const char* const kArticleCountHeader = "journal,year,articles";

const char* to_string(RequestType t) {
    switch (t) {
    case RequestType::AbstractView: return "abstract_view";
    case RequestType::FullText: return "full_text";
    case RequestType::Download: return "download";
    case RequestType::Other: return "other";
    }
    return "other";
}

std::optional<RequestType> request_type_from_string(std::string_view s) {
    if (s == "abstract_view") return RequestType::AbstractView;
    if (s == "full_text") return RequestType::FullText;
    if (s == "download") return RequestType::Download;
    if (s == "other") return RequestType::Other;
    return std::nullopt;
}

const char* to_string(ParseReason r) {
    switch (r) {
    case ParseReason::FieldCount: return "field_count";
    case ParseReason::BadQuoting: return "bad_quoting";
    case ParseReason::BadTimestamp: return "bad_timestamp";
    case ParseReason::BadYear: return "bad_year";
    case ParseReason::BadCount: return "bad_count";
    case ParseReason::BadRequestType: return "bad_request_type";
    case ParseReason::MissingArtifact: return "missing_artifact";
    case ParseReason::MissingIdentity: return "missing_identity";
    case ParseReason::YearOrder: return "year_order";
    case ParseReason::BadJson: return "bad_json";
    case ParseReason::MissingHeader: return "missing_header";
    }
    return "unknown";
}

Anonymizer::Anonymizer(std::string salt) : salt_(std::move(salt)) {
    if (salt_.empty()) throw ConfigError("anonymizer salt must be non-empty");
}

std::string Anonymizer::hash(std::string_view raw_agent) const {
    const auto mac = hmac_sha256(salt_, raw_agent);
    return to_hex(mac.data(), mac.size());
}

namespace {

bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t v = 0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e || s.empty()) return std::nullopt;
    return v;
}

struct RawUsageLine {
    std::string session_key;
    std::string agent_id;
    std::string timestamp;
    std::string artifact_id;
    std::string issn;
    std::string title;
    std::string year;
    std::string request_type;
};

std::optional<ParseError> finish_event(const RawUsageLine& raw, std::uint64_t line_no,
                                       const Anonymizer& anon, UsageEvent& out) {
    const auto ts = parse_rfc3339(raw.timestamp);
    if (!ts) return ParseError{line_no, ParseReason::BadTimestamp, raw.timestamp};
    if (raw.artifact_id.empty())
        return ParseError{line_no, ParseReason::MissingArtifact, ""};
    const auto rt = request_type_from_string(raw.request_type);
    if (!rt) return ParseError{line_no, ParseReason::BadRequestType, raw.request_type};
    std::optional<int> year;
    if (!raw.year.empty()) {
        const auto y = parse_int(raw.year);
        if (!y) return ParseError{line_no, ParseReason::BadYear, raw.year};
        year = static_cast<int>(*y);
    }
    if (raw.session_key.empty() && raw.agent_id.empty())
        return ParseError{line_no, ParseReason::MissingIdentity, ""};
    out.session_key = raw.session_key;
    out.agent_hash = raw.agent_id.empty() ? std::string() : anon.hash(raw.agent_id);
    out.timestamp = *ts;
    out.artifact = RawArtifactRef{raw.artifact_id, raw.issn, raw.title, year};
    out.request_type = *rt;
    return std::nullopt;
}

std::optional<ParseError> parse_delimited_usage(std::string_view line, std::uint64_t line_no,
                                                const Anonymizer& anon, UsageEvent& out) {
    const auto fields = csv_split(line);
    if (!fields) return ParseError{line_no, ParseReason::BadQuoting, ""};
    if (fields->size() != 8)
        return ParseError{line_no, ParseReason::FieldCount, std::to_string(fields->size())};
    RawUsageLine raw{(*fields)[0], (*fields)[1], (*fields)[2], (*fields)[3],
                     (*fields)[4], (*fields)[5], (*fields)[6], (*fields)[7]};
    return finish_event(raw, line_no, anon, out);
}

std::optional<ParseError> parse_json_usage(std::string_view line, std::uint64_t line_no,
                                           const Anonymizer& anon, UsageEvent& out) {
    const auto doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        return ParseError{line_no, ParseReason::BadJson, ""};
    auto str = [&](const char* key) -> std::string {
        const auto it = doc.find(key);
        if (it == doc.end() || it->is_null()) return {};
        if (!it->is_string()) return {};
        return it->get<std::string>();
    };
    RawUsageLine raw;
    raw.session_key = str("session_key");
    raw.agent_id = str("agent_id");
    raw.timestamp = str("timestamp");
    raw.artifact_id = str("artifact_id");
    raw.issn = str("issn");
    raw.title = str("title");
    raw.request_type = str("request_type");
    if (const auto it = doc.find("year"); it != doc.end() && it->is_number_integer())
        raw.year = std::to_string(it->get<std::int64_t>());
    return finish_event(raw, line_no, anon, out);
}

} // namespace

std::uint64_t parse_usage_log_stream(std::istream& in, LogFormat format, const Anonymizer& anon,
                                     std::uint64_t first_seq,
                                     const std::function<void(const UsageEvent&)>& sink,
                                     const std::function<void(const ParseError&)>& error_sink) {
    if (in.fail()) throw IoError("unreadable usage log stream");
    std::string line;
    std::uint64_t line_no = 0;
    std::uint64_t seq = first_seq;
    if (format == LogFormat::Delimited) {
        if (!read_line(in, line)) return seq;
        ++line_no;
        if (line != kUsageLogHeader)
            error_sink(ParseError{line_no, ParseReason::MissingHeader, line});
    }
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        UsageEvent event;
        const auto err = format == LogFormat::Delimited
                             ? parse_delimited_usage(line, line_no, anon, event)
                             : parse_json_usage(line, line_no, anon, event);
        if (err) {
            error_sink(*err);
            continue;
        }
        event.event_seq = seq++;
        sink(event);
    }
    if (in.bad()) throw IoError("I/O failure while reading usage log");
    return seq;
}

UsageParseResult parse_usage_log(std::istream& in, LogFormat format, const Anonymizer& anon,
                                 std::uint64_t first_seq) {
    UsageParseResult result;
    parse_usage_log_stream(
        in, format, anon, first_seq,
        [&](const UsageEvent& e) { result.events.push_back(e); },
        [&](const ParseError& e) { result.errors.push_back(e); });
    return result;
}

CitationParseResult parse_citation_records(std::istream& in) {
    if (in.fail()) throw IoError("unreadable citation stream");
    CitationParseResult result;
    std::string line;
    std::uint64_t line_no = 0;
    if (read_line(in, line)) {
        ++line_no;
        if (line != kCitationHeader)
            result.errors.push_back({line_no, ParseReason::MissingHeader, line});
    }
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = csv_split(line);
        if (!fields) {
            result.errors.push_back({line_no, ParseReason::BadQuoting, ""});
            continue;
        }
        if (fields->size() != 5) {
            result.errors.push_back(
                {line_no, ParseReason::FieldCount, std::to_string(fields->size())});
            continue;
        }
        const auto census = parse_int((*fields)[2]);
        const auto pub = parse_int((*fields)[3]);
        if (!census || !pub) {
            result.errors.push_back({line_no, ParseReason::BadYear, line});
            continue;
        }
        const auto count = parse_int((*fields)[4]);
        if (!count || *count < 0) {
            result.errors.push_back({line_no, ParseReason::BadCount, (*fields)[4]});
            continue;
        }
        if (*pub > *census) {
            result.errors.push_back({line_no, ParseReason::YearOrder, line});
            continue;
        }
        if ((*fields)[0].empty() || (*fields)[1].empty()) {
            result.errors.push_back({line_no, ParseReason::MissingArtifact, line});
            continue;
        }
        result.records.push_back({(*fields)[0], (*fields)[1], static_cast<int>(*census),
                                  static_cast<int>(*pub), *count});
    }
    if (in.bad()) throw IoError("I/O failure while reading citation records");
    return result;
}

ArticleCountParseResult parse_article_counts(std::istream& in) {
    if (in.fail()) throw IoError("unreadable article count stream");
    ArticleCountParseResult result;
    std::string line;
    std::uint64_t line_no = 0;
    if (read_line(in, line)) {
        ++line_no;
        if (line != kArticleCountHeader)
            result.errors.push_back({line_no, ParseReason::MissingHeader, line});
    }
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = csv_split(line);
        if (!fields) {
            result.errors.push_back({line_no, ParseReason::BadQuoting, ""});
            continue;
        }
        if (fields->size() != 3) {
            result.errors.push_back(
                {line_no, ParseReason::FieldCount, std::to_string(fields->size())});
            continue;
        }
        const auto year = parse_int((*fields)[1]);
        if (!year) {
            result.errors.push_back({line_no, ParseReason::BadYear, (*fields)[1]});
            continue;
        }
        const auto articles = parse_int((*fields)[2]);
        if (!articles || *articles < 0) {
            result.errors.push_back({line_no, ParseReason::BadCount, (*fields)[2]});
            continue;
        }
        if ((*fields)[0].empty()) {
            result.errors.push_back({line_no, ParseReason::MissingArtifact, line});
            continue;
        }
        result.records.push_back({(*fields)[0], static_cast<int>(*year), *articles});
    }
    if (in.bad()) throw IoError("I/O failure while reading article counts");
    return result;
}

std::string serialize_usage_event(const UsageEvent& e) {
    const std::string fields[] = {
        std::to_string(e.event_seq),
        e.session_key,
        e.agent_hash,
        format_rfc3339(e.timestamp),
        e.artifact.source_id,
        e.artifact.issn,
        e.artifact.title,
        e.artifact.year ? std::to_string(*e.artifact.year) : std::string(),
        to_string(e.request_type),
    };
    return csv_join(fields);
}

std::optional<UsageEvent> parse_canonical_event(std::string_view line) {
    const auto fields = csv_split(line);
    if (!fields || fields->size() != 9) return std::nullopt;
    const auto seq = parse_int((*fields)[0]);
    const auto ts = parse_rfc3339((*fields)[3]);
    const auto rt = request_type_from_string((*fields)[8]);
    if (!seq || !ts || !rt) return std::nullopt;
    if ((*fields)[4].empty()) return std::nullopt;
    std::optional<int> year;
    if (!(*fields)[7].empty()) {
        const auto y = parse_int((*fields)[7]);
        if (!y) return std::nullopt;
        year = static_cast<int>(*y);
    }
    UsageEvent e;
    e.event_seq = static_cast<std::uint64_t>(*seq);
    e.session_key = (*fields)[1];
    e.agent_hash = (*fields)[2];
    e.timestamp = *ts;
    e.artifact = RawArtifactRef{(*fields)[4], (*fields)[5], (*fields)[6], year};
    e.request_type = *rt;
    return e;
}

std::string serialize_parse_error(const ParseError& e) {
    std::string out = "{\"line\":";
    out += std::to_string(e.line);
    out += ",\"reason\":\"";
    out += to_string(e.reason);
    out += "\",\"detail\":\"";
    out += json_escape(e.detail);
    out += "\"}";
    return out;
}

} // namespace scinet
