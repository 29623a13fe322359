// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scinet/util.hpp"

namespace scinet {

enum class RequestType { AbstractView, FullText, Download, Other };

const char* to_string(RequestType t);
std::optional<RequestType> request_type_from_string(std::string_view s);

/// Artifact reference exactly as a provider described it.
struct RawArtifactRef {
    std::string source_id; // non-empty
    std::string issn;      // empty = absent
    std::string title;     // empty = absent
    std::optional<int> year;
};

/// One anonymized article-level request.
struct UsageEvent {
    std::uint64_t event_seq = 0;
    std::string session_key; // empty = absent
    std::string agent_hash;  // empty = absent; never a raw identifier
    std::int64_t timestamp = 0;
    RawArtifactRef artifact;
    RequestType request_type = RequestType::Other;
};

struct CitationRecord {
    std::string citing_journal;
    std::string cited_journal;
    int census_year = 0;
    int pub_year = 0;
    std::int64_t count = 0;
};

struct ArticleCountRecord {
    std::string journal;
    int year = 0;
    std::int64_t articles = 0;
};

enum class ParseReason {
    FieldCount,
    BadQuoting,
    BadTimestamp,
    BadYear,
    BadCount,
    BadRequestType,
    MissingArtifact,
    MissingIdentity,
    YearOrder,
    BadJson,
    MissingHeader,
};

const char* to_string(ParseReason r);

struct ParseError {
    std::uint64_t line = 0;
    ParseReason reason = ParseReason::FieldCount;
    std::string detail;
};

/// Keyed agent anonymization. The salt is operator-supplied and never
/// travels with the data; equal inputs map to equal hashes and nothing of
/// the raw identifier survives in the output.
class Anonymizer {
public:
    explicit Anonymizer(std::string salt);
    std::string hash(std::string_view raw_agent) const;

private:
    std::string salt_;
};

enum class LogFormat { Delimited, JsonLines };

struct UsageParseResult {
    std::vector<UsageEvent> events;
    std::vector<ParseError> errors;
};

/// Reads a whole usage log. Well-formed lines become events in input
/// order with strictly increasing event_seq starting at first_seq;
/// malformed lines are skipped and reported.
UsageParseResult parse_usage_log(std::istream& in, LogFormat format, const Anonymizer& anon,
                                 std::uint64_t first_seq = 1);

/// Streaming variant: sink / error_sink are called in input order.
/// Returns the next unused sequence number.
std::uint64_t parse_usage_log_stream(std::istream& in, LogFormat format, const Anonymizer& anon,
                                     std::uint64_t first_seq,
                                     const std::function<void(const UsageEvent&)>& sink,
                                     const std::function<void(const ParseError&)>& error_sink);

struct CitationParseResult {
    std::vector<CitationRecord> records;
    std::vector<ParseError> errors;
};

struct ArticleCountParseResult {
    std::vector<ArticleCountRecord> records;
    std::vector<ParseError> errors;
};

CitationParseResult parse_citation_records(std::istream& in);
ArticleCountParseResult parse_article_counts(std::istream& in);

/// Canonical delimited form of an event (no header). Round-trips through
/// parse_canonical_event.
std::string serialize_usage_event(const UsageEvent& e);
std::optional<UsageEvent> parse_canonical_event(std::string_view line);

extern const char* const kUsageLogHeader;      // raw provider log
extern const char* const kCanonicalEventHeader; // anonymized canonical events
extern const char* const kCitationHeader;
extern const char* const kArticleCountHeader;

std::string serialize_parse_error(const ParseError& e); // one JSON object per line

} // namespace scinet
