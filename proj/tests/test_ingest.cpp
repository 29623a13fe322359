#include "doctest.h"

#include <set>
#include <sstream>

#include "scinet/ingest.hpp"

using namespace scinet;

namespace {

const Anonymizer& anon() {
    static Anonymizer a("unit-test-salt");
    return a;
}

UsageParseResult parse_text(const std::string& body, LogFormat fmt = LogFormat::Delimited) {
    std::istringstream in(fmt == LogFormat::Delimited
                              ? std::string(kUsageLogHeader) + "\n" + body
                              : body);
    return parse_usage_log(in, fmt, anon());
}

} // namespace

TEST_SUITE("ingest") {

TEST_CASE("well-formed line yields one event with matching fields") {
    const auto r = parse_text(
        "sess1,alice,2006-03-15T12:34:56Z,art42,0378-5955,Journal of Hearing,2006,full_text\n");
    REQUIRE(r.errors.empty());
    REQUIRE(r.events.size() == 1);
    const auto& e = r.events[0];
    CHECK(e.event_seq == 1);
    CHECK(e.session_key == "sess1");
    CHECK(e.agent_hash == anon().hash("alice"));
    CHECK(e.timestamp == parse_rfc3339("2006-03-15T12:34:56Z"));
    CHECK(e.artifact.source_id == "art42");
    CHECK(e.artifact.issn == "0378-5955");
    CHECK(e.artifact.title == "Journal of Hearing");
    CHECK(e.artifact.year == 2006);
    CHECK(e.request_type == RequestType::FullText);
}

TEST_CASE("unparseable timestamp is rejected with bad_timestamp") {
    const auto r = parse_text("sess1,alice,yesterday,art42,,,,full_text\n");
    CHECK(r.events.empty());
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].reason == ParseReason::BadTimestamp);
    CHECK(r.errors[0].line == 2);
}

TEST_CASE("three lines with one bad line give two events and one error") {
    const auto r = parse_text(
        "s1,,2006-01-01T00:00:00Z,a1,,,,download\n"
        "s2,,not-a-time,a2,,,,download\n"
        "s3,,2006-01-01T00:00:02Z,a3,,,,abstract_view\n");
    CHECK(r.events.size() == 2);
    CHECK(r.errors.size() == 1);
}

TEST_CASE("error taxonomy") {
    CHECK(parse_text("s1,,2006-01-01T00:00:00Z,a1,,,,telepathy\n").errors[0].reason ==
          ParseReason::BadRequestType);
    CHECK(parse_text("s1,,2006-01-01T00:00:00Z,,,,,download\n").errors[0].reason ==
          ParseReason::MissingArtifact);
    CHECK(parse_text(",,2006-01-01T00:00:00Z,a1,,,,download\n").errors[0].reason ==
          ParseReason::MissingIdentity);
    CHECK(parse_text("s1,,2006-01-01T00:00:00Z,a1,,,later,download\n").errors[0].reason ==
          ParseReason::BadYear);
    CHECK(parse_text("s1,,2006-01-01T00:00:00Z,a1,,,,download,extra\n").errors[0].reason ==
          ParseReason::FieldCount);
    CHECK(parse_text("s1,\"open,,2006-01-01T00:00:00Z,a1,,,,download\n").errors[0].reason ==
          ParseReason::BadQuoting);
}

TEST_CASE("event_seq is strictly increasing across mixed good and bad lines") {
    std::string body;
    for (int i = 0; i < 50; ++i) {
        body += "s" + std::to_string(i) + ",,2006-01-01T00:00:00Z,a,,,,download\n";
        if (i % 7 == 0) body += "bad line\n";
    }
    const auto r = parse_text(body);
    REQUIRE(r.events.size() == 50);
    for (std::size_t i = 1; i < r.events.size(); ++i)
        REQUIRE(r.events[i].event_seq > r.events[i - 1].event_seq);
}

TEST_CASE("json lines format parses the same record") {
    const auto r = parse_text(
        R"({"session_key":"sess1","agent_id":"alice","timestamp":"2006-03-15T12:34:56Z","artifact_id":"art42","issn":"0378-5955","title":"Journal of Hearing","year":2006,"request_type":"full_text"})"
        "\n",
        LogFormat::JsonLines);
    REQUIRE(r.events.size() == 1);
    CHECK(r.events[0].session_key == "sess1");
    CHECK(r.events[0].artifact.year == 2006);
    const auto bad = parse_text("{not json\n", LogFormat::JsonLines);
    REQUIRE(bad.errors.size() == 1);
    CHECK(bad.errors[0].reason == ParseReason::BadJson);
}

TEST_CASE("anonymize is deterministic, collision free, and salt sensitive") {
    Anonymizer a("salt-A"), b("salt-B");
    CHECK(a.hash("alice") == a.hash("alice"));
    CHECK(a.hash("alice") != a.hash("bob"));
    CHECK(a.hash("alice") != b.hash("alice"));
    CHECK_THROWS_AS(Anonymizer(""), ConfigError);

    std::set<std::string> hashes;
    for (int i = 0; i < 100000; ++i) hashes.insert(a.hash("agent-" + std::to_string(i)));
    CHECK(hashes.size() == 100000);
}

TEST_CASE("no raw agent identifier survives serialization") {
    const auto r = parse_text(
        "sess1,alice.smith@example.org,2006-03-15T12:34:56Z,art42,,,,full_text\n");
    REQUIRE(r.events.size() == 1);
    const auto line = serialize_usage_event(r.events[0]);
    CHECK(line.find("alice") == std::string::npos);
    CHECK(line.find("example.org") == std::string::npos);
    CHECK(r.events[0].agent_hash.size() == 64);
}

TEST_CASE("canonical events round trip") {
    const auto r = parse_text(
        "sess1,alice,2006-03-15T12:34:56Z,art42,0378-5955,\"Hearing, Research\",2006,full_text\n"
        "sess2,,2006-03-15T12:35:00Z,art43,,,,other\n");
    REQUIRE(r.events.size() == 2);
    for (const auto& e : r.events) {
        const auto line = serialize_usage_event(e);
        const auto back = parse_canonical_event(line);
        REQUIRE(back.has_value());
        CHECK(serialize_usage_event(*back) == line); // canonical form is a fixed point
        CHECK(back->session_key == e.session_key);
        CHECK(back->timestamp == e.timestamp);
        CHECK(back->artifact.title == e.artifact.title);
    }
}

TEST_CASE("citation records parse with invariant checks") {
    std::istringstream in(std::string(kCitationHeader) +
                          "\n"
                          "jA,jB,2005,2004,17\n"
                          "jA,jB,2005,2006,3\n"  // pub year after census year
                          "jA,jB,2005,2003,-1\n" // negative count
                          "jC,jD,2005,2003,0\n"
                          "jC,,2005,2003,1\n");
    const auto r = parse_citation_records(in);
    REQUIRE(r.records.size() == 2);
    CHECK(r.records[0].citing_journal == "jA");
    CHECK(r.records[0].cited_journal == "jB");
    CHECK(r.records[0].census_year == 2005);
    CHECK(r.records[0].pub_year == 2004);
    CHECK(r.records[0].count == 17);
    REQUIRE(r.errors.size() == 3);
    CHECK(r.errors[0].reason == ParseReason::YearOrder);
    CHECK(r.errors[1].reason == ParseReason::BadCount);
    CHECK(r.errors[2].reason == ParseReason::MissingArtifact);
}

TEST_CASE("article counts parse; fixture with one invalid row") {
    std::istringstream in(std::string(kArticleCountHeader) +
                          "\n"
                          "jA,2004,120\n"
                          "jB,2004,75\n"
                          "jC,2003,paper\n"
                          "jD,2003,4\n"
                          "jE,2004,0\n");
    const auto r = parse_article_counts(in);
    CHECK(r.records.size() == 4);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].reason == ParseReason::BadCount);
}

TEST_CASE("parse error serialization is structured") {
    const auto s = serialize_parse_error({12, ParseReason::BadTimestamp, "noon\"ish"});
    CHECK(s == "{\"line\":12,\"reason\":\"bad_timestamp\",\"detail\":\"noon\\\"ish\"}");
}

} // TEST_SUITE
