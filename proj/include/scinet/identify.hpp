// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "scinet/ingest.hpp"

namespace scinet {

/// One canonical journal identity.
struct CanonicalJournal {
    std::string journal_id;
    std::string canonical_title; // stored normalized
    std::set<std::string> issns; // each passes the check digit rule
};

enum class MatchMethod { ExactIssn, EquivalenceTable, FuzzyTitle, Unresolved };

const char* to_string(MatchMethod m);

struct MatchDecision {
    RawArtifactRef raw;
    std::optional<std::string> resolved; // journal_id, absent iff Unresolved
    MatchMethod method = MatchMethod::Unresolved;
    double score = 0.0; // 1.0 for the exact paths
};

/// Case folds, strips diacritics, removes punctuation, collapses runs of
/// whitespace. Idempotent.
std::string normalize_title(std::string_view title);

/// True iff the string is a valid ISSN: 8 characters after hyphen
/// removal, weighted mod 11 check digit (X = 10).
bool validate_issn(std::string_view issn);

/// Levenshtein distance (unit edit costs).
std::size_t levenshtein(std::string_view a, std::string_view b);

/// 1 - levenshtein / max length, on already normalized strings.
double title_similarity(std::string_view normalized_a, std::string_view normalized_b);

struct ResolverOptions {
    double threshold = 0.90;  // minimum fuzzy similarity
    double margin = 0.02;     // best must beat second best by this much
};

/// Read-only resolution index over a journal registry plus an
/// equivalence table of known variants. Thread-safe once built.
class JournalResolver {
public:
    JournalResolver(std::vector<CanonicalJournal> registry,
                    std::map<std::string, std::string> equivalences,
                    ResolverOptions options = {});

    /// Tries exact ISSN, then the equivalence table on the normalized
    /// title, then fuzzy title matching. Unresolved is a value, not an
    /// error.
    MatchDecision resolve(const RawArtifactRef& raw) const;

    /// Equivalence lookup of an arbitrary journal reference string
    /// (used for citation records, where the reference may already be a
    /// canonical id, a known variant, a title, or an ISSN).
    std::optional<std::string> resolve_ref(const std::string& ref) const;

    const std::vector<CanonicalJournal>& registry() const { return registry_; }
    const ResolverOptions& options() const { return options_; }

private:
    std::vector<CanonicalJournal> registry_;
    std::map<std::string, std::string> equivalences_; // normalized variant -> journal_id
    std::unordered_map<std::string, std::size_t> by_issn_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_first_token_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_issn_prefix_;
    ResolverOptions options_;
};

/// Registry file: journal_id,canonical_title,issn_list (semicolons).
std::vector<CanonicalJournal> load_registry(std::istream& in);
void write_registry(std::ostream& out, const std::vector<CanonicalJournal>& registry);

/// Equivalence file: variant_title_or_issn,journal_id.
std::map<std::string, std::string> load_equivalences(std::istream& in);

/// Counts by match method, for the data quality report.
struct MatchStats {
    std::uint64_t exact_issn = 0;
    std::uint64_t equivalence = 0;
    std::uint64_t fuzzy = 0;
    std::uint64_t unresolved = 0;
    std::uint64_t total() const { return exact_issn + equivalence + fuzzy + unresolved; }
    void add(MatchMethod m);
};

} // namespace scinet
