// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/identify.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>

#include "scinet/csv.hpp"

namespace scinet {

const char* to_string(MatchMethod m) {
    switch (m) {
    case MatchMethod::ExactIssn: return "exact_issn";
    case MatchMethod::EquivalenceTable: return "equivalence_table";
    case MatchMethod::FuzzyTitle: return "fuzzy_title";
    case MatchMethod::Unresolved: return "unresolved";
    }
    return "unresolved";
}

namespace {

// ASCII replacement for an accented Latin codepoint; empty string = none.
std::string_view latin_base(char32_t cp) {
    switch (cp) {
    case 0xC6: case 0xE6: return "ae";
    case 0xDF: return "ss";
    case 0xDE: case 0xFE: return "th";
    case 0xD0: case 0xF0: return "d";
    case 0xFF: return "y";
    case 0x152: case 0x153: return "oe";
    case 0x132: case 0x133: return "ij";
    default: break;
    }
    struct Span {
        char32_t first, last;
        char base;
    };
    // Latin-1 supplement, then Latin Extended-A.
    static constexpr Span spans[] = {
        {0xC0, 0xC5, 'a'},  {0xC7, 0xC7, 'c'},  {0xC8, 0xCB, 'e'},  {0xCC, 0xCF, 'i'},
        {0xD1, 0xD1, 'n'},  {0xD2, 0xD6, 'o'},  {0xD8, 0xD8, 'o'},  {0xD9, 0xDC, 'u'},
        {0xDD, 0xDD, 'y'},
        {0xE0, 0xE5, 'a'},  {0xE7, 0xE7, 'c'},  {0xE8, 0xEB, 'e'},  {0xEC, 0xEF, 'i'},
        {0xF1, 0xF1, 'n'},  {0xF2, 0xF6, 'o'},  {0xF8, 0xF8, 'o'},  {0xF9, 0xFC, 'u'},
        {0xFD, 0xFD, 'y'},
        {0x100, 0x105, 'a'}, {0x106, 0x10D, 'c'}, {0x10E, 0x111, 'd'}, {0x112, 0x11B, 'e'},
        {0x11C, 0x123, 'g'}, {0x124, 0x127, 'h'}, {0x128, 0x131, 'i'}, {0x134, 0x135, 'j'},
        {0x136, 0x138, 'k'}, {0x139, 0x142, 'l'}, {0x143, 0x14B, 'n'}, {0x14C, 0x151, 'o'},
        {0x154, 0x159, 'r'}, {0x15A, 0x161, 's'}, {0x162, 0x167, 't'}, {0x168, 0x173, 'u'},
        {0x174, 0x175, 'w'}, {0x176, 0x178, 'y'}, {0x179, 0x17E, 'z'}, {0x17F, 0x17F, 's'},
    };
    for (const auto& s : spans) {
        if (cp >= s.first && cp <= s.last) {
            static thread_local char buf[2] = {0, 0};
            buf[0] = s.base;
            return std::string_view(buf, 1);
        }
    }
    return {};
}

} // namespace

std::string normalize_title(std::string_view title) {
    std::string out;
    out.reserve(title.size());
    bool pending_space = false;
    auto push = [&](char c) {
        if (pending_space && !out.empty()) out += ' ';
        pending_space = false;
        out += c;
    };
    std::size_t i = 0;
    const std::size_t n = title.size();
    while (i < n) {
        const unsigned char b0 = static_cast<unsigned char>(title[i]);
        char32_t cp = 0;
        std::size_t len = 1;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 >> 5) == 0x6 && i + 1 < n) {
            cp = (char32_t(b0 & 0x1F) << 6) | (title[i + 1] & 0x3F);
            len = 2;
        } else if ((b0 >> 4) == 0xE && i + 2 < n) {
            cp = (char32_t(b0 & 0x0F) << 12) | (char32_t(title[i + 1] & 0x3F) << 6) |
                 (title[i + 2] & 0x3F);
            len = 3;
        } else if ((b0 >> 3) == 0x1E && i + 3 < n) {
            cp = (char32_t(b0 & 0x07) << 18) | (char32_t(title[i + 1] & 0x3F) << 12) |
                 (char32_t(title[i + 2] & 0x3F) << 6) | (title[i + 3] & 0x3F);
            len = 4;
        } else {
            cp = ' '; // invalid byte, treat as separator
        }
        i += len;
        if (cp < 0x80) {
            const char c = static_cast<char>(cp);
            if (c >= 'a' && c <= 'z') push(c);
            else if (c >= 'A' && c <= 'Z') push(static_cast<char>(c - 'A' + 'a'));
            else if (c >= '0' && c <= '9') push(c);
            else pending_space = true;
        } else {
            const auto base = latin_base(cp);
            if (base.empty()) pending_space = true;
            for (char c : base) push(c);
        }
    }
    return out;
}

bool validate_issn(std::string_view issn) {
    std::string compact;
    compact.reserve(8);
    for (char c : issn) {
        if (c == '-') continue;
        compact += c;
    }
    if (compact.size() != 8) return false;
    int sum = 0;
    for (int i = 0; i < 8; ++i) {
        const char c = compact[static_cast<std::size_t>(i)];
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if ((c == 'X' || c == 'x') && i == 7) digit = 10;
        else return false;
        sum += digit * (8 - i);
    }
    return sum % 11 == 0;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    if (a.size() > b.size()) std::swap(a, b);
    std::vector<std::size_t> prev(a.size() + 1), cur(a.size() + 1);
    for (std::size_t i = 0; i <= a.size(); ++i) prev[i] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
        cur[0] = j;
        for (std::size_t i = 1; i <= a.size(); ++i) {
            const std::size_t sub = prev[i - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[i] = std::min({prev[i] + 1, cur[i - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[a.size()];
}

double title_similarity(std::string_view a, std::string_view b) {
    const std::size_t m = std::max(a.size(), b.size());
    if (m == 0) return 1.0;
    return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(m);
}

namespace {

std::string compact_issn(std::string_view issn) {
    std::string out;
    out.reserve(8);
    for (char c : issn) {
        if (c == '-') continue;
        out += (c == 'x') ? 'X' : c;
    }
    return out;
}

std::string first_token(std::string_view normalized) {
    const auto pos = normalized.find(' ');
    return std::string(normalized.substr(0, pos == std::string_view::npos ? normalized.size() : pos));
}

constexpr const char* kAmbiguous = "\x01ambiguous";

} // namespace

JournalResolver::JournalResolver(std::vector<CanonicalJournal> registry,
                                 std::map<std::string, std::string> equivalences,
                                 ResolverOptions options)
    : registry_(std::move(registry)), options_(options) {
    std::sort(registry_.begin(), registry_.end(),
              [](const auto& a, const auto& b) { return a.journal_id < b.journal_id; });
    auto add_equiv = [&](const std::string& key, const std::string& id) {
        auto [it, inserted] = equivalences_.emplace(key, id);
        if (!inserted && it->second != id) it->second = kAmbiguous;
    };
    for (std::size_t idx = 0; idx < registry_.size(); ++idx) {
        auto& j = registry_[idx];
        j.canonical_title = normalize_title(j.canonical_title);
        for (const auto& issn : j.issns) {
            const auto key = compact_issn(issn);
            if (by_issn_.emplace(key, idx).second)
                by_issn_prefix_[key.substr(0, 4)].push_back(idx);
        }
        if (!j.canonical_title.empty())
            by_first_token_[first_token(j.canonical_title)].push_back(idx);
        // The id itself doubles as a variant so already-canonical refs
        // (citation files) resolve without a title lookup.
        add_equiv("t:" + normalize_title(j.journal_id), j.journal_id);
    }
    for (const auto& [variant, id] : equivalences) {
        if (validate_issn(variant))
            equivalences_["i:" + compact_issn(variant)] = id;
        else
            equivalences_["t:" + normalize_title(variant)] = id;
    }
}

MatchDecision JournalResolver::resolve(const RawArtifactRef& raw) const {
    MatchDecision d;
    d.raw = raw;

    if (!raw.issn.empty() && validate_issn(raw.issn)) {
        const auto key = compact_issn(raw.issn);
        if (const auto it = by_issn_.find(key); it != by_issn_.end()) {
            d.resolved = registry_[it->second].journal_id;
            d.method = MatchMethod::ExactIssn;
            d.score = 1.0;
            return d;
        }
        if (const auto it = equivalences_.find("i:" + key);
            it != equivalences_.end() && it->second != kAmbiguous) {
            d.resolved = it->second;
            d.method = MatchMethod::EquivalenceTable;
            d.score = 1.0;
            return d;
        }
    }

    const std::string norm = normalize_title(raw.title);
    if (!norm.empty()) {
        if (const auto it = equivalences_.find("t:" + norm);
            it != equivalences_.end() && it->second != kAmbiguous) {
            d.resolved = it->second;
            d.method = MatchMethod::EquivalenceTable;
            d.score = 1.0;
            return d;
        }
    }

    // Fuzzy, over a blocked candidate set.
    if (norm.empty()) return d;
    std::vector<std::size_t> candidates;
    if (const auto it = by_first_token_.find(first_token(norm)); it != by_first_token_.end())
        candidates.insert(candidates.end(), it->second.begin(), it->second.end());
    if (!raw.issn.empty()) {
        const auto key = compact_issn(raw.issn);
        if (key.size() >= 4) {
            if (const auto it = by_issn_prefix_.find(key.substr(0, 4));
                it != by_issn_prefix_.end())
                candidates.insert(candidates.end(), it->second.begin(), it->second.end());
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    double best = -1.0, second = -1.0;
    std::size_t best_idx = 0;
    for (const std::size_t idx : candidates) {
        const double s = title_similarity(norm, registry_[idx].canonical_title);
        if (s > best) {
            second = best;
            best = s;
            best_idx = idx;
        } else if (s > second) {
            second = s;
        }
    }
    if (best >= 0.0) d.score = best;
    if (best >= options_.threshold && (second < 0.0 || best - second >= options_.margin)) {
        d.resolved = registry_[best_idx].journal_id;
        d.method = MatchMethod::FuzzyTitle;
        d.score = best;
    }
    return d;
}

std::optional<std::string> JournalResolver::resolve_ref(const std::string& ref) const {
    RawArtifactRef raw;
    raw.source_id = ref;
    if (validate_issn(ref)) raw.issn = ref;
    raw.title = ref;
    const auto d = resolve(raw);
    return d.resolved;
}

std::vector<CanonicalJournal> load_registry(std::istream& in) {
    if (in.fail()) throw IoError("unreadable registry stream");
    std::vector<CanonicalJournal> out;
    std::set<std::string> seen;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("journal_id,", 0) == 0) continue; // header
        const auto fields = csv_split(line);
        if (!fields || fields->size() != 3)
            throw ConfigError("registry line " + std::to_string(line_no) + ": bad field count");
        CanonicalJournal j;
        j.journal_id = (*fields)[0];
        j.canonical_title = (*fields)[1];
        if (j.journal_id.empty())
            throw ConfigError("registry line " + std::to_string(line_no) + ": empty journal_id");
        if (!seen.insert(j.journal_id).second)
            throw ConfigError("registry line " + std::to_string(line_no) + ": duplicate id " +
                              j.journal_id);
        const std::string& issns = (*fields)[2];
        std::size_t start = 0;
        while (start <= issns.size() && !issns.empty()) {
            const auto end = issns.find(';', start);
            const std::string one =
                issns.substr(start, end == std::string::npos ? std::string::npos : end - start);
            if (!one.empty()) {
                if (!validate_issn(one))
                    throw ConfigError("registry line " + std::to_string(line_no) +
                                      ": invalid ISSN " + one);
                j.issns.insert(one);
            }
            if (end == std::string::npos) break;
            start = end + 1;
        }
        out.push_back(std::move(j));
    }
    if (in.bad()) throw IoError("I/O failure while reading registry");
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.journal_id < b.journal_id; });
    return out;
}

void write_registry(std::ostream& out, const std::vector<CanonicalJournal>& registry) {
    out << "journal_id,canonical_title,issns\n";
    for (const auto& j : registry) {
        std::string issns;
        for (const auto& i : j.issns) {
            if (!issns.empty()) issns += ';';
            issns += i;
        }
        const std::string fields[] = {j.journal_id, j.canonical_title, issns};
        out << csv_join(fields) << '\n';
    }
}

std::map<std::string, std::string> load_equivalences(std::istream& in) {
    if (in.fail()) throw IoError("unreadable equivalence stream");
    std::map<std::string, std::string> out;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("variant,", 0) == 0) continue;
        const auto fields = csv_split(line);
        if (!fields || fields->size() != 2)
            throw ConfigError("equivalence line " + std::to_string(line_no) +
                              ": bad field count");
        if ((*fields)[0].empty() || (*fields)[1].empty())
            throw ConfigError("equivalence line " + std::to_string(line_no) + ": empty field");
        out[(*fields)[0]] = (*fields)[1];
    }
    if (in.bad()) throw IoError("I/O failure while reading equivalences");
    return out;
}

void MatchStats::add(MatchMethod m) {
    switch (m) {
    case MatchMethod::ExactIssn: ++exact_issn; break;
    case MatchMethod::EquivalenceTable: ++equivalence; break;
    case MatchMethod::FuzzyTitle: ++fuzzy; break;
    case MatchMethod::Unresolved: ++unresolved; break;
    }
}

} // namespace scinet
