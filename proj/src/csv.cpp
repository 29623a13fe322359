// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/csv.hpp"

namespace scinet {

std::optional<std::vector<std::string>> csv_split(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && line[i + 1] == '"') {
                    cur += '"';
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                cur += c;
                ++i;
            }
        } else if (c == '"') {
            if (!cur.empty()) return std::nullopt; // quote in the middle of a bare field
            in_quotes = true;
            ++i;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
            ++i;
        } else {
            cur += c;
            ++i;
        }
    }
    if (in_quotes) return std::nullopt;
    fields.push_back(std::move(cur));
    return fields;
}

std::string csv_quote(std::string_view field) {
    bool needs = false;
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs = true;
            break;
        }
    }
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string csv_join(std::span<const std::string> fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        out += csv_quote(fields[i]);
    }
    return out;
}

} // namespace scinet
