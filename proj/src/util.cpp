// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/util.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <thread>

namespace scinet {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

namespace {

// Days between 1970-01-01 and y-m-d in the proleptic Gregorian calendar.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += (m <= 2);
}

bool leap_year(std::int64_t y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(std::int64_t y, unsigned m) {
    static const unsigned dim[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && leap_year(y)) return 29;
    return dim[m - 1];
}

bool two_digits(std::string_view s, std::size_t pos, unsigned& out) {
    if (s[pos] < '0' || s[pos] > '9' || s[pos + 1] < '0' || s[pos + 1] > '9') return false;
    out = static_cast<unsigned>((s[pos] - '0') * 10 + (s[pos + 1] - '0'));
    return true;
}

} // namespace

std::string format_rfc3339(std::int64_t t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d, static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60), static_cast<long long>(rem % 60));
    return buf;
}

std::optional<std::int64_t> parse_rfc3339(std::string_view s) {
    // YYYY-MM-DDThh:mm:ssZ, nothing more, nothing less.
    if (s.size() != 20) return std::nullopt;
    if (s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' || s[16] != ':' || s[19] != 'Z')
        return std::nullopt;
    for (std::size_t i : {0u, 1u, 2u, 3u})
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
    unsigned year = 0;
    for (std::size_t i = 0; i < 4; ++i) year = year * 10 + static_cast<unsigned>(s[i] - '0');
    unsigned mon, day, hh, mm, ss;
    if (!two_digits(s, 5, mon) || !two_digits(s, 8, day) || !two_digits(s, 11, hh) ||
        !two_digits(s, 14, mm) || !two_digits(s, 17, ss))
        return std::nullopt;
    if (mon < 1 || mon > 12) return std::nullopt;
    if (day < 1 || day > days_in_month(year, mon)) return std::nullopt;
    if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
    return days_from_civil(year, mon, day) * 86400 + hh * 3600 + mm * 60 + ss;
}

std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\b': out += "\\b"; break;
        case '\f': out += "\\f"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += static_cast<char>(c);
            }
        }
    }
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

namespace {
std::atomic<unsigned> g_workers{0};
}

unsigned default_workers() {
    unsigned w = g_workers.load();
    if (w == 0) {
        w = std::thread::hardware_concurrency();
        if (w == 0) w = 1;
    }
    return w;
}

void set_default_workers(unsigned w) {
    g_workers.store(w);
}

void run_chunked(std::size_t n, std::size_t chunk_count, unsigned workers,
                 const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (chunk_count == 0) chunk_count = 1;
    chunk_count = std::min(chunk_count, n);
    auto bounds = [&](std::size_t c) {
        const std::size_t lo = n * c / chunk_count;
        const std::size_t hi = n * (c + 1) / chunk_count;
        return std::pair<std::size_t, std::size_t>{lo, hi};
    };
    if (workers <= 1 || chunk_count == 1) {
        for (std::size_t c = 0; c < chunk_count; ++c) {
            auto [lo, hi] = bounds(c);
            fn(c, lo, hi);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunk_count) return;
            auto [lo, hi] = bounds(c);
            fn(c, lo, hi);
        }
    };
    const unsigned nthreads = static_cast<unsigned>(
        std::min<std::size_t>(workers, chunk_count));
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

} // namespace scinet
