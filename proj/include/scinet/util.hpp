// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scinet {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyGraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest decimal form that round-trips the value ("2", "0.25", ...).
std::string format_double(double v);

/// Fixed-point form with the given number of decimals.
std::string format_fixed(double v, int decimals);

/// Seconds since the Unix epoch -> "YYYY-MM-DDThh:mm:ssZ".
std::string format_rfc3339(std::int64_t t);

/// Strict RFC 3339 UTC instant at second precision; nullopt on anything else.
std::optional<std::int64_t> parse_rfc3339(std::string_view s);

std::string json_escape(std::string_view s);

/// Median of the values; 0 for an empty vector.
double median(std::vector<double> v);

/// Splits [0, n) into chunk_count contiguous chunks and runs
/// fn(chunk_index, begin, end) for each, on up to `workers` threads.
/// Chunk boundaries do not depend on the worker count, so callers can
/// reduce per-chunk results in chunk order and get identical floating
/// point output no matter how the work was scheduled.
void run_chunked(std::size_t n, std::size_t chunk_count, unsigned workers,
                 const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

unsigned default_workers();
void set_default_workers(unsigned w);

} // namespace scinet
