// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scinet {

/// Splits one delimited line into fields. Double quotes wrap fields that
/// contain commas or quotes; embedded quotes are doubled. Returns nullopt
/// on unbalanced quoting. Embedded newlines are not supported.
std::optional<std::vector<std::string>> csv_split(std::string_view line);

/// Quotes a single field only when it needs it.
std::string csv_quote(std::string_view field);

std::string csv_join(std::span<const std::string> fields);

} // namespace scinet
