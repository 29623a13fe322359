// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <iosfwd>

#include "scinet/graph.hpp"

namespace scinet {

/// Writes "source,target,weight" rows in canonical order (undirected
/// graphs store source < target), preceded by a header line.
void write_edge_list(std::ostream& out, const WeightedDigraph& g);

/// Reads the edge list format back. Throws ConfigError on malformed
/// content, IoError on stream failure.
WeightedDigraph read_edge_list(std::istream& in, bool directed);

void write_graphml(std::ostream& out, const WeightedDigraph& g);
void write_dot(std::ostream& out, const WeightedDigraph& g);

std::string xml_escape(std::string_view s);

} // namespace scinet
