// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/graph_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "scinet/csv.hpp"

namespace scinet {

void write_edge_list(std::ostream& out, const WeightedDigraph& g) {
    out << "source,target,weight\n";
    for (const auto& e : g.edges()) {
        const std::string fields[] = {g.id_of(e.src), g.id_of(e.dst), format_double(e.weight)};
        out << csv_join(fields) << '\n';
    }
}

WeightedDigraph read_edge_list(std::istream& in, bool directed) {
    if (in.fail()) throw IoError("unreadable edge list stream");
    GraphBuilder b(directed);
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line == "source,target,weight") continue;
        const auto fields = csv_split(line);
        if (!fields || fields->size() != 3)
            throw ConfigError("edge list line " + std::to_string(line_no) + ": bad field count");
        double w = 0.0;
        const auto& ws = (*fields)[2];
        const auto res = std::from_chars(ws.data(), ws.data() + ws.size(), w);
        if (res.ec != std::errc() || res.ptr != ws.data() + ws.size())
            throw ConfigError("edge list line " + std::to_string(line_no) + ": bad weight");
        b.add_edge((*fields)[0], (*fields)[1], w);
    }
    if (in.bad()) throw IoError("I/O failure while reading edge list");
    return b.build();
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

void write_graphml(std::ostream& out, const WeightedDigraph& g) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out << "  <key id=\"w\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
    out << "  <graph id=\"G\" edgedefault=\"" << (g.directed() ? "directed" : "undirected")
        << "\">\n";
    for (const auto& id : g.node_ids())
        out << "    <node id=\"" << xml_escape(id) << "\"/>\n";
    for (const auto& e : g.edges()) {
        out << "    <edge source=\"" << xml_escape(g.id_of(e.src)) << "\" target=\""
            << xml_escape(g.id_of(e.dst)) << "\"><data key=\"w\">" << format_double(e.weight)
            << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

void write_dot(std::ostream& out, const WeightedDigraph& g) {
    out << (g.directed() ? "digraph G {\n" : "graph G {\n");
    for (const auto& id : g.node_ids()) out << "  " << dot_quote(id) << ";\n";
    const char* arrow = g.directed() ? " -> " : " -- ";
    for (const auto& e : g.edges()) {
        out << "  " << dot_quote(g.id_of(e.src)) << arrow << dot_quote(g.id_of(e.dst))
            << " [weight=" << format_double(e.weight) << "];\n";
    }
    out << "}\n";
}

} // namespace scinet
