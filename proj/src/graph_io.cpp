#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "gtsp/graph.hpp"

namespace gtsp {

std::string to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::MalformedHeader: return "malformed header";
        case ParseErrorKind::MalformedEdge: return "malformed edge line";
        case ParseErrorKind::VertexOutOfRange: return "vertex id out of range";
        case ParseErrorKind::DuplicateEdge: return "duplicate edge";
        case ParseErrorKind::SelfLoop: return "self-loop";
        case ParseErrorKind::EdgeCountMismatch: return "edge count mismatch";
    }
    return "unknown";
}

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& detail)
    : InputError("line " + std::to_string(line) + ": " + to_string(kind) + (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      line_(line) {}

namespace {

// Reads exactly two integers from a line; anything else is rejected.
bool read_pair(const std::string& line, long long& a, long long& b) {
    std::istringstream ss(line);
    if (!(ss >> a >> b)) return false;
    std::string rest;
    return !(ss >> rest);
}

bool skippable(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

Graph parse_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    long long n = -1, m = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        if (!read_pair(line, n, m) || n < 0 || m < 0 || n > (1 << 24)) {
            throw ParseError(ParseErrorKind::MalformedHeader, line_no, line);
        }
        break;
    }
    if (n < 0) throw ParseError(ParseErrorKind::MalformedHeader, line_no, "missing header");

    Graph g(static_cast<int>(n));
    std::set<Edge> seen;
    long long read = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        long long a = 0, b = 0;
        if (!read_pair(line, a, b)) throw ParseError(ParseErrorKind::MalformedEdge, line_no, line);
        if (read == m) throw ParseError(ParseErrorKind::EdgeCountMismatch, line_no, "more than " + std::to_string(m) + " edges");
        if (a < 0 || b < 0 || a >= n || b >= n) throw ParseError(ParseErrorKind::VertexOutOfRange, line_no, line);
        if (a == b) throw ParseError(ParseErrorKind::SelfLoop, line_no, line);
        const Edge e = make_edge(static_cast<VertexId>(a), static_cast<VertexId>(b));
        if (!seen.insert(e).second) throw ParseError(ParseErrorKind::DuplicateEdge, line_no, line);
        g.add_edge(e.u, e.v);
        ++read;
    }
    if (read != m) {
        throw ParseError(ParseErrorKind::EdgeCountMismatch, line_no,
                         "expected " + std::to_string(m) + ", got " + std::to_string(read));
    }
    return g;
}

Graph parse_graph(const std::string& text) {
    std::istringstream ss(text);
    return parse_graph(ss);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string format_graph(const Graph& g) {
    std::ostringstream ss;
    write_graph(ss, g);
    return ss.str();
}

}  // namespace gtsp
