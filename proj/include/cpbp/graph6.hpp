#pragma once

#include <string>
#include <vector>

#include "cpbp/graph.hpp"

namespace cpbp {

/// Standard graph6 ASCII encoding: 6-bit groups offset by 63, upper triangle
/// in column order x(0,1), x(0,2), x(1,2), x(0,3), ...
inline std::string graph6_encode(const Graph& g) {
    std::string out;
    if (g.n <= 62) {
        out.push_back(char(g.n + 63));
    } else {
        out.push_back(126);
        out.push_back(char(((g.n >> 12) & 63) + 63));
        out.push_back(char(((g.n >> 6) & 63) + 63));
        out.push_back(char((g.n & 63) + 63));
    }
    int acc = 0, nbits = 0;
    for (int j = 1; j < g.n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.edge(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(char(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    if (nbits > 0) out.push_back(char((acc << (6 - nbits)) + 63));
    return out;
}

inline Graph graph6_decode(const std::string& s) {
    size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= s.size()) throw std::invalid_argument("graph6: truncated input");
        int c = static_cast<unsigned char>(s[pos++]);
        if (c < 63 || c > 126) throw std::invalid_argument("graph6: byte out of range");
        return c - 63;
    };
    int n;
    int first = next();
    if (first == 63) {
        // '~' prefix: 18-bit vertex count
        int a = next(), b = next(), c = next();
        n = (a << 12) | (b << 6) | c;
    } else {
        n = first;
    }
    if (n > kMaxVertices)
        throw capacity_error("graph6: vertex count exceeds 64: " + std::to_string(n));
    Graph g(n);
    int bits_needed = n * (n - 1) / 2;
    size_t groups = (bits_needed + 5) / 6;
    if (s.size() - pos != groups) throw std::invalid_argument("graph6: wrong length");
    int acc = 0, nbits = 0, idx = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            if (nbits == 0) {
                acc = next();
                nbits = 6;
            }
            if (acc & (1 << (nbits - 1))) g.add_edge(i, j);
            --nbits;
            ++idx;
        }
    (void)idx;
    return g;
}

/// Newline-separated graph6 corpus helpers. Blank lines are skipped on read.
inline std::string graph6_lines(const std::vector<Graph>& graphs) {
    std::string out;
    for (const Graph& g : graphs) {
        out += graph6_encode(g);
        out += "\n";
    }
    return out;
}

inline std::vector<Graph> parse_graph6_lines(const std::string& text) {
    std::vector<Graph> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back(graph6_decode(line));
    }
    return out;
}

}  // namespace cpbp
