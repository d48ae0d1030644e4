#ifndef METDIM_EDGE_LIST_HPP
#define METDIM_EDGE_LIST_HPP

#include <metdim/graph.hpp>

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace metdim {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    auto line() const -> std::size_t { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline auto split_fields(std::string_view text) -> std::vector<std::string_view> {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r')
            ++j;
        if (j > i)
            fields.push_back(text.substr(i, j - i));
        i = j;
    }
    return fields;
}

inline auto parse_count(std::string_view field, std::size_t line) -> std::size_t {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(line, "expected a non-negative integer, got '" + std::string(field) + "'");
    return value;
}

} // namespace detail

/**
 * Reads the edge-list format: a header line `<n> <m>` followed by m lines
 * `<u> <v>` with 0-based endpoints. Text after `#` is ignored and blank lines
 * are skipped.
 */
inline auto read_edge_list(std::istream& in) -> Graph {
    std::string raw;
    std::size_t line = 0;
    bool have_header = false;
    std::size_t n = 0, m = 0;
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_lines;

    while (std::getline(in, raw)) {
        ++line;
        std::string_view text(raw);
        if (auto hash = text.find('#'); hash != std::string_view::npos)
            text = text.substr(0, hash);
        auto fields = detail::split_fields(text);
        if (fields.empty())
            continue;
        if (fields.size() != 2)
            throw ParseError(line, "expected two fields, got " + std::to_string(fields.size()));
        auto a = detail::parse_count(fields[0], line);
        auto b = detail::parse_count(fields[1], line);
        if (!have_header) {
            if (a > max_materialized_vertices)
                throw ParseError(line, "vertex count " + std::to_string(a) + " too large");
            n = a;
            m = b;
            have_header = true;
            continue;
        }
        if (edges.size() == m)
            throw ParseError(line, "more edges than the header's " + std::to_string(m));
        if (a >= n || b >= n)
            throw ParseError(line, "endpoint out of range for " + std::to_string(n) + " vertices");
        if (a == b)
            throw ParseError(line, "self-loop at vertex " + std::to_string(a));
        edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
        edge_lines.push_back(line);
    }
    if (!have_header)
        throw ParseError(line, "missing header line");
    if (edges.size() != m)
        throw ParseError(line, "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));

    // Report a repeated edge at the line where it reappears.
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    auto key = [&](std::size_t i) {
        auto [u, v] = edges[i];
        return u < v ? Edge{u, v} : Edge{v, u};
    };
    std::ranges::sort(order, [&](auto x, auto y) { return std::pair(key(x), x) < std::pair(key(y), y); });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (key(order[i]) == key(order[i - 1]))
            throw ParseError(edge_lines[order[i]], "repeated edge");

    return Graph(n, edges);
}

inline auto write_edge_list(std::ostream& out, const Graph& g) -> void {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges())
        out << u << ' ' << v << '\n';
}

} // namespace metdim

#endif
