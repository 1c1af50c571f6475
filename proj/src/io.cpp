#include "hsc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hsc {

namespace {

bool blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void fail(std::size_t lineno, const std::string& msg) {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
}

std::string format_weight(double w) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    return buf;
}

} // namespace

WeightedHypergraph parse_hypergraph(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::uint32_t n = 0, d = 0;
    bool have_header = false;
    WeightedHypergraph h(2, 2);
    std::vector<NodeId> nodes;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank_or_comment(line)) continue;
        std::istringstream ss(line);
        if (!have_header) {
            if (!(ss >> n >> d)) fail(lineno, "expected header \"n d\"");
            std::string trailing;
            if (ss >> trailing) fail(lineno, "trailing content after header");
            if (d < 2 || n < d) fail(lineno, "invalid header values");
            h = WeightedHypergraph(n, d);
            have_header = true;
            continue;
        }
        nodes.clear();
        for (std::uint32_t i = 0; i < d; ++i) {
            NodeId v;
            if (!(ss >> v)) fail(lineno, "expected " + std::to_string(d) + " node ids");
            nodes.push_back(v);
        }
        std::string wtok;
        if (!(ss >> wtok)) fail(lineno, "missing edge weight");
        std::string trailing;
        if (ss >> trailing) fail(lineno, "trailing content after weight");
        try {
            if (wtok == "x") {
                h.add_edge(nodes, 0.0, /*observed=*/false);
            } else {
                std::size_t pos = 0;
                double w = std::stod(wtok, &pos);
                if (pos != wtok.size()) fail(lineno, "malformed weight \"" + wtok + "\"");
                h.add_edge(nodes, w);
            }
        } catch (const WeightOutOfRange&) {
            throw;
        } catch (const std::invalid_argument& e) {
            fail(lineno, e.what());
        }
    }
    if (!have_header) throw ParseError("empty input: missing header");
    h.freeze();
    return h;
}

WeightedHypergraph parse_hypergraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_hypergraph(in);
}

void serialize_hypergraph(const WeightedHypergraph& h, std::ostream& out) {
    out << h.node_count() << ' ' << h.edge_size() << '\n';
    for (std::size_t i = 0; i < h.stored_edge_count(); ++i) {
        for (NodeId v : h.edge_nodes(i)) out << v << ' ';
        if (h.observed(i)) {
            out << format_weight(h.weight(i)) << '\n';
        } else {
            out << "x\n";
        }
    }
}

std::string serialize_hypergraph(const WeightedHypergraph& h) {
    std::ostringstream ss;
    serialize_hypergraph(h, ss);
    return ss.str();
}

Partition parse_partition(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank_or_comment(line)) continue;
        std::istringstream ss(line);
        std::uint32_t i, lab;
        if (!(ss >> i >> lab)) fail(lineno, "expected \"i label\"");
        rows.emplace_back(i, lab);
    }
    std::sort(rows.begin(), rows.end());
    Partition p;
    p.labels.resize(rows.size());
    for (std::size_t idx = 0; idx < rows.size(); ++idx) {
        if (rows[idx].first != idx + 1) {
            throw ParseError("partition must cover node ids 1..n exactly");
        }
        p.labels[idx] = rows[idx].second;
        p.k = std::max(p.k, rows[idx].second);
    }
    p.validate();
    return p;
}

Partition parse_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_partition(in);
}

void serialize_partition(const Partition& p, std::ostream& out) {
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
        out << (i + 1) << ' ' << p.labels[i] << '\n';
    }
}

} // namespace hsc
