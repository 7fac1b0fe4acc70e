#include "ats/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ats/error.hpp"

namespace ats {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
    if (s.empty()) return false;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto res = std::from_chars(b, e, out);
    return res.ec == std::errc() && res.ptr == e;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool skippable(const std::string& line) {
    std::string t = trim(line);
    return t.empty() || t[0] == '#';
}

}  // namespace

Graph Graph::from_edges(NodeId n_nodes,
                        const std::vector<std::pair<NodeId, NodeId>>& edges,
                        std::vector<std::string> names) {
    Graph g;
    std::vector<std::vector<NodeId>> adj(n_nodes);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n_nodes || b >= n_nodes)
            throw Error("edge endpoint out of range");
        if (a == b) continue;  // self-loops dropped
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    g.offsets_.assign(n_nodes + 1, 0);
    for (NodeId v = 0; v < n_nodes; ++v) {
        auto& nb = adj[v];
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        g.offsets_[v + 1] = g.offsets_[v] + static_cast<std::int64_t>(nb.size());
    }
    g.nbrs_.reserve(g.offsets_[n_nodes]);
    for (NodeId v = 0; v < n_nodes; ++v)
        g.nbrs_.insert(g.nbrs_.end(), adj[v].begin(), adj[v].end());

    if (names.empty()) {
        names.reserve(n_nodes);
        for (NodeId v = 0; v < n_nodes; ++v) names.push_back(std::to_string(v));
    } else if (static_cast<NodeId>(names.size()) != n_nodes) {
        throw Error("node name count does not match node count");
    }
    g.names_ = std::move(names);
    g.name_index_.reserve(g.names_.size());
    for (NodeId v = 0; v < n_nodes; ++v) g.name_index_.emplace(g.names_[v], v);
    return g;
}

Graph Graph::with_attributes(Eigen::MatrixXd x) const {
    if (x.rows() != num_nodes())
        throw Error("attribute matrix has " + std::to_string(x.rows()) +
                    " rows, graph has " + std::to_string(num_nodes()) + " nodes");
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            if (x(i, j) != 0.0 && x(i, j) != 1.0)
                throw Error("attribute entry at node " + std::to_string(i) +
                            " dim " + std::to_string(j) + " is not 0 or 1");
    Graph g = *this;
    g.attrs_ = std::move(x);
    return g;
}

std::optional<NodeId> Graph::find_node(const std::string& name) const {
    auto it = name_index_.find(name);
    if (it == name_index_.end()) return std::nullopt;
    return it->second;
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open edge list: " + path);

    std::vector<std::pair<std::string, std::string>> raw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        auto toks = split_ws(line);
        if (toks.size() != 2)
            throw Error(path + ":" + std::to_string(lineno) +
                        ": expected 2 node ids, got " + std::to_string(toks.size()));
        raw.emplace_back(std::move(toks[0]), std::move(toks[1]));
    }
    if (raw.empty()) throw Error(path + ": no edges found");

    // Token policy: a file whose ids are exactly the integers 0..N-1 keeps
    // them as indices; anything else is remapped in first-appearance order.
    bool all_int = true;
    std::uint64_t max_id = 0;
    std::unordered_map<std::string, NodeId> seen;
    std::vector<std::string> order;
    for (const auto& [a, b] : raw) {
        for (const std::string* t : {&a, &b}) {
            std::uint64_t v = 0;
            if (all_int && parse_u64(*t, v))
                max_id = std::max(max_id, v);
            else
                all_int = false;
            if (seen.emplace(*t, static_cast<NodeId>(order.size())).second)
                order.push_back(*t);
        }
    }
    const bool dense_int = all_int && max_id + 1 == order.size();

    NodeId n = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(raw.size());
    std::vector<std::string> names;
    if (dense_int) {
        n = static_cast<NodeId>(max_id + 1);
        for (const auto& [a, b] : raw) {
            std::uint64_t u = 0, v = 0;
            parse_u64(a, u);
            parse_u64(b, v);
            edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        }
    } else {
        n = static_cast<NodeId>(order.size());
        names = order;
        for (const auto& [a, b] : raw)
            edges.emplace_back(seen.at(a), seen.at(b));
    }
    return Graph::from_edges(n, edges, std::move(names));
}

namespace {

bool parse_bit(const std::string& s, double& out) {
    std::string t = trim(s);
    if (t == "0") {
        out = 0.0;
        return true;
    }
    if (t == "1") {
        out = 1.0;
        return true;
    }
    return false;
}

Graph load_attr_triplets(std::ifstream& in, const std::string& path, const Graph& g) {
    struct Entry {
        NodeId node;
        std::int64_t dim;
        double value;
    };
    std::vector<Entry> entries;
    std::int64_t max_dim = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        auto toks = split_ws(line);
        const std::string at = path + ":" + std::to_string(lineno);
        if (toks.size() != 3)
            throw Error(at + ": expected 'node dim value', got " +
                        std::to_string(toks.size()) + " fields");
        auto node = g.find_node(toks[0]);
        if (!node) throw Error(at + ": node id '" + toks[0] + "' not in graph");
        std::uint64_t dim = 0;
        if (!parse_u64(toks[1], dim))
            throw Error(at + ": bad attribute dimension '" + toks[1] + "'");
        double value = 0;
        if (!parse_bit(toks[2], value))
            throw Error(at + ": attribute value must be 0 or 1, got '" + toks[2] + "'");
        entries.push_back({*node, static_cast<std::int64_t>(dim), value});
        max_dim = std::max(max_dim, static_cast<std::int64_t>(dim));
    }
    if (entries.empty()) throw Error(path + ": no attribute entries");
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(g.num_nodes(), max_dim + 1);
    for (const auto& e : entries) x(e.node, e.dim) = e.value;
    return g.with_attributes(std::move(x));
}

Graph load_attr_csv(std::ifstream& in, const std::string& path, const Graph& g) {
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    bool first_data = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool ok = true;
        while (std::getline(ss, cell, ',')) {
            double v = 0;
            if (!parse_bit(cell, v)) {
                ok = false;
                break;
            }
            row.push_back(v);
        }
        if (!ok) {
            if (first_data) {  // header row
                first_data = false;
                continue;
            }
            throw Error(path + ":" + std::to_string(lineno) +
                        ": CSV cell is not 0 or 1");
        }
        first_data = false;
        if (!rows.empty() && row.size() != rows.front().size())
            throw Error(path + ":" + std::to_string(lineno) + ": ragged CSV row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(path + ": no attribute rows");
    if (static_cast<NodeId>(rows.size()) != g.num_nodes())
        throw Error(path + ": CSV has " + std::to_string(rows.size()) +
                    " rows, graph has " + std::to_string(g.num_nodes()) + " nodes");
    Eigen::MatrixXd x(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return g.with_attributes(std::move(x));
}

}  // namespace

Graph load_attributes(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open attribute file: " + path);
    // Sniff the format: the first usable line of a dense CSV contains commas.
    std::string line;
    std::streampos pos = in.tellg();
    bool csv = false;
    while (std::getline(in, line)) {
        if (skippable(line)) {
            pos = in.tellg();
            continue;
        }
        csv = line.find(',') != std::string::npos;
        break;
    }
    in.clear();
    in.seekg(0);
    return csv ? load_attr_csv(in, path, g) : load_attr_triplets(in, path, g);
}

std::vector<int> load_labels(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open label file: " + path);
    std::vector<int> labels(g.num_nodes(), -1);
    std::unordered_map<std::string, int> classes;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        auto toks = split_ws(line);
        const std::string at = path + ":" + std::to_string(lineno);
        if (toks.size() != 2) throw Error(at + ": expected 'node label'");
        auto node = g.find_node(toks[0]);
        if (!node) throw Error(at + ": node id '" + toks[0] + "' not in graph");
        auto [it, fresh] = classes.emplace(toks[1], static_cast<int>(classes.size()));
        (void)fresh;
        labels[*node] = it->second;
    }
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (labels[v] < 0)
            throw Error(path + ": no label for node '" + g.node_name(v) + "'");
    return labels;
}

SparseMat normalize_adjacency(const Graph& g) {
    const NodeId n = g.num_nodes();
    std::vector<double> inv_sqrt(n);
    for (NodeId v = 0; v < n; ++v)
        inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)) + 1.0);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(n) + 2 * g.num_undirected_edges());
    for (NodeId v = 0; v < n; ++v) {
        trips.emplace_back(v, v, inv_sqrt[v] * inv_sqrt[v]);
        for (NodeId u : g.neighbors(v))
            trips.emplace_back(v, u, inv_sqrt[v] * inv_sqrt[u]);
    }
    SparseMat a_hat(n, n);
    a_hat.setFromTriplets(trips.begin(), trips.end());
    a_hat.makeCompressed();
    return a_hat;
}

}  // namespace ats
