#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace ats {

using NodeId = std::int32_t;
using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Immutable undirected graph: CSR adjacency (sorted neighbor lists, symmetric,
// no self-loops) plus an N x F dense attribute matrix with entries in {0,1}.
// Nodes carry their original file id as a name; all CSV output uses names,
// internal indices stay private to the library.
class Graph {
public:
    Graph() = default;

    // Builds the CSR from an edge list: symmetrizes, collapses duplicates and
    // drops self-loops. `names` (optional) supplies original id tokens; when
    // empty, nodes are named "0".."N-1".
    static Graph from_edges(NodeId n_nodes,
                            const std::vector<std::pair<NodeId, NodeId>>& edges,
                            std::vector<std::string> names = {});

    // Value-semantic attribute attachment: returns a copy of the graph with X
    // set. Validates the row count and that every entry is exactly 0 or 1.
    Graph with_attributes(Eigen::MatrixXd x) const;

    NodeId num_nodes() const { return static_cast<NodeId>(offsets_.size()) - 1; }
    Eigen::Index num_attr_dims() const { return attrs_.cols(); }
    bool has_attributes() const { return attrs_.cols() > 0; }
    std::int64_t num_undirected_edges() const {
        return static_cast<std::int64_t>(nbrs_.size()) / 2;
    }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {nbrs_.data() + offsets_[v], nbrs_.data() + offsets_[v + 1]};
    }
    NodeId degree(NodeId v) const {
        return static_cast<NodeId>(offsets_[v + 1] - offsets_[v]);
    }

    const Eigen::MatrixXd& attributes() const { return attrs_; }

    const std::string& node_name(NodeId v) const { return names_[v]; }
    std::optional<NodeId> find_node(const std::string& name) const;

private:
    std::vector<std::int64_t> offsets_;  // size N+1
    std::vector<NodeId> nbrs_;
    Eigen::MatrixXd attrs_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> name_index_;
};

// Reads a "src dst" per line edge-list file. `#`-prefixed and blank lines are
// skipped. If every id token is a non-negative integer and together they form
// a dense 0..N-1 range, the integers are used as node indices directly;
// otherwise tokens are remapped to 0..N-1 in first-appearance order.
Graph load_edge_list(const std::string& path);

// Reads node attributes into a copy of `g`. Two formats, sniffed by content:
// sparse "node dim value" triplets (whitespace separated), or a dense CSV of
// N rows x F comma-separated 0/1 cells with an optional header row.
Graph load_attributes(const std::string& path, const Graph& g);

// "node label" per line; labels are remapped to class ids 0..C-1 in
// first-appearance order. Returns one class id per node; nodes missing from
// the file are an error.
std::vector<int> load_labels(const std::string& path, const Graph& g);

// Symmetric normalization with self-loops: D^{-1/2} (A + I) D^{-1/2} where D
// is the degree matrix of A + I. Rows of isolated nodes reduce to the single
// self-loop entry 1.
SparseMat normalize_adjacency(const Graph& g);

}  // namespace ats
