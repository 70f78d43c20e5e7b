#ifndef LPA_GRAPH_HPP
#define LPA_GRAPH_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <lpa/scalar.hpp>

namespace lpa {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/**
 * Finite directed multigraph with named vertices and edges.
 *
 * Parallel edges are allowed; edge identity is the id, never the endpoint
 * pair. Iteration order everywhere is declaration order, so every derived
 * object (normal forms, reports) is reproducible byte for byte. Instances
 * are immutable once built and safe to share across threads.
 */
class Graph {
public:
    class Builder {
    public:
        Builder& vertex(std::string name);
        Builder& edge(std::string name, const std::string& src, const std::string& rng);
        Graph build() &&;

    private:
        friend class Graph;
        std::vector<std::string> vertex_names_;
        std::vector<std::string> edge_names_;
        std::vector<VertexId> src_;
        std::vector<VertexId> rng_;
        std::map<std::string, VertexId> vertex_index_;
        std::map<std::string, EdgeId> edge_index_;
    };

    std::size_t vertex_count() const { return vertex_names_.size(); }
    std::size_t edge_count() const { return edge_names_.size(); }

    VertexId vertex(const std::string& name) const;
    EdgeId edge(const std::string& name) const;
    bool has_vertex(const std::string& name) const { return vertex_index_.count(name) > 0; }
    bool has_edge(const std::string& name) const { return edge_index_.count(name) > 0; }
    bool has_symbol(const std::string& name) const { return has_vertex(name) || has_edge(name); }

    const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
    const std::string& edge_name(EdgeId e) const { return edge_names_.at(e); }

    VertexId src(EdgeId e) const { return src_.at(e); }
    VertexId rng(EdgeId e) const { return rng_.at(e); }

    /// Out-edges of v in declaration order.
    std::span<const EdgeId> out_edges(VertexId v) const;
    std::size_t out_degree(VertexId v) const { return out_edges(v).size(); }
    bool is_sink(VertexId v) const { return out_degree(v) == 0; }

    /// The designated out-edge used by the normal form at a regular vertex:
    /// the out-edge with least id. Empty for sinks.
    std::optional<EdgeId> special_edge(VertexId v) const;

    bool operator==(const Graph& other) const { return this == &other; }

private:
    std::vector<std::string> vertex_names_;
    std::vector<std::string> edge_names_;
    std::vector<VertexId> src_;
    std::vector<VertexId> rng_;
    std::map<std::string, VertexId> vertex_index_;
    std::map<std::string, EdgeId> edge_index_;
    std::vector<std::vector<EdgeId>> out_;
};

/**
 * Finite path: a composable edge sequence, or a single vertex (length 0).
 * The source vertex of a length-0 path is stored explicitly.
 */
class FinPath {
public:
    /// Length-0 path at a vertex.
    FinPath(const Graph& g, VertexId base);
    /// Path from an edge sequence; throws DomainError if not composable.
    FinPath(const Graph& g, std::vector<EdgeId> edges);

    const Graph& graph() const { return *graph_; }
    std::size_t length() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    EdgeId edge(std::size_t i) const { return edges_.at(i); }
    const std::vector<EdgeId>& edges() const { return edges_; }

    VertexId src() const;
    VertexId rng() const;
    /// Vertex visited after the first i edges (0 <= i <= length).
    VertexId vertex_at(std::size_t i) const;

    FinPath prefix(std::size_t n) const;
    FinPath suffix_from(std::size_t n) const;
    /// Concatenation; throws DomainError unless rng() == other.src().
    FinPath operator+(const FinPath& other) const;
    FinPath repeated(std::size_t times) const;
    bool is_closed() const { return src() == rng(); }

    bool operator==(const FinPath& other) const;
    /// Orders by (length, edge ids, base vertex); used for monomial sorting.
    std::strong_ordering operator<=>(const FinPath& other) const;

private:
    const Graph* graph_;
    VertexId base_;
    std::vector<EdgeId> edges_;
};

enum class VertexKind { Sink, Regular };

struct VertexClass {
    VertexKind kind;
    std::size_t out_degree;
};

VertexClass classify_vertex(const Graph& g, VertexId v);

/// X_i(beta): edges leaving the source of beta's (i+1)-th edge, other than
/// that edge itself. Requires 0 <= i < length(beta).
std::vector<EdgeId> exits(const Graph& g, const FinPath& beta, std::size_t i);

struct ClosedPath {
    FinPath path;
    /// True when the edge sequence is the least rotation of its cycle.
    bool canonical_rotation;
};

/// All closed paths of length <= max_len that are not proper powers of a
/// shorter closed path. Rotations are distinct outputs.
std::vector<ClosedPath> simple_closed_paths(const Graph& g, std::size_t max_len);

struct LinePointResult {
    bool is_line_point;
    /// Set when a reachable vertex emits two or more edges.
    std::optional<VertexId> branching_vertex;
    /// Set when the reachable subgraph contains a cycle.
    std::optional<FinPath> cycle;
    std::string describe(const Graph& g) const;
};

/// True iff no vertex reachable from u branches and no cycle is reachable.
LinePointResult is_line_point(const Graph& g, VertexId u);

/// Closed, nonempty, and not a proper power of a shorter closed path.
bool is_simple_closed(const FinPath& p);

/// True iff a (possibly length-0) path leads from `from` to some target.
bool reaches(const Graph& g, VertexId from, const std::vector<VertexId>& targets);

/// All vertices from which `targets` can be reached, ascending order.
std::vector<VertexId> reaching_set(const Graph& g, const std::vector<VertexId>& targets);

} // namespace lpa

#endif
