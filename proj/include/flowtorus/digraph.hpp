#ifndef FLOWTORUS_DIGRAPH_HPP
#define FLOWTORUS_DIGRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "flowtorus/laurent.hpp"

namespace flowtorus {

using EdgeId = std::size_t;
using VertexId = std::size_t;

struct Edge {
    VertexId source = 0;
    VertexId target = 0;
    int sign = 1;             // +1 or -1
    IntVector hvec;           // length b
    std::int64_t weight = 1;  // grading degree, >= 1

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed multigraph with signed, homology-labelled, graded edges. Immutable.
class TransitionGraph {
public:
    TransitionGraph() = default;

    /// Throws Error(ValidationError) listing every violated invariant.
    TransitionGraph(std::size_t vertex_count, std::size_t b, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t rank() const noexcept { return b_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }

    /// Edge monomial (hvec, weight).
    Monomial monomial(EdgeId e) const { return Monomial(edges_[e].hvec, edges_[e].weight); }

    /// Outgoing edge ids per vertex, in increasing id order.
    const std::vector<std::vector<EdgeId>>& out_edges() const noexcept { return out_; }

    friend bool operator==(const TransitionGraph& a, const TransitionGraph& b)
    {
        return a.vertex_count_ == b.vertex_count_ && a.b_ == b.b_ && a.edges_ == b.edges_;
    }

private:
    std::size_t vertex_count_ = 0;
    std::size_t b_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> out_;
};

/// Index sets into a parent graph; the parent must outlive the subgraph.
class Subgraph {
public:
    Subgraph() = default;

    /// Vertices are the union of `vertices` and every endpoint of `edges`.
    Subgraph(const TransitionGraph& parent, std::vector<EdgeId> edges, std::vector<VertexId> vertices = {});

    static Subgraph whole(const TransitionGraph& g);
    static Subgraph from_edges(const TransitionGraph& g, std::vector<EdgeId> edges) { return Subgraph(g, std::move(edges)); }

    const TransitionGraph& parent() const { return *parent_; }
    const std::vector<EdgeId>& edges() const noexcept { return edges_; }
    const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
    bool empty() const noexcept { return edges_.empty() && vertices_.empty(); }
    bool has_edge(EdgeId e) const;
    bool has_vertex(VertexId v) const;

    /// Every edge and vertex of this subgraph lies in `other` (same parent).
    bool is_subgraph_of(const Subgraph& other) const;

    friend bool operator==(const Subgraph& a, const Subgraph& b)
    {
        return a.parent_ == b.parent_ && a.edges_ == b.edges_ && a.vertices_ == b.vertices_;
    }

private:
    const TransitionGraph* parent_ = nullptr;
    std::vector<EdgeId> edges_;       // sorted, unique
    std::vector<VertexId> vertices_;  // sorted, unique
};

Subgraph intersect(const Subgraph& a, const Subgraph& b);
Subgraph unite(const Subgraph& a, const Subgraph& b);

/// Cyclically ordered edge sequence; vertex-simple for SimpleCycle.
struct Cycle {
    std::vector<EdgeId> edges;
    friend bool operator==(const Cycle&, const Cycle&) = default;
};
using SimpleCycle = Cycle;

/// Strong components with induced edges, ordered by smallest vertex.
std::vector<Subgraph> strong_components(const Subgraph& g);

/// Maximal recurrent subgraph: edges inside strong components that carry a cycle.
Subgraph recurrent_core(const Subgraph& g);

/// Every ordered vertex pair lies on a common dynamical cycle.
bool is_irreducible(const Subgraph& g);

/// Every edge lies on a dynamical cycle inside g.
bool is_recurrent(const Subgraph& g);

constexpr std::size_t default_cycle_cap = 10'000;

/// Johnson-style enumeration of vertex-simple directed cycles (parallel edges give
/// distinct cycles). Each cycle starts at its smallest vertex.
std::vector<SimpleCycle> simple_cycles(const Subgraph& g, std::size_t cap = default_cycle_cap);

/// Throws NotACycle unless the edges compose head to tail cyclically.
void check_cycle(const TransitionGraph& g, std::span<const EdgeId> edges);

/// (sum of hvec, sum of weights) of a closed edge sequence.
Monomial cycle_class(const TransitionGraph& g, const Cycle& z);

/// Product of edge signs.
int cycle_sign(const TransitionGraph& g, const Cycle& z);

/// Vertex set of a cycle, in traversal order.
std::vector<VertexId> cycle_vertices(const TransitionGraph& g, const Cycle& z);

bool is_vertex_simple(const TransitionGraph& g, const Cycle& z);

/// Spanning forest chosen by breadth-first search over the underlying undirected graph,
/// visiting vertices and edges in increasing id order.
struct SpanningForest {
    std::vector<bool> is_tree_edge;
    std::vector<EdgeId> non_tree_edges; // increasing id; basis index = position
    std::vector<std::size_t> component; // per vertex
    std::size_t component_count = 0;
    std::vector<EdgeId> parent_edge;      // per vertex; npos at roots
    std::vector<std::size_t> depth;       // per vertex
    static constexpr EdgeId npos = static_cast<EdgeId>(-1);
};
SpanningForest spanning_forest(const TransitionGraph& g);

/// Signed edge coefficients of the fundamental cycle of a non-tree edge.
std::vector<std::pair<EdgeId, int>> fundamental_cycle(const TransitionGraph& g, const SpanningForest& forest,
                                                      EdgeId non_tree_edge);

/// Copy of g labelled by fundamental-cycle coordinates: b = #non-tree edges, tree edges 0,
/// non-tree edge k gets basis vector k, all weights 1.
TransitionGraph canonical_abstract_labels(const TransitionGraph& g);

/// Same labelling but keeping the original weights.
TransitionGraph canonical_abstract_labels_keep_weights(const TransitionGraph& g);

} // namespace flowtorus

#endif // FLOWTORUS_DIGRAPH_HPP
