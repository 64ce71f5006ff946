#include "flowtorus/digraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <string>

namespace flowtorus {

namespace {

template <class T>
void sort_unique(std::vector<T>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Tarjan over the vertices/edges of a subgraph; returns component index per parent vertex
// (npos outside the subgraph) and the component count.
std::pair<std::vector<std::size_t>, std::size_t> tarjan(const Subgraph& g)
{
    const auto& parent = g.parent();
    const std::size_t n = parent.vertex_count();
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::vector<VertexId>> adj(n);
    for (EdgeId e : g.edges())
        adj[parent.edge(e).source].push_back(parent.edge(e).target);

    std::vector<std::size_t> index(n, npos), low(n, 0), comp(n, npos);
    std::vector<bool> on_stack(n, false);
    std::vector<VertexId> stack;
    std::size_t counter = 0, count = 0;

    struct Frame {
        VertexId v;
        std::size_t next;
    };
    for (VertexId root : g.vertices()) {
        if (index[root] != npos)
            continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& fr = call.back();
            if (fr.next < adj[fr.v].size()) {
                const VertexId w = adj[fr.v][fr.next++];
                if (index[w] == npos) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], index[w]);
                }
                continue;
            }
            const VertexId v = fr.v;
            if (low[v] == index[v]) {
                VertexId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
            call.pop_back();
            if (!call.empty())
                low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
    }
    return {comp, count};
}

} // namespace

TransitionGraph::TransitionGraph(std::size_t vertex_count, std::size_t b, std::vector<Edge> edges)
    : vertex_count_(vertex_count), b_(b), edges_(std::move(edges)), out_(vertex_count)
{
    std::vector<std::string> problems;
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        const auto& ed = edges_[e];
        const std::string tag = "edge " + std::to_string(e);
        if (ed.source >= vertex_count_)
            problems.push_back(tag + ": source " + std::to_string(ed.source) + " is not a vertex");
        if (ed.target >= vertex_count_)
            problems.push_back(tag + ": target " + std::to_string(ed.target) + " is not a vertex");
        if (ed.sign != 1 && ed.sign != -1)
            problems.push_back(tag + ": sign must be +1 or -1");
        if (ed.hvec.size() != b_)
            problems.push_back(tag + ": hvec has length " + std::to_string(ed.hvec.size()) + " but b = " +
                               std::to_string(b_));
        if (ed.weight < 1)
            problems.push_back(tag + ": weight must be >= 1");
    }
    if (!problems.empty()) {
        std::string msg;
        for (const auto& p : problems)
            msg += (msg.empty() ? "" : "; ") + p;
        fail(ErrorCode::ValidationError, msg);
    }
    for (EdgeId e = 0; e < edges_.size(); ++e)
        out_[edges_[e].source].push_back(e);
}

Subgraph::Subgraph(const TransitionGraph& parent, std::vector<EdgeId> edges, std::vector<VertexId> vertices)
    : parent_(&parent), edges_(std::move(edges)), vertices_(std::move(vertices))
{
    sort_unique(edges_);
    for (EdgeId e : edges_) {
        if (e >= parent.edge_count())
            fail(ErrorCode::ValidationError, "subgraph references missing edge " + std::to_string(e));
        vertices_.push_back(parent.edge(e).source);
        vertices_.push_back(parent.edge(e).target);
    }
    sort_unique(vertices_);
    for (VertexId v : vertices_)
        if (v >= parent.vertex_count())
            fail(ErrorCode::ValidationError, "subgraph references missing vertex " + std::to_string(v));
}

Subgraph Subgraph::whole(const TransitionGraph& g)
{
    std::vector<EdgeId> e(g.edge_count());
    std::iota(e.begin(), e.end(), EdgeId{0});
    std::vector<VertexId> v(g.vertex_count());
    std::iota(v.begin(), v.end(), VertexId{0});
    return Subgraph(g, std::move(e), std::move(v));
}

bool Subgraph::has_edge(EdgeId e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }
bool Subgraph::has_vertex(VertexId v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

bool Subgraph::is_subgraph_of(const Subgraph& other) const
{
    return parent_ == other.parent_ && std::includes(other.edges_.begin(), other.edges_.end(), edges_.begin(), edges_.end()) &&
           std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
}

Subgraph intersect(const Subgraph& a, const Subgraph& b)
{
    std::vector<EdgeId> e;
    std::set_intersection(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(), std::back_inserter(e));
    std::vector<VertexId> v;
    std::set_intersection(a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end(),
                          std::back_inserter(v));
    return Subgraph(a.parent(), std::move(e), std::move(v));
}

Subgraph unite(const Subgraph& a, const Subgraph& b)
{
    std::vector<EdgeId> e;
    std::set_union(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(), std::back_inserter(e));
    std::vector<VertexId> v;
    std::set_union(a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end(), std::back_inserter(v));
    return Subgraph(a.parent(), std::move(e), std::move(v));
}

std::vector<Subgraph> strong_components(const Subgraph& g)
{
    const auto [comp, count] = tarjan(g);
    std::vector<std::vector<VertexId>> verts(count);
    std::vector<std::vector<EdgeId>> edges(count);
    for (VertexId v : g.vertices())
        verts[comp[v]].push_back(v);
    for (EdgeId e : g.edges()) {
        const auto& ed = g.parent().edge(e);
        if (comp[ed.source] == comp[ed.target])
            edges[comp[ed.source]].push_back(e);
    }
    std::vector<Subgraph> out;
    out.reserve(count);
    for (std::size_t c = 0; c < count; ++c)
        out.emplace_back(g.parent(), std::move(edges[c]), std::move(verts[c]));
    std::sort(out.begin(), out.end(), [](const Subgraph& a, const Subgraph& b) { return a.vertices().front() < b.vertices().front(); });
    return out;
}

Subgraph recurrent_core(const Subgraph& g)
{
    std::vector<EdgeId> edges;
    for (const auto& c : strong_components(g))
        edges.insert(edges.end(), c.edges().begin(), c.edges().end());
    return Subgraph(g.parent(), std::move(edges));
}

bool is_irreducible(const Subgraph& g)
{
    if (g.edges().empty())
        return false;
    const auto comps = strong_components(g);
    return comps.size() == 1;
}

bool is_recurrent(const Subgraph& g) { return recurrent_core(g).edges() == g.edges(); }

std::vector<SimpleCycle> simple_cycles(const Subgraph& g, std::size_t cap)
{
    const auto& parent = g.parent();
    const std::size_t n = parent.vertex_count();
    std::vector<SimpleCycle> cycles;

    std::vector<std::vector<EdgeId>> out(n);
    for (EdgeId e : g.edges())
        out[parent.edge(e).source].push_back(e);

    std::vector<bool> blocked(n, false), in_scope(n, false);
    std::vector<std::vector<VertexId>> block_map(n);
    std::vector<EdgeId> path;

    std::function<void(VertexId)> unblock = [&](VertexId u) {
        blocked[u] = false;
        auto pending = std::move(block_map[u]);
        block_map[u].clear();
        for (VertexId w : pending)
            if (blocked[w])
                unblock(w);
    };

    for (VertexId s : g.vertices()) {
        // Strong component of s within the subgraph induced on vertices >= s.
        std::vector<EdgeId> restricted;
        for (EdgeId e : g.edges())
            if (parent.edge(e).source >= s && parent.edge(e).target >= s)
                restricted.push_back(e);
        const Subgraph sub(parent, restricted, {s});
        const auto [comp, count] = tarjan(sub);
        std::fill(in_scope.begin(), in_scope.end(), false);
        for (VertexId v : sub.vertices())
            in_scope[v] = comp[v] == comp[s];
        for (VertexId v = 0; v < n; ++v) {
            blocked[v] = false;
            block_map[v].clear();
        }

        std::function<bool(VertexId)> circuit = [&](VertexId v) -> bool {
            bool found = false;
            blocked[v] = true;
            for (EdgeId e : out[v]) {
                const VertexId w = parent.edge(e).target;
                if (!in_scope[w])
                    continue;
                if (w == s) {
                    if (cycles.size() >= cap)
                        fail(ErrorCode::CycleCapExceeded, "more than " + std::to_string(cap) +
                                                              " simple cycles (partial count " +
                                                              std::to_string(cycles.size()) + ")");
                    path.push_back(e);
                    cycles.push_back(SimpleCycle{path});
                    path.pop_back();
                    found = true;
                } else if (!blocked[w]) {
                    path.push_back(e);
                    if (circuit(w))
                        found = true;
                    path.pop_back();
                }
            }
            if (found) {
                unblock(v);
            } else {
                for (EdgeId e : out[v]) {
                    const VertexId w = parent.edge(e).target;
                    if (in_scope[w] && std::find(block_map[w].begin(), block_map[w].end(), v) == block_map[w].end())
                        block_map[w].push_back(v);
                }
            }
            return found;
        };
        circuit(s);
    }
    return cycles;
}

void check_cycle(const TransitionGraph& g, std::span<const EdgeId> edges)
{
    if (edges.empty())
        fail(ErrorCode::NotACycle, "empty edge sequence");
    for (EdgeId e : edges)
        if (e >= g.edge_count())
            fail(ErrorCode::NotACycle, "edge " + std::to_string(e) + " does not exist");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& a = g.edge(edges[i]);
        const auto& b = g.edge(edges[(i + 1) % edges.size()]);
        if (a.target != b.source)
            fail(ErrorCode::NotACycle, "edge " + std::to_string(edges[i]) + " does not feed edge " +
                                           std::to_string(edges[(i + 1) % edges.size()]));
    }
}

Monomial cycle_class(const TransitionGraph& g, const Cycle& z)
{
    check_cycle(g, z.edges);
    IntVector v(g.rank(), 0);
    std::int64_t degree = 0;
    for (EdgeId e : z.edges) {
        const auto& ed = g.edge(e);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += ed.hvec[i];
        degree += ed.weight;
    }
    return Monomial(std::move(v), degree);
}

int cycle_sign(const TransitionGraph& g, const Cycle& z)
{
    int s = 1;
    for (EdgeId e : z.edges)
        s *= g.edge(e).sign;
    return s;
}

std::vector<VertexId> cycle_vertices(const TransitionGraph& g, const Cycle& z)
{
    std::vector<VertexId> out;
    for (EdgeId e : z.edges)
        out.push_back(g.edge(e).source);
    return out;
}

bool is_vertex_simple(const TransitionGraph& g, const Cycle& z)
{
    auto v = cycle_vertices(g, z);
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
}

SpanningForest spanning_forest(const TransitionGraph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<EdgeId>> incident(n);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        incident[g.edge(e).source].push_back(e);
        if (g.edge(e).target != g.edge(e).source)
            incident[g.edge(e).target].push_back(e);
    }
    for (auto& inc : incident)
        std::sort(inc.begin(), inc.end());

    SpanningForest f;
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    f.is_tree_edge.assign(g.edge_count(), false);
    f.component.assign(n, npos);
    f.parent_edge.assign(n, SpanningForest::npos);
    f.depth.assign(n, 0);
    for (VertexId root = 0; root < n; ++root) {
        if (f.component[root] != npos)
            continue;
        std::deque<VertexId> queue{root};
        f.component[root] = f.component_count;
        while (!queue.empty()) {
            const VertexId u = queue.front();
            queue.pop_front();
            for (EdgeId e : incident[u]) {
                const auto& ed = g.edge(e);
                const VertexId w = ed.source == u ? ed.target : ed.source;
                if (f.component[w] != npos)
                    continue;
                f.component[w] = f.component_count;
                f.is_tree_edge[e] = true;
                f.parent_edge[w] = e;
                f.depth[w] = f.depth[u] + 1;
                queue.push_back(w);
            }
        }
        ++f.component_count;
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!f.is_tree_edge[e])
            f.non_tree_edges.push_back(e);
    return f;
}

std::vector<std::pair<EdgeId, int>> fundamental_cycle(const TransitionGraph& g, const SpanningForest& forest,
                                                      EdgeId non_tree_edge)
{
    if (forest.is_tree_edge.at(non_tree_edge))
        throw std::invalid_argument("fundamental_cycle of a tree edge");
    std::vector<std::pair<EdgeId, int>> out{{non_tree_edge, 1}};
    // Walk from the head of the edge back to its tail through the tree.
    VertexId a = g.edge(non_tree_edge).target; // walk start
    VertexId b = g.edge(non_tree_edge).source; // walk end
    auto up = [&](VertexId v) {
        const EdgeId e = forest.parent_edge[v];
        const auto& ed = g.edge(e);
        return std::pair{e, ed.source == v ? ed.target : ed.source};
    };
    std::vector<std::pair<EdgeId, int>> tail_part;
    while (a != b) {
        if (forest.depth[a] >= forest.depth[b]) {
            auto [e, p] = up(a);
            // traversing a -> p
            out.emplace_back(e, g.edge(e).source == a ? 1 : -1);
            a = p;
        } else {
            auto [e, p] = up(b);
            // traversed later as p -> b
            tail_part.emplace_back(e, g.edge(e).source == p ? 1 : -1);
            b = p;
        }
    }
    out.insert(out.end(), tail_part.rbegin(), tail_part.rend());
    return out;
}

namespace {

TransitionGraph relabel(const TransitionGraph& g, bool keep_weights)
{
    const auto forest = spanning_forest(g);
    const std::size_t b = forest.non_tree_edges.size();
    std::vector<Edge> edges = g.edges();
    for (auto& ed : edges) {
        ed.hvec.assign(b, 0);
        if (!keep_weights)
            ed.weight = 1;
    }
    for (std::size_t k = 0; k < b; ++k)
        edges[forest.non_tree_edges[k]].hvec[k] = 1;
    return TransitionGraph(g.vertex_count(), b, std::move(edges));
}

} // namespace

TransitionGraph canonical_abstract_labels(const TransitionGraph& g) { return relabel(g, false); }

TransitionGraph canonical_abstract_labels_keep_weights(const TransitionGraph& g) { return relabel(g, true); }

} // namespace flowtorus
