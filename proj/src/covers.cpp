#include "flowtorus/covers.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "flowtorus/zeta.hpp"

namespace flowtorus {

namespace {

bool is_permutation_of(const std::vector<std::size_t>& p, std::size_t n)
{
    if (p.size() != n)
        return false;
    std::vector<bool> hit(n, false);
    for (auto x : p) {
        if (x >= n || hit[x])
            return false;
        hit[x] = true;
    }
    return true;
}

Permutation compose(const Permutation& a, const Permutation& b)
{
    Permutation c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        c[i] = a[b[i]];
    return c;
}

using Column = Vector<std::int64_t>;

Column hvec_of(const TransitionGraph& g, EdgeId e)
{
    const auto& h = g.edge(e).hvec;
    return Eigen::Map<const Column>(h.data(), static_cast<Eigen::Index>(h.size()));
}

Column class_of(const TransitionGraph& g, std::span<const std::pair<EdgeId, int>> chain)
{
    Column v = Column::Zero(static_cast<Eigen::Index>(g.rank()));
    for (auto [e, c] : chain)
        v += c * hvec_of(g, e);
    return v;
}

/// Signed fundamental cycles of g, in basis order.
std::vector<std::vector<std::pair<EdgeId, int>>> cycle_basis(const TransitionGraph& g)
{
    const auto forest = spanning_forest(g);
    std::vector<std::vector<std::pair<EdgeId, int>>> out;
    for (EdgeId e : forest.non_tree_edges)
        out.push_back(fundamental_cycle(g, forest, e));
    return out;
}

std::string describe(std::size_t k) { return "element " + std::to_string(k); }

void check_element(const TransitionGraph& g, const DeckElement& d, std::size_t k,
                   const std::vector<std::vector<std::pair<EdgeId, int>>>& basis)
{
    const auto b = static_cast<Eigen::Index>(g.rank());
    if (!is_permutation_of(d.vertex_perm, g.vertex_count()) || !is_permutation_of(d.edge_perm, g.edge_count()))
        fail(ErrorCode::ValidationError, describe(k) + " does not permute vertices and edges");
    if (d.matrix.rows() != b || d.matrix.cols() != b)
        fail(ErrorCode::ValidationError, describe(k) + " has a matrix of the wrong shape");
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& x = g.edge(e);
        const Edge& y = g.edge(d.edge_perm[e]);
        if (y.source != d.vertex_perm[x.source] || y.target != d.vertex_perm[x.target])
            fail(ErrorCode::ValidationError, describe(k) + " is not a graph automorphism at edge " + std::to_string(e));
        if (y.sign != x.sign || y.weight != x.weight)
            fail(ErrorCode::ValidationError, describe(k) + " changes the sign or weight of edge " + std::to_string(e));
    }
    for (const auto& z : basis) {
        std::vector<std::pair<EdgeId, int>> moved;
        for (auto [e, c] : z)
            moved.emplace_back(d.edge_perm[e], c);
        if (class_of(g, moved) != d.matrix * class_of(g, z))
            fail(ErrorCode::ValidationError, describe(k) + " is not equivariant on cycle classes");
    }
}

std::size_t codimension(const DirectionHull& h, FaceId f) { return h.dimension() - h.face(f).dimension; }

bool disjoint_points(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    std::vector<std::size_t> meet;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
    return meet.empty();
}

/// Standalone copy of a subgraph; edge k of the copy is edges[k] of the parent.
TransitionGraph induced_graph(const Subgraph& s)
{
    const auto& g = s.parent();
    std::map<VertexId, VertexId> index;
    for (auto v : s.vertices())
        index.emplace(v, index.size());
    std::vector<Edge> edges;
    for (auto e : s.edges()) {
        Edge x = g.edge(e);
        x.source = index.at(x.source);
        x.target = index.at(x.target);
        edges.push_back(std::move(x));
    }
    return TransitionGraph(index.size(), g.rank(), std::move(edges));
}

} // namespace

PermutationGroup PermutationGroup::generate(std::vector<Permutation> generators, std::size_t degree, std::size_t cap)
{
    PermutationGroup out;
    out.degree_ = degree;
    for (const auto& p : generators)
        if (!is_permutation_of(p, degree))
            fail(ErrorCode::ValidationError, "generator is not a permutation of degree " + std::to_string(degree));
    out.generators_ = std::move(generators);

    Permutation id(degree);
    std::iota(id.begin(), id.end(), std::size_t{0});
    out.elements_.push_back(id);
    out.index_.emplace(id, 0);
    for (std::size_t i = 0; i < out.elements_.size(); ++i)
        for (const auto& s : out.generators_) {
            auto p = compose(s, out.elements_[i]);
            if (out.index_.contains(p))
                continue;
            if (out.elements_.size() >= cap)
                fail(ErrorCode::GroupCapExceeded, "group order exceeds " + std::to_string(cap));
            out.index_.emplace(p, out.elements_.size());
            out.elements_.push_back(std::move(p));
        }
    const auto n = out.elements_.size();
    out.table_.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            out.table_[a][b] = out.index_.at(compose(out.elements_[a], out.elements_[b]));
    return out;
}

std::optional<std::size_t> PermutationGroup::index_of(const Permutation& p) const
{
    auto it = index_.find(p);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

void validate_action(const TransitionGraph& g, const DeckAction& action)
{
    const auto basis = cycle_basis(g);
    std::map<std::pair<std::vector<VertexId>, std::vector<EdgeId>>, std::size_t> index;
    for (std::size_t k = 0; k < action.elements.size(); ++k) {
        const auto& d = action.elements[k];
        check_element(g, d, k, basis);
        index.emplace(std::make_pair(d.vertex_perm, d.edge_perm), k);
    }
    for (std::size_t a = 0; a < action.elements.size(); ++a)
        for (std::size_t b = 0; b < action.elements.size(); ++b) {
            const auto& x = action.elements[a];
            const auto& y = action.elements[b];
            auto it = index.find({compose(x.vertex_perm, y.vertex_perm), compose(x.edge_perm, y.edge_perm)});
            if (it == index.end())
                fail(ErrorCode::ValidationError, "deck action is not closed under composition");
            if (action.elements[it->second].matrix != x.matrix * y.matrix)
                fail(ErrorCode::ValidationError, "deck matrices do not compose like the automorphisms");
        }
}

DeckAction generate_action(const TransitionGraph& g, std::vector<DeckElement> generators, std::size_t cap)
{
    const auto basis = cycle_basis(g);
    for (std::size_t k = 0; k < generators.size(); ++k)
        check_element(g, generators[k], k, basis);

    DeckElement id;
    id.vertex_perm.resize(g.vertex_count());
    id.edge_perm.resize(g.edge_count());
    std::iota(id.vertex_perm.begin(), id.vertex_perm.end(), VertexId{0});
    std::iota(id.edge_perm.begin(), id.edge_perm.end(), EdgeId{0});
    id.matrix = IntMatrix::Identity(static_cast<Eigen::Index>(g.rank()), static_cast<Eigen::Index>(g.rank()));

    DeckAction out;
    std::map<std::pair<std::vector<VertexId>, std::vector<EdgeId>>, std::size_t> index;
    index.emplace(std::make_pair(id.vertex_perm, id.edge_perm), 0);
    out.elements.push_back(std::move(id));
    for (std::size_t i = 0; i < out.elements.size(); ++i)
        for (const auto& s : generators) {
            DeckElement p{compose(s.vertex_perm, out.elements[i].vertex_perm),
                          compose(s.edge_perm, out.elements[i].edge_perm), s.matrix * out.elements[i].matrix};
            auto key = std::make_pair(p.vertex_perm, p.edge_perm);
            if (auto it = index.find(key); it != index.end()) {
                if (out.elements[it->second].matrix != p.matrix)
                    fail(ErrorCode::ValidationError, "deck matrices do not compose like the automorphisms");
                continue;
            }
            if (out.elements.size() >= cap)
                fail(ErrorCode::GroupCapExceeded, "deck group order exceeds " + std::to_string(cap));
            index.emplace(std::move(key), out.elements.size());
            out.elements.push_back(std::move(p));
        }
    validate_action(g, out);
    return out;
}

DerivedCover derived_cover(const TransitionGraph& base, const CoverSpec& spec, std::size_t group_cap)
{
    if (spec.voltage.size() != base.edge_count())
        fail(ErrorCode::ValidationError, "voltage must be given on every edge");
    std::size_t degree = 1;
    if (!spec.generators.empty())
        degree = spec.generators.front().size();
    else if (!spec.voltage.empty())
        degree = spec.voltage.front().size();

    DerivedCover out;
    out.group = PermutationGroup::generate(spec.generators, degree, group_cap);
    const auto& G = out.group;
    const auto n = G.order();
    std::vector<std::size_t> volt;
    for (EdgeId e = 0; e < base.edge_count(); ++e) {
        if (!is_permutation_of(spec.voltage[e], degree))
            fail(ErrorCode::ValidationError, "voltage of edge " + std::to_string(e) + " is not a permutation");
        auto k = G.index_of(spec.voltage[e]);
        if (!k)
            fail(ErrorCode::ValidationError,
                 "voltage of edge " + std::to_string(e) + " lies outside the generated group");
        volt.push_back(*k);
    }

    std::vector<Edge> edges;
    for (EdgeId e = 0; e < base.edge_count(); ++e) {
        const Edge& x = base.edge(e);
        for (std::size_t g = 0; g < n; ++g) {
            Edge y = x;
            y.source = x.source * n + g;
            y.target = x.target * n + G.multiply(g, volt[e]);
            edges.push_back(std::move(y));
            out.edge_projection.push_back(e);
        }
    }
    for (VertexId v = 0; v < base.vertex_count(); ++v)
        for (std::size_t g = 0; g < n; ++g)
            out.vertex_projection.push_back(v);

    const TransitionGraph raw(base.vertex_count() * n, base.rank(), std::move(edges));
    out.graph = spec.labels == CoverLabels::Pullback ? raw : canonical_abstract_labels_keep_weights(raw);
    const auto bc = static_cast<Eigen::Index>(out.graph.rank());
    const auto bb = static_cast<Eigen::Index>(base.rank());

    const auto basis = cycle_basis(out.graph);
    if (spec.labels == CoverLabels::Pullback) {
        out.homology_projection = IntMatrix::Identity(bb, bb);
    } else {
        out.homology_projection = IntMatrix::Zero(bb, bc);
        for (Eigen::Index k = 0; k < bc; ++k)
            for (auto [e, c] : basis[static_cast<std::size_t>(k)])
                out.homology_projection.col(k) += c * hvec_of(base, out.edge_projection[e]);
    }

    for (std::size_t g = 0; g < n; ++g) {
        DeckElement d;
        for (VertexId v = 0; v < out.graph.vertex_count(); ++v)
            d.vertex_perm.push_back((v / n) * n + G.multiply(g, v % n));
        for (EdgeId e = 0; e < out.graph.edge_count(); ++e)
            d.edge_perm.push_back((e / n) * n + G.multiply(g, e % n));
        if (spec.labels == CoverLabels::Pullback) {
            d.matrix = IntMatrix::Identity(bc, bc);
        } else {
            d.matrix = IntMatrix::Zero(bc, bc);
            for (Eigen::Index k = 0; k < bc; ++k)
                for (auto [e, c] : basis[static_cast<std::size_t>(k)])
                    d.matrix.col(k) += c * hvec_of(out.graph, d.edge_perm[e]);
        }
        out.action.elements.push_back(std::move(d));
    }

    out.component_count = spanning_forest(out.graph).component_count;
    const auto base_components = spanning_forest(base).component_count;
    if (out.component_count > base_components)
        out.warnings.push_back("DisconnectedCoverWarning: derived graph has " + std::to_string(out.component_count) +
                               " components over " + std::to_string(base_components));
    return out;
}

bool deck_commutes_with_projection(const DerivedCover& cover)
{
    for (const auto& d : cover.action.elements) {
        for (VertexId v = 0; v < cover.graph.vertex_count(); ++v)
            if (cover.vertex_projection[d.vertex_perm[v]] != cover.vertex_projection[v])
                return false;
        for (EdgeId e = 0; e < cover.graph.edge_count(); ++e)
            if (cover.edge_projection[d.edge_perm[e]] != cover.edge_projection[e])
                return false;
    }
    return true;
}

LiftedProjection lifted_hull_projection(const DirectionHull& base, const DirectionHull& cover,
                                        const IntMatrix& projection, bool strict)
{
    LiftedProjection out;
    out.map = polytope_projection(cover, projection, base);
    for (FaceId f = 0; f < base.faces().size(); ++f) {
        FacePreimage row;
        row.base_face = f;
        row.base_codimension = codimension(base, f);
        row.cover_face = out.map.preimage[f];
        std::string problem;
        if (!row.cover_face) {
            problem = out.map.preimage_points[f].empty() ? "is empty" : "is not a closed face";
        } else {
            row.cover_codimension = codimension(cover, *row.cover_face);
            if (*row.cover_codimension != row.base_codimension)
                problem = "has codimension " + std::to_string(*row.cover_codimension) + " instead of " +
                          std::to_string(row.base_codimension);
        }
        if (!problem.empty()) {
            out.consistent = false;
            out.inconsistencies.push_back("preimage of base face " + std::to_string(f) + " " + problem);
        }
        out.table.push_back(std::move(row));
    }
    if (strict && !out.consistent)
        fail(ErrorCode::InconsistentProjection, out.inconsistencies.front());
    return out;
}

std::vector<FaceOrbit> gamma_orbits_of_faces(const DirectionHull& h, const DeckAction& action)
{
    const auto nf = h.faces().size();
    std::vector<std::size_t> parent(nf);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };

    for (std::size_t k = 0; k < action.elements.size(); ++k) {
        const auto& m = action.elements[k].matrix;
        if (static_cast<std::size_t>(m.cols()) != h.ambient_dim() || m.rows() != m.cols())
            fail(ErrorCode::ValidationError, "deck matrix does not match the hull dimension");
        const Matrix<Rational> mq = cast_matrix<Rational>(m);
        std::vector<RationalVector> images;
        for (const auto& p : h.points()) {
            images.push_back(mq * p);
            if (!h.contains(images.back()))
                fail(ErrorCode::ActionDoesNotPreserveHull,
                     describe(k) + " moves a generating point out of the hull");
        }
        std::vector<bool> hit(nf, false);
        for (FaceId f = 0; f < nf; ++f) {
            std::vector<RationalVector> xs;
            for (auto i : h.face(f).points)
                xs.push_back(images[i]);
            const FaceId to = h.smallest_face_containing(xs);
            if (hit[to] || h.face(to).dimension != h.face(f).dimension)
                fail(ErrorCode::ActionDoesNotPreserveHull, describe(k) + " does not permute the faces");
            hit[to] = true;
            parent[find(f)] = find(to);
        }
    }

    std::map<std::size_t, std::vector<FaceId>> groups;
    for (FaceId f = 0; f < nf; ++f)
        groups[find(f)].push_back(f);
    std::vector<FaceOrbit> out;
    for (auto& [root, faces] : groups) {
        FaceOrbit o{faces, true};
        for (std::size_t i = 0; i < faces.size() && o.disjoint; ++i)
            for (std::size_t j = i + 1; j < faces.size(); ++j)
                if (!disjoint_points(h.face(faces[i]).points, h.face(faces[j]).points)) {
                    o.disjoint = false;
                    break;
                }
        out.push_back(std::move(o));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.faces.front() < b.faces.front(); });
    return out;
}

DominanceReport dominance_report(const TransitionGraph& g, const DirectionHull& h, FaceId face,
                                 std::span<const ExceptionalCycleRecord> exceptional)
{
    DominanceReport r;
    r.face = face;
    r.classification = classify_face(g, h, face, exceptional);
    r.support = support_subgraph(g, h, face);
    GroupRingElement z = kappa(r.support);
    for (const auto& rec : exceptional) {
        const bool carried = std::all_of(rec.cycle.edges.begin(), rec.cycle.edges.end(),
                                         [&](EdgeId e) { return r.support.has_edge(e); });
        if (!carried)
            continue;
        auto q = exact_divide(z, correction_polynomial(rec, cycle_class(g, rec.cycle)));
        if (!q)
            fail(ErrorCode::InexactDivision, "face " + std::to_string(face) +
                                                 ": kappa of the support is not divisible by the correction factors");
        z = std::move(*q);
    }
    r.dominant = !z.is_one();
    r.zeta_face_part = std::move(z);
    return r;
}

CriterionReport criterion_check(const TransitionGraph& g, const DirectionHull& h, const DeckAction& action,
                                std::span<const ExceptionalCycleRecord> exceptional, std::int64_t chi,
                                const CriterionOptions& options)
{
    if (chi >= 0)
        fail(ErrorCode::ValidationError, "chi_S must be negative");
    CriterionReport out;
    out.orbits = gamma_orbits_of_faces(h, action);
    for (FaceId f = 0; f < h.faces().size(); ++f)
        out.reports.push_back(dominance_report(g, h, f, exceptional));

    std::vector<std::size_t> order(out.orbits.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return h.face(out.orbits[a].faces.front()).dimension < h.face(out.orbits[b].faces.front()).dimension;
    });
    std::vector<std::size_t> used;
    for (auto k : order) {
        const auto& o = out.orbits[k];
        if (!o.disjoint)
            continue;
        if (std::none_of(o.faces.begin(), o.faces.end(), [&](FaceId f) { return out.reports[f].dominant; }))
            continue;
        std::vector<std::size_t> pts;
        for (FaceId f : o.faces)
            pts.insert(pts.end(), h.face(f).points.begin(), h.face(f).points.end());
        std::sort(pts.begin(), pts.end());
        if (!disjoint_points(pts, used))
            continue;
        out.selected.push_back(k);
        std::vector<std::size_t> merged;
        std::merge(used.begin(), used.end(), pts.begin(), pts.end(), std::back_inserter(merged));
        used = std::move(merged);
    }
    std::sort(out.selected.begin(), out.selected.end());
    out.count = static_cast<std::int64_t>(out.selected.size());
    out.threshold = -chi + 1;
    out.pass = out.count >= out.threshold;

    if (out.pass) {
        const auto b1 = options.b1.value_or(static_cast<std::int64_t>(g.rank()) + 1);
        out.delta = alexander_polynomial(g, exceptional, b1);
        out.mahler = mahler_multivariate(*out.delta, out.delta->rank(), options.samples, options.seed);
        out.mahler_exceeds_one = out.mahler->value - 3 * out.mahler->standard_error > 1;
    }
    return out;
}

ClusterChainReport cluster_sequence_check(const TransitionGraph& g, std::span<const ClusterLink> chain)
{
    if (chain.size() < 2)
        fail(ErrorCode::ValidationError, "a chain needs at least two subgraphs");
    for (std::size_t n = 0; n < chain.size(); ++n) {
        if (&chain[n].subgraph.parent() != &g)
            fail(ErrorCode::ValidationError, "chain subgraphs must live in the given graph");
        if (n > 0 && !chain[n].subgraph.is_subgraph_of(chain[n - 1].subgraph))
            fail(ErrorCode::ChainNotNested, "V_" + std::to_string(n) + " is not contained in V_" + std::to_string(n - 1));
        if (!is_irreducible(chain[n].subgraph) || chain[n].subgraph.edges().empty())
            fail(ErrorCode::NotIrreducible, "V_" + std::to_string(n) + " is not irreducible");
    }

    ClusterChainReport out;
    out.holds = true;
    auto diagnose = [&](std::string msg) {
        out.holds = false;
        out.diagnostics.push_back(std::move(msg));
    };

    for (std::size_t n = 1; n < chain.size(); ++n) {
        const auto& prev = chain[n - 1].subgraph;
        const auto& cur = chain[n].subgraph;
        const auto tag = "V_" + std::to_string(n);
        const auto hull = direction_hull(prev);
        const FaceId e = chain[n].face;
        (void)hull.face(e);

        const auto support = support_subgraph(g, hull, e);
        const auto comps = strong_components(recurrent_core(support));
        if (std::find(comps.begin(), comps.end(), cur) == comps.end())
            diagnose(tag + " is not a maximal irreducible subgraph of the support of E_" + std::to_string(n));

        // The labelled hull must be an affine embedding of the hull in fundamental-cycle coordinates.
        const auto own = direction_hull(Subgraph::whole(canonical_abstract_labels_keep_weights(induced_graph(cur))));
        const auto labelled = direction_hull(cur);
        if (own.dimension() != labelled.dimension())
            diagnose(tag + " hull is not embedded: dimension " + std::to_string(own.dimension()) + " drops to " +
                     std::to_string(labelled.dimension()));

        out.face_parts.push_back(kappa_face_part(prev, hull, e));
        if (out.face_parts.back().is_one())
            diagnose("kappa(V_" + std::to_string(n - 1) + ")[E_" + std::to_string(n) + "] = 1");
    }

    const auto& last = chain.back().subgraph;
    const auto cycles = simple_cycles(last);
    if (cycles.size() != 1 || cycles.front().edges.size() != last.edges().size())
        diagnose("terminal subgraph is not a simple cycle");
    return out;
}

} // namespace flowtorus
