#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "flowtorus/hull.hpp"
#include "lattice_check.hpp"
#include "oracles.hpp"

using namespace flowtorus;
using fixture::edge;

namespace {

RationalVector vec(std::initializer_list<Rational> xs)
{
    RationalVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (const auto& x : xs)
        v(i++) = x;
    return v;
}

bool same(const RationalVector& a, const RationalVector& b) { return a.size() == b.size() && (a - b).isZero(); }

/// Jarvis march over distinct planar points; returns hull vertex positions.
std::vector<RationalVector> gift_wrap(std::vector<RationalVector> pts)
{
    std::vector<RationalVector> uniq;
    for (const auto& p : pts)
        if (std::none_of(uniq.begin(), uniq.end(), [&](const auto& q) { return same(p, q); }))
            uniq.push_back(p);
    if (uniq.size() <= 2)
        return uniq;
    auto cross = [](const RationalVector& o, const RationalVector& a, const RationalVector& b) {
        return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
    };
    auto dist = [](const RationalVector& a, const RationalVector& b) { return (a - b).squaredNorm(); };
    std::size_t start = 0;
    for (std::size_t i = 1; i < uniq.size(); ++i)
        if (uniq[i](0) < uniq[start](0) || (uniq[i](0) == uniq[start](0) && uniq[i](1) < uniq[start](1)))
            start = i;
    std::vector<RationalVector> hull;
    std::size_t cur = start;
    do {
        hull.push_back(uniq[cur]);
        std::size_t next = (cur + 1) % uniq.size();
        for (std::size_t i = 0; i < uniq.size(); ++i) {
            const auto c = cross(uniq[cur], uniq[next], uniq[i]);
            if (c < 0 || (c == 0 && dist(uniq[cur], uniq[i]) > dist(uniq[cur], uniq[next])))
                next = i;
        }
        cur = next;
    } while (cur != start && hull.size() <= uniq.size());
    return hull;
}

std::vector<RationalVector> vertex_positions(const DirectionHull& h)
{
    std::vector<RationalVector> out;
    for (auto f : h.vertex_faces())
        out.push_back(h.points()[h.face(f).points.front()]);
    return out;
}

bool same_set(std::vector<RationalVector> a, std::vector<RationalVector> b)
{
    if (a.size() != b.size())
        return false;
    for (const auto& x : a)
        if (std::none_of(b.begin(), b.end(), [&](const auto& y) { return same(x, y); }))
            return false;
    return true;
}

/// Hierholzer circuit through a balanced edge multiset whose support is connected.
std::vector<EdgeId> euler_circuit(const TransitionGraph& g, std::vector<std::int64_t> mult)
{
    std::vector<std::vector<EdgeId>> out(g.vertex_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        for (std::int64_t k = 0; k < mult[e]; ++k)
            out[g.edge(e).source].push_back(e);
    std::vector<EdgeId> circuit;
    std::vector<std::pair<VertexId, EdgeId>> stack{{g.edge(0).source, SpanningForest::npos}};
    while (!stack.empty()) {
        auto [v, via] = stack.back();
        if (!out[v].empty()) {
            const EdgeId e = out[v].back();
            out[v].pop_back();
            stack.emplace_back(g.edge(e).target, e);
        } else {
            if (via != SpanningForest::npos)
                circuit.push_back(via);
            stack.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    return circuit;
}

} // namespace

TEST(ElementaryCurrents, Triangle)
{
    const auto g = fixture::directed_triangle();
    const auto cs = elementary_currents(Subgraph::whole(g));
    ASSERT_EQ(cs.size(), 1u);
    for (const auto& w : cs[0].weights)
        EXPECT_EQ(w, Rational(1, 3));
}

TEST(ElementaryCurrents, FigureEight)
{
    const auto cs = elementary_currents(Subgraph::whole(fixture::figure_eight()));
    ASSERT_EQ(cs.size(), 2u);
    EXPECT_EQ(cs[0].weights, (std::vector<Rational>{1, 0}));
    EXPECT_EQ(cs[1].weights, (std::vector<Rational>{0, 1}));
}

TEST(ElementaryCurrents, CompleteDigraphBalanced)
{
    const auto g = fixture::complete3();
    const auto cs = elementary_currents(Subgraph::whole(g));
    EXPECT_EQ(cs.size(), 5u);
    for (const auto& mu : cs)
        EXPECT_TRUE(is_projective_current(g, mu));
    EXPECT_FALSE(is_projective_current(g, ProjectiveCurrent{{1, 0, 0, 0, 0, 0}}));
}

TEST(DirectionPoint, Examples)
{
    const TransitionGraph loop(1, 2, {edge(0, 0, {2, 0})});
    EXPECT_TRUE(same(direction_point(loop, Cycle{{0}}), vec({2, 0})));
    const TransitionGraph tri(3, 2, {edge(0, 1, {1, 0}), edge(1, 2, {0, 1}), edge(2, 0, {0, 0})});
    EXPECT_TRUE(same(direction_point(tri, Cycle{{0, 1, 2}}), vec({Rational(1, 3), Rational(1, 3)})));
    EXPECT_TRUE(same(direction_point(tri, Cycle{{0, 1, 2, 0, 1, 2}}), direction_point(tri, Cycle{{0, 1, 2}})));
}

TEST(DirectionHull, FigureEightSegment)
{
    const auto g = canonical_abstract_labels(fixture::figure_eight());
    const auto h = direction_hull(Subgraph::whole(g));
    EXPECT_EQ(h.dimension(), 1u);
    EXPECT_TRUE(same_set(vertex_positions(h), {vec({1, 0}), vec({0, 1})}));
    EXPECT_EQ(h.faces().size(), 3u);
    EXPECT_EQ(h.span_equations().size(), 1u);
}

TEST(DirectionHull, SingleLoopIsAPoint)
{
    const TransitionGraph g(1, 1, {edge(0, 0, {3}, 2)});
    const auto h = direction_hull(Subgraph::whole(g));
    EXPECT_EQ(h.dimension(), 0u);
    ASSERT_EQ(h.faces().size(), 1u);
    EXPECT_TRUE(same(h.points()[0], vec({Rational(3, 2)})));
    EXPECT_TRUE(h.contains(vec({Rational(3, 2)})));
    EXPECT_FALSE(h.contains(vec({1})));
}

TEST(DirectionHull, FixtureMatchesGiftWrapping)
{
    const auto g = fixture::complete3();
    const auto h = direction_hull(Subgraph::whole(g));
    ASSERT_EQ(h.points().size(), 5u);
    EXPECT_EQ(h.dimension(), 2u);
    EXPECT_TRUE(same_set(vertex_positions(h), gift_wrap(h.points())));
    EXPECT_TRUE(same_set(vertex_positions(h), {vec({1, 0}), vec({0, 1}), vec({Rational(-1, 2), -1})}));
    EXPECT_EQ(h.faces().size(), 7u);
}

TEST(DirectionHull, RandomPlanarPointsMatchGiftWrapping)
{
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> c(-6, 6), den(1, 3);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<RationalVector> pts;
        for (int k = 0; k < 3 + trial % 9; ++k)
            pts.push_back(vec({Rational(c(rng), den(rng)), Rational(c(rng), den(rng))}));
        const auto h = convex_hull(pts, 2);
        EXPECT_TRUE(same_set(vertex_positions(h), gift_wrap(pts))) << "trial " << trial;
    }
}

TEST(DirectionHull, FacetsAreTightExactlyOnTheirPoints)
{
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t dim = 2 + trial % 3;
        std::vector<RationalVector> pts;
        for (int k = 0; k < 4 + trial % 8; ++k) {
            RationalVector p(static_cast<Eigen::Index>(dim));
            for (auto& x : p)
                x = c(rng);
            pts.push_back(p);
        }
        const auto h = convex_hull(pts, dim);
        for (const auto& f : h.facets())
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const Rational lhs = f.normal.dot(pts[i]);
                EXPECT_LE(lhs, f.offset);
                EXPECT_EQ(lhs == f.offset, std::binary_search(f.points.begin(), f.points.end(), i));
            }
        for (FaceId id = 0; id < h.faces().size(); ++id)
            for (std::size_t i = 0; i < pts.size(); ++i)
                EXPECT_EQ(h.in_face(pts[i], id),
                          std::binary_search(h.face(id).points.begin(), h.face(id).points.end(), i));
    }
}

TEST(DirectionHull, DegenerateInputStaysInItsSpan)
{
    // Collinear points in the plane z = 1 of R^3.
    const std::vector<RationalVector> pts = {vec({0, 0, 1}), vec({1, 1, 1}), vec({2, 2, 1}), vec({3, 3, 1})};
    const auto h = convex_hull(pts, 3);
    EXPECT_EQ(h.dimension(), 1u);
    EXPECT_EQ(h.span_equations().size(), 2u);
    EXPECT_EQ(h.vertex_faces().size(), 2u);
    EXPECT_TRUE(h.contains(vec({Rational(1, 2), Rational(1, 2), 1})));
    EXPECT_FALSE(h.contains(vec({Rational(1, 2), Rational(1, 2), 0})));
}

TEST(DirectionHull, DuplicatePointsShareFaces)
{
    const auto g = fixture::figure_eight();
    const TransitionGraph doubled(2, 2, {edge(0, 0, {1, 0}), edge(0, 0, {0, 1}), edge(1, 1, {1, 0})});
    const auto h = direction_hull(Subgraph::whole(doubled));
    EXPECT_EQ(h.points().size(), 3u);
    EXPECT_EQ(h.faces().size(), 3u);
    EXPECT_TRUE(h.find_face({0, 2}).has_value());
}

TEST(DirectionHull, EmptyCoreAndDimensionCap)
{
    const TransitionGraph path(2, 0, {edge(0, 1, {})});
    try {
        (void)direction_hull(Subgraph::whole(path));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyRecurrentCore);
    }
    std::vector<Edge> loops;
    for (int k = 0; k < 10; ++k)
        loops.push_back(edge(0, 0, {}));
    const auto g = canonical_abstract_labels(TransitionGraph(1, 0, loops));
    try {
        (void)direction_hull(Subgraph::whole(g));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionCapExceeded);
    }
    EXPECT_EQ(direction_hull(Subgraph::whole(g), default_cycle_cap, 9).dimension(), 9u);
}

TEST(SupportSubgraph, TopFaceIsRecurrentCore)
{
    const TransitionGraph g(3, 1, {edge(0, 0, {1}), edge(0, 1, {0}), edge(1, 1, {-1}), edge(1, 2, {0})});
    const auto whole = Subgraph::whole(g);
    const auto h = direction_hull(whole);
    EXPECT_EQ(support_subgraph(g, h, h.top_face()).edges(), recurrent_core(whole).edges());
}

TEST(SupportSubgraph, FigureEightVertex)
{
    const auto g = canonical_abstract_labels(fixture::figure_eight());
    const auto h = direction_hull(Subgraph::whole(g));
    for (auto v : h.vertex_faces()) {
        const auto s = support_subgraph(g, h, v);
        ASSERT_EQ(s.edges().size(), 1u);
        EXPECT_TRUE(same(h.points()[h.face(v).points[0]], direction_point(g, Cycle{s.edges()})));
    }
    try {
        (void)support_subgraph(g, h, 99);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownFace);
    }
}

TEST(SupportSubgraph, EdgeFacesOfFixture)
{
    const auto g = fixture::complete3();
    const auto h = direction_hull(Subgraph::whole(g));
    for (FaceId f = 0; f < h.faces().size(); ++f) {
        if (h.face(f).dimension != 1)
            continue;
        std::set<EdgeId> expected;
        for (std::size_t i = 0; i < h.points().size(); ++i)
            if (h.in_face(h.points()[i], f))
                expected.insert(h.cycles()[i].edges.begin(), h.cycles()[i].edges.end());
        const auto s = support_subgraph(g, h, f);
        EXPECT_EQ(s.edges(), std::vector<EdgeId>(expected.begin(), expected.end()));
        EXPECT_TRUE(is_recurrent(s));
    }
}

TEST(SupportSubgraph, MonotoneInFaces)
{
    const auto g = fixture::complete3();
    const auto h = direction_hull(Subgraph::whole(g));
    for (FaceId a = 0; a < h.faces().size(); ++a)
        for (FaceId b = 0; b < h.faces().size(); ++b) {
            const auto& pa = h.face(a).points;
            const auto& pb = h.face(b).points;
            if (std::includes(pb.begin(), pb.end(), pa.begin(), pa.end()))
                EXPECT_TRUE(support_subgraph(g, h, a).is_subgraph_of(support_subgraph(g, h, b)));
        }
}

TEST(ClassifyFace, Examples)
{
    // Vertex 0 carries loop 0 (exceptional) and, with vertex 1, a 2-cycle.
    const TransitionGraph g(2, 2, {edge(0, 0, {1, 0}), edge(0, 1, {0, 1}), edge(1, 0, {0, 1}), edge(1, 1, {-1, 0})});
    const auto h = direction_hull(Subgraph::whole(g));
    for (FaceId f = 0; f < h.faces().size(); ++f)
        EXPECT_EQ(classify_face(g, h, f, {}), FaceClass::PurelyOrdinary);

    const std::vector<ExceptionalCycleRecord> rec = {{Cycle{{0}}, TypeContent::SideOnly, 2, 1}};
    const auto loop_face = h.smallest_face_containing(std::vector<RationalVector>{vec({1, 0})});
    EXPECT_EQ(h.face(loop_face).dimension, 0u);
    EXPECT_EQ(classify_face(g, h, loop_face, rec), FaceClass::PurelyExceptional);
    EXPECT_EQ(classify_face(g, h, h.top_face(), rec), FaceClass::Mixed);

    const std::vector<ExceptionalCycleRecord> bad = {{Cycle{{0, 1}}, TypeContent::SideOnly, 2, 1}};
    try {
        (void)classify_face(g, h, h.top_face(), bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadExceptionalReference);
    }
}

TEST(PolytopeProjection, IdentityIsIdentityOnFaces)
{
    const auto g = fixture::complete3();
    const auto h = direction_hull(Subgraph::whole(g));
    const auto map = polytope_projection(h, IntMatrix::Identity(2, 2), h);
    EXPECT_TRUE(map.surjective);
    for (FaceId f = 0; f < h.faces().size(); ++f)
        EXPECT_EQ(map.preimage[f], f);
}

TEST(PolytopeProjection, DoubleCoverOfFigureEight)
{
    // Loop a lifts to two loops, loop b lifts to one 2-cycle.
    const auto base = canonical_abstract_labels(fixture::figure_eight());
    const TransitionGraph cover(2, 0, {edge(0, 0, {}), edge(1, 1, {}), edge(0, 1, {}), edge(1, 0, {})});
    const auto cover_abs = canonical_abstract_labels_keep_weights(cover);
    ASSERT_EQ(cover_abs.rank(), 3u);
    const auto hb = direction_hull(Subgraph::whole(base));
    const auto hc = direction_hull(Subgraph::whole(cover_abs));
    IntMatrix proj(2, 3);
    proj << 1, 1, 0, 0, 0, 2;
    const auto map = polytope_projection(hc, proj, hb);
    EXPECT_TRUE(map.surjective);
    for (auto v : hb.vertex_faces()) {
        ASSERT_TRUE(map.preimage[v].has_value());
        EXPECT_EQ(hc.face(*map.preimage[v]).points, map.preimage_points[v]);
    }
    const auto a_vertex = hb.smallest_face_containing(std::vector<RationalVector>{vec({1, 0})});
    EXPECT_EQ(map.preimage_points[a_vertex].size(), 2u);
    EXPECT_EQ(hc.face(*map.preimage[a_vertex]).dimension, 1u);
}

TEST(PolytopeProjection, SingleCoordinate)
{
    const auto g = fixture::complete3();
    const auto h = direction_hull(Subgraph::whole(g));
    IntMatrix proj(1, 2);
    proj << 1, 0;
    std::vector<RationalVector> images;
    for (const auto& p : h.points())
        images.push_back(vec({p(0)}));
    const auto base = convex_hull(images, 1);
    const auto map = polytope_projection(h, proj, base);
    for (auto v : base.vertex_faces())
        EXPECT_TRUE(map.preimage[v].has_value());
}

TEST(PolytopeProjection, WarnsWhenNotSurjective)
{
    const auto g = fixture::complete3();
    const auto h = direction_hull(Subgraph::whole(g));
    const auto base = convex_hull({vec({-5}), vec({5})}, 1);
    IntMatrix proj(1, 2);
    proj << 1, 0;
    const auto map = polytope_projection(h, proj, base);
    EXPECT_FALSE(map.surjective);
    EXPECT_EQ(map.warnings.size(), 2u);
    const auto tiny = convex_hull({vec({0}), vec({Rational(1, 2)})}, 1);
    EXPECT_THROW((void)polytope_projection(h, proj, tiny), Error);
}

TEST(HullLattice, FaceSupportIsomorphismOnSmallGraphs)
{
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<std::size_t> pick(0, 2);
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<Edge> es;
        for (int k = 0; k < 1 + trial % 5; ++k)
            es.push_back(edge(pick(rng), pick(rng), {}));
        const TransitionGraph g(3, 0, es);
        const auto why = lattice::check_face_support_isomorphism(g);
        EXPECT_FALSE(why.has_value()) << *why;
    }
}

TEST(HullLattice, RationalInteriorPointsAreWalkDirections)
{
    const auto g = fixture::complete3();
    const auto h = direction_hull(Subgraph::whole(g));
    std::mt19937_64 rng(44);
    std::uniform_int_distribution<int> w(1, 5);
    for (int trial = 0; trial < 10; ++trial) {
        // Positive multiplicities on every simple cycle give a connected balanced multiset.
        std::vector<std::int64_t> mult(g.edge_count(), 0);
        Monomial total = Monomial::one(g.rank());
        for (const auto& c : h.cycles()) {
            const int k = w(rng);
            for (EdgeId e : c.edges)
                mult[e] += k;
            total = total * cycle_class(g, c).pow(k);
        }
        const Cycle walk{euler_circuit(g, mult)};
        ASSERT_NO_THROW(check_cycle(g, walk.edges));
        const auto p = direction_point(g, walk);
        RationalVector expected(2);
        for (int i = 0; i < 2; ++i)
            expected(i) = Rational(total.vector()[static_cast<std::size_t>(i)], total.degree());
        EXPECT_TRUE(same(p, expected));
        EXPECT_TRUE(h.contains(p));
    }
}
