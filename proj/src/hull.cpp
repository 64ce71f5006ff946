#include "flowtorus/hull.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace flowtorus {

namespace {

using Bits = std::vector<bool>;

bool equal(const RationalVector& a, const RationalVector& b)
{
    if (a.size() != b.size())
        return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i))
            return false;
    return true;
}

Rational dot(const RationalVector& a, const RationalVector& b)
{
    Rational s = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != 0 && b(i) != 0)
            s += a(i) * b(i);
    return s;
}

/// Scales v (and the extra scalar, if any) to coprime integers; sign is kept.
void make_primitive(RationalVector& v, Rational* extra = nullptr)
{
    Integer l = 1;
    Integer gcd = 0;
    auto visit_den = [&](const Rational& x) {
        l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
    };
    for (Eigen::Index i = 0; i < v.size(); ++i)
        visit_den(v(i));
    if (extra)
        visit_den(*extra);
    auto scaled = [&](const Rational& x) { return Integer(boost::multiprecision::numerator(x * Rational(l))); };
    for (Eigen::Index i = 0; i < v.size(); ++i)
        gcd = boost::multiprecision::gcd(gcd, scaled(v(i)));
    if (extra)
        gcd = boost::multiprecision::gcd(gcd, scaled(*extra));
    if (gcd == 0)
        return;
    const Rational f = Rational(l) / Rational(gcd);
    v *= f;
    if (extra)
        *extra *= f;
}

/// Affine dimension of a set of points.
std::size_t affine_rank(const std::vector<RationalVector>& pts, const std::vector<std::size_t>& idx)
{
    if (idx.size() <= 1)
        return 0;
    const auto b = pts[idx[0]].size();
    Matrix<Rational> d(static_cast<Eigen::Index>(idx.size() - 1), b);
    for (std::size_t k = 1; k < idx.size(); ++k)
        d.row(static_cast<Eigen::Index>(k - 1)) = (pts[idx[k]] - pts[idx[0]]).transpose();
    return static_cast<std::size_t>(rank<Rational>(d));
}

struct Ray {
    RationalVector y;
    Bits zero; // over distinct positions; set only for processed constraints
};

/// Extreme rays of the pointed cone {y : A y >= 0} by the double description method.
/// A has full column rank.
std::vector<Ray> extreme_rays(const Matrix<Rational>& a)
{
    const auto m = static_cast<std::size_t>(a.rows());
    const auto d = a.cols();

    std::vector<std::size_t> basis;
    Matrix<Rational> chosen(0, d);
    for (std::size_t i = 0; i < m && static_cast<Eigen::Index>(basis.size()) < d; ++i) {
        Matrix<Rational> trial(chosen.rows() + 1, d);
        trial << chosen, a.row(static_cast<Eigen::Index>(i));
        if (rank<Rational>(trial) == trial.rows()) {
            chosen = std::move(trial);
            basis.push_back(i);
        }
    }

    // Columns of chosen^-1 are the initial rays.
    Matrix<Rational> aug(d, 2 * d);
    aug << chosen, Matrix<Rational>::Identity(d, d);
    const auto ech = row_echelon<Rational>(aug);
    const Matrix<Rational> inv = ech.reduced.rightCols(d);

    Bits processed(m, false);
    for (auto i : basis)
        processed[i] = true;

    std::vector<Ray> rays;
    for (Eigen::Index j = 0; j < d; ++j) {
        Ray r{inv.col(j), Bits(m, false)};
        make_primitive(r.y);
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (static_cast<Eigen::Index>(k) != j)
                r.zero[basis[k]] = true;
        rays.push_back(std::move(r));
    }

    for (std::size_t row = 0; row < m; ++row) {
        if (processed[row])
            continue;
        const RationalVector ar = a.row(static_cast<Eigen::Index>(row)).transpose();
        std::vector<Rational> val(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t j = 0; j < rays.size(); ++j) {
            val[j] = dot(ar, rays[j].y);
            if (val[j] > 0)
                pos.push_back(j);
            else if (val[j] < 0)
                neg.push_back(j);
        }
        std::vector<Ray> next;
        for (std::size_t j = 0; j < rays.size(); ++j)
            if (val[j] >= 0) {
                Ray r = rays[j];
                if (val[j] == 0)
                    r.zero[row] = true;
                next.push_back(std::move(r));
            }
        for (auto p : pos)
            for (auto q : neg) {
                Bits z(m, false);
                std::size_t count = 0;
                for (std::size_t k = 0; k < m; ++k)
                    if (rays[p].zero[k] && rays[q].zero[k]) {
                        z[k] = true;
                        ++count;
                    }
                if (static_cast<Eigen::Index>(count) < d - 2)
                    continue;
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == p || o == q)
                        continue;
                    bool superset = true;
                    for (std::size_t k = 0; k < m && superset; ++k)
                        if (z[k] && !rays[o].zero[k])
                            superset = false;
                    if (superset)
                        adjacent = false;
                }
                if (!adjacent)
                    continue;
                Ray r{val[p] * rays[q].y - val[q] * rays[p].y, std::move(z)};
                make_primitive(r.y);
                r.zero[row] = true;
                next.push_back(std::move(r));
            }
        rays = std::move(next);
        processed[row] = true;
    }
    return rays;
}

} // namespace

const Face& DirectionHull::face(FaceId id) const
{
    if (id >= faces_.size())
        fail(ErrorCode::UnknownFace, "face " + std::to_string(id) + " does not exist");
    return faces_[id];
}

std::vector<FaceId> DirectionHull::vertex_faces() const
{
    std::vector<FaceId> out;
    for (FaceId f = 0; f < faces_.size(); ++f)
        if (faces_[f].dimension == 0)
            out.push_back(f);
    return out;
}

std::optional<FaceId> DirectionHull::find_face(const std::vector<std::size_t>& sorted_points) const
{
    auto it = std::lower_bound(faces_.begin(), faces_.end(), sorted_points,
                               [](const Face& f, const std::vector<std::size_t>& p) { return f.points < p; });
    if (it == faces_.end() || it->points != sorted_points)
        return std::nullopt;
    return static_cast<FaceId>(it - faces_.begin());
}

bool DirectionHull::contains(const RationalVector& x) const
{
    if (static_cast<std::size_t>(x.size()) != ambient_dim_)
        return false;
    for (const auto& [a, c] : span_)
        if (dot(a, x) != c)
            return false;
    for (const auto& f : facets_)
        if (dot(f.normal, x) > f.offset)
            return false;
    return true;
}

bool DirectionHull::in_face(const RationalVector& x, FaceId id) const
{
    const Face& f = face(id);
    if (!contains(x))
        return false;
    for (auto k : f.facets)
        if (dot(facets_[k].normal, x) != facets_[k].offset)
            return false;
    return true;
}

FaceId DirectionHull::smallest_face_containing(std::span<const RationalVector> xs) const
{
    for (const auto& x : xs)
        if (!contains(x))
            throw std::invalid_argument("point outside the hull");
    std::vector<std::size_t> pts(points_.size());
    std::iota(pts.begin(), pts.end(), std::size_t{0});
    for (const auto& f : facets_) {
        const bool tight = std::all_of(xs.begin(), xs.end(), [&](const auto& x) { return dot(f.normal, x) == f.offset; });
        if (!tight)
            continue;
        std::vector<std::size_t> meet;
        std::set_intersection(pts.begin(), pts.end(), f.points.begin(), f.points.end(), std::back_inserter(meet));
        pts = std::move(meet);
    }
    auto id = find_face(pts);
    if (!id)
        throw std::logic_error("face lattice is not closed under intersection");
    return *id;
}

bool operator==(const DirectionHull& a, const DirectionHull& b)
{
    if (a.ambient_dim_ != b.ambient_dim_ || a.points_.size() != b.points_.size() ||
        a.facets_.size() != b.facets_.size() || a.cycles_ != b.cycles_)
        return false;
    for (std::size_t i = 0; i < a.points_.size(); ++i)
        if (!equal(a.points_[i], b.points_[i]))
            return false;
    for (std::size_t i = 0; i < a.facets_.size(); ++i)
        if (a.facets_[i].points != b.facets_[i].points || a.facets_[i].offset != b.facets_[i].offset ||
            !equal(a.facets_[i].normal, b.facets_[i].normal))
            return false;
    return true;
}

void DirectionHull::build_faces()
{
    std::sort(facets_.begin(), facets_.end(), [](const Facet& x, const Facet& y) { return x.points < y.points; });

    std::vector<std::size_t> all(points_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::set<std::vector<std::size_t>> found{all};
    std::vector<std::vector<std::size_t>> frontier;
    for (const auto& f : facets_)
        if (found.insert(f.points).second)
            frontier.push_back(f.points);
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& s : frontier)
            for (const auto& f : facets_) {
                std::vector<std::size_t> meet;
                std::set_intersection(s.begin(), s.end(), f.points.begin(), f.points.end(), std::back_inserter(meet));
                if (!meet.empty() && found.insert(meet).second)
                    next.push_back(std::move(meet));
            }
        frontier = std::move(next);
    }

    faces_.clear();
    for (const auto& s : found) {
        Face f;
        f.points = s;
        f.dimension = affine_rank(points_, s);
        if (s != all)
            for (std::size_t k = 0; k < facets_.size(); ++k)
                if (std::includes(facets_[k].points.begin(), facets_[k].points.end(), s.begin(), s.end()))
                    f.facets.push_back(k);
        faces_.push_back(std::move(f));
    }
    top_ = *find_face(all);
}

DirectionHull convex_hull(std::vector<RationalVector> points, std::size_t ambient_dim, std::size_t dimension_cap)
{
    if (points.empty())
        fail(ErrorCode::EmptyRecurrentCore, "no points to take the hull of");
    for (const auto& p : points)
        if (static_cast<std::size_t>(p.size()) != ambient_dim)
            throw std::invalid_argument("point dimension mismatch");

    DirectionHull h;
    h.ambient_dim_ = ambient_dim;
    h.points_ = std::move(points);
    const auto& pts = h.points_;
    const auto b = static_cast<Eigen::Index>(ambient_dim);

    Matrix<Rational> diff(static_cast<Eigen::Index>(pts.size() - 1), b);
    for (std::size_t i = 1; i < pts.size(); ++i)
        diff.row(static_cast<Eigen::Index>(i - 1)) = (pts[i] - pts[0]).transpose();
    const auto ech = row_echelon<Rational>(diff);
    const auto r = static_cast<std::size_t>(ech.rank());
    if (r > dimension_cap)
        fail(ErrorCode::DimensionCapExceeded,
             "hull dimension " + std::to_string(r) + " exceeds cap " + std::to_string(dimension_cap));
    h.dimension_ = r;

    const Matrix<Rational> normals = null_space<Rational>(diff);
    for (Eigen::Index j = 0; j < normals.cols(); ++j) {
        RationalVector a = normals.col(j);
        Rational c = dot(a, pts[0]);
        make_primitive(a, &c);
        h.span_.emplace_back(std::move(a), std::move(c));
    }

    if (r > 0) {
        // Distinct positions in pivot coordinates; the projection is injective on the span.
        std::vector<std::size_t> position(pts.size());
        std::vector<std::size_t> rep;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto it = std::find_if(rep.begin(), rep.end(), [&](std::size_t k) { return equal(pts[k], pts[i]); });
            position[i] = static_cast<std::size_t>(it - rep.begin());
            if (it == rep.end())
                rep.push_back(i);
        }
        const auto d = static_cast<Eigen::Index>(r + 1);
        Matrix<Rational> a(static_cast<Eigen::Index>(rep.size()), d);
        for (std::size_t k = 0; k < rep.size(); ++k) {
            a(static_cast<Eigen::Index>(k), 0) = 1;
            for (std::size_t c = 0; c < r; ++c)
                a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c + 1)) = pts[rep[k]](ech.pivots[c]);
        }
        for (const auto& ray : extreme_rays(a)) {
            Facet f;
            f.normal = RationalVector::Zero(b);
            for (std::size_t c = 0; c < r; ++c)
                f.normal(ech.pivots[c]) = -ray.y(static_cast<Eigen::Index>(c + 1));
            f.offset = ray.y(0);
            for (std::size_t i = 0; i < pts.size(); ++i)
                if (ray.zero[position[i]])
                    f.points.push_back(i);
            h.facets_.push_back(std::move(f));
        }
    }
    h.build_faces();
    return h;
}

DirectionHull assemble_hull(std::size_t ambient_dim, std::vector<RationalVector> points, std::vector<Cycle> cycles,
                            std::vector<std::pair<RationalVector, Rational>> span, std::vector<Facet> facets)
{
    DirectionHull h;
    h.ambient_dim_ = ambient_dim;
    h.points_ = std::move(points);
    h.cycles_ = std::move(cycles);
    h.span_ = std::move(span);
    h.facets_ = std::move(facets);
    std::vector<std::size_t> all(h.points_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    h.dimension_ = affine_rank(h.points_, all);
    h.build_faces();
    return h;
}

RationalVector direction_point(const TransitionGraph& g, const Cycle& z)
{
    const Monomial c = cycle_class(g, z);
    if (c.degree() == 0)
        fail(ErrorCode::ZeroDegree, "cycle has total degree zero");
    RationalVector p(static_cast<Eigen::Index>(c.rank()));
    for (std::size_t i = 0; i < c.rank(); ++i)
        p(static_cast<Eigen::Index>(i)) = Rational(c.vector()[i], c.degree());
    return p;
}

DirectionHull direction_hull(const Subgraph& g, std::size_t cycle_cap, std::size_t dimension_cap)
{
    auto cycles = simple_cycles(g, cycle_cap);
    if (cycles.empty())
        fail(ErrorCode::EmptyRecurrentCore, "subgraph has no cycles");
    std::vector<RationalVector> pts;
    pts.reserve(cycles.size());
    for (const auto& z : cycles)
        pts.push_back(direction_point(g.parent(), z));
    DirectionHull h = convex_hull(std::move(pts), g.parent().rank(), dimension_cap);
    h.cycles_ = std::move(cycles);
    return h;
}

bool is_projective_current(const TransitionGraph& g, const ProjectiveCurrent& mu)
{
    if (mu.weights.size() != g.edge_count())
        return false;
    Rational total = 0;
    std::vector<Rational> balance(g.vertex_count(), Rational(0));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (mu.weights[e] < 0)
            return false;
        total += mu.weights[e];
        balance[g.edge(e).source] -= mu.weights[e];
        balance[g.edge(e).target] += mu.weights[e];
    }
    return total == 1 && std::all_of(balance.begin(), balance.end(), [](const Rational& x) { return x == 0; });
}

std::vector<ProjectiveCurrent> elementary_currents(const Subgraph& g, std::size_t cycle_cap)
{
    std::vector<ProjectiveCurrent> out;
    for (const auto& z : simple_cycles(g, cycle_cap)) {
        ProjectiveCurrent mu{std::vector<Rational>(g.parent().edge_count(), Rational(0))};
        const Rational w(1, static_cast<long>(z.edges.size()));
        for (EdgeId e : z.edges)
            mu.weights[e] += w;
        out.push_back(std::move(mu));
    }
    return out;
}

Subgraph support_subgraph(const TransitionGraph& g, const DirectionHull& h, FaceId face)
{
    const Face& f = h.face(face);
    if (h.cycles().size() != h.points().size())
        throw std::invalid_argument("hull has no generating cycles");
    std::vector<EdgeId> edges;
    for (auto i : f.points)
        edges.insert(edges.end(), h.cycles()[i].edges.begin(), h.cycles()[i].edges.end());
    return Subgraph(g, std::move(edges));
}

std::string_view face_class_name(FaceClass c)
{
    switch (c) {
    case FaceClass::PurelyOrdinary: return "purely_ordinary";
    case FaceClass::PurelyExceptional: return "purely_exceptional";
    case FaceClass::Mixed: return "mixed";
    }
    return "?";
}

FaceClass classify_face(const TransitionGraph& g, const DirectionHull& h, FaceId face,
                        std::span<const ExceptionalCycleRecord> exceptional)
{
    validate_records(g, exceptional);
    const Subgraph s = support_subgraph(g, h, face);
    std::set<std::vector<EdgeId>> inside;
    for (const auto& r : exceptional)
        if (std::all_of(r.cycle.edges.begin(), r.cycle.edges.end(), [&](EdgeId e) { return s.has_edge(e); }))
            inside.insert(canonical_rotation(r.cycle).edges);
    if (inside.empty())
        return FaceClass::PurelyOrdinary;

    // Purely exceptional: the support is a vertex-disjoint union of recorded cycles.
    std::set<VertexId> seen;
    for (const auto& z : simple_cycles(s)) {
        if (!inside.contains(canonical_rotation(z).edges))
            return FaceClass::Mixed;
        for (VertexId v : cycle_vertices(g, z))
            if (!seen.insert(v).second)
                return FaceClass::Mixed;
    }
    return FaceClass::PurelyExceptional;
}

ProjectionMap polytope_projection(const DirectionHull& cover, const IntMatrix& projection, const DirectionHull& base)
{
    if (static_cast<std::size_t>(projection.rows()) != base.ambient_dim() ||
        static_cast<std::size_t>(projection.cols()) != cover.ambient_dim())
        fail(ErrorCode::ValidationError, "projection matrix has the wrong shape");
    const Matrix<Rational> proj = cast_matrix<Rational>(projection);

    ProjectionMap out;
    for (std::size_t i = 0; i < cover.points().size(); ++i) {
        RationalVector img = proj * cover.points()[i];
        if (!base.contains(img))
            fail(ErrorCode::ValidationError,
                 "image of cover point " + std::to_string(i) + " lies outside the base hull");
        out.images.push_back(std::move(img));
    }
    for (FaceId e = 0; e < base.faces().size(); ++e) {
        std::vector<std::size_t> pre;
        for (std::size_t i = 0; i < out.images.size(); ++i)
            if (base.in_face(out.images[i], e))
                pre.push_back(i);
        out.preimage.push_back(pre.empty() ? std::nullopt : cover.find_face(pre));
        out.preimage_points.push_back(std::move(pre));
    }
    for (FaceId v : base.vertex_faces()) {
        const auto& pos = base.points()[base.face(v).points.front()];
        if (std::none_of(out.images.begin(), out.images.end(), [&](const auto& x) { return equal(x, pos); })) {
            out.surjective = false;
            out.warnings.push_back("NotSurjectiveOntoBaseHull: base vertex face " + std::to_string(v) +
                                   " has no preimage");
        }
    }
    return out;
}

} // namespace flowtorus
