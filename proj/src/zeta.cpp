#include "flowtorus/zeta.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace flowtorus {

namespace {

GroupRingElement edge_term(const TransitionGraph& g, EdgeId e)
{
    return GroupRingElement::monomial(g.monomial(e), Rational(g.edge(e).sign));
}

RingMatrix<Rational> one_minus(const RingMatrix<Rational>& phi)
{
    return RingMatrix<Rational>::identity(phi.size(), phi.rank()) - phi;
}

} // namespace

RingMatrix<Rational> transfer_matrix(const Subgraph& w)
{
    const auto& g = w.parent();
    const auto& vs = w.vertices();
    std::map<VertexId, std::size_t> index;
    for (std::size_t i = 0; i < vs.size(); ++i)
        index[vs[i]] = i;
    RingMatrix<Rational> phi(vs.size(), g.rank());
    for (EdgeId e : w.edges())
        phi(index.at(g.edge(e).source), index.at(g.edge(e).target)) += edge_term(g, e);
    return phi;
}

GroupRingElement kappa(const Subgraph& w, std::size_t determinant_cap)
{
    return det_division_free(one_minus(transfer_matrix(w)), determinant_cap);
}

TruncatedSeries<Rational> kappa_trace_oracle(const Subgraph& w, std::int64_t bound)
{
    const auto phi = transfer_matrix(w);
    GroupRingElement sum(phi.rank());
    auto power = phi;
    for (std::int64_t m = 1; m <= bound; ++m) {
        sum += power.trace().truncated(bound) * Rational(1, m);
        if (m < bound)
            power = RingMatrix<Rational>::multiply(power, phi, bound);
    }
    return series_exp(TruncatedSeries<Rational>(-sum, bound));
}

std::vector<KappaFactor> kappa_product_formula(const Subgraph& w, std::size_t determinant_cap)
{
    std::vector<KappaFactor> out;
    auto product = GroupRingElement::one(w.parent().rank());
    for (auto& c : strong_components(w)) {
        auto k = kappa(c, determinant_cap);
        product *= k;
        out.push_back({std::move(c), std::move(k)});
    }
    if (product != kappa(w, determinant_cap))
        throw std::logic_error("product of component factors differs from kappa");
    return out;
}

GroupRingElement kappa_face_part(const Subgraph& w, const DirectionHull& h, FaceId face)
{
    return kappa(intersect(w, support_subgraph(w.parent(), h, face)));
}

GroupRingElement face_filter(const GroupRingElement& k, const DirectionHull& h, FaceId face)
{
    (void)h.face(face);
    GroupRingElement out(k.rank());
    for (const auto& [m, c] : k.terms()) {
        if (m.degree() == 0) {
            out.add_term(m, c);
            continue;
        }
        RationalVector p(static_cast<Eigen::Index>(m.rank()));
        for (std::size_t i = 0; i < m.rank(); ++i)
            p(static_cast<Eigen::Index>(i)) = Rational(m.vector()[i], m.degree());
        if (h.in_face(p, face))
            out.add_term(m, c);
    }
    return out;
}

ZetaResult zeta_from_kappa(const TransitionGraph& g, std::span<const ExceptionalCycleRecord> exceptional,
                           std::int64_t bound, bool require_exact, std::size_t determinant_cap)
{
    validate_records(g, exceptional);
    const auto k = kappa(Subgraph::whole(g), determinant_cap);
    auto denominator = GroupRingElement::one(g.rank());
    for (const auto& r : exceptional)
        denominator *= correction_polynomial(r, cycle_class(g, r.cycle));
    ZetaResult out{TruncatedSeries<Rational>(
                       GroupRingElement::multiply(k, series_inverse(denominator, bound).element(), bound), bound),
                   exact_divide(k, denominator),
                   {}};
    if (!out.exact) {
        if (require_exact)
            fail(ErrorCode::InexactDivision, "kappa is not divisible by the exceptional correction factors");
        out.warnings.push_back("InexactDivision: zeta is only known as a series truncated at degree " +
                               std::to_string(bound));
    }
    return out;
}

GroupRingElement normalize_unit(const GroupRingElement& p)
{
    if (p.is_zero())
        fail(ErrorCode::ZeroPolynomial, "cannot normalize the zero polynomial");
    const auto& [least, coeff] = *p.terms().begin();
    const Monomial shift = least;
    auto out = p.map_monomials(
        [&](const Monomial& m) {
            IntVector v(m.vector());
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] -= shift.vector()[i];
            return Monomial(std::move(v), m.degree() - shift.degree());
        },
        p.rank());
    return coeff < 0 ? out * Rational(-1) : out;
}

GroupRingElement alexander_polynomial(const TransitionGraph& g, std::span<const ExceptionalCycleRecord> exceptional,
                                      std::int64_t b1)
{
    if (b1 < 1)
        fail(ErrorCode::ValidationError, "b1 of a mapping torus is at least 1");
    if (b1 == 1 && g.rank() != 0)
        fail(ErrorCode::AmbiguousT, "b1 = 1 but the homology labels have rank " + std::to_string(g.rank()));
    const auto k = kappa(Subgraph::whole(g));
    const auto bound = std::max<std::int64_t>(1, k.max_degree());
    auto delta = *zeta_from_kappa(g, exceptional, bound, true).exact;
    if (b1 == 1) {
        const auto one_minus_t = GroupRingElement::one(0) - GroupRingElement::monomial(Monomial({}, 1));
        delta *= one_minus_t * one_minus_t;
    }
    return normalize_unit(delta);
}

bool check_degree_formula(const GroupRingElement& delta, std::int64_t chi, std::int64_t b1)
{
    const auto spread = delta.max_degree() - delta.min_degree();
    return spread == (b1 > 1 ? -chi : -chi + 2);
}

std::vector<std::string> check_action(const HomologicalAction& a)
{
    if (a.matrix.rows() != a.matrix.cols())
        fail(ErrorCode::ValidationError, "homological action must be square");
    std::vector<std::string> warnings;
    if (a.matrix.rows() > 0 && rank<Rational>(cast_matrix<Rational>(a.matrix)) < a.matrix.rows())
        warnings.push_back("homological action is singular over the rationals");
    return warnings;
}

std::vector<Integer> smith_invariant_factors(const Matrix<Integer>& input)
{
    Matrix<Integer> m = input;
    const auto rows = m.rows(), cols = m.cols();
    const auto n = std::min(rows, cols);
    for (Eigen::Index t = 0; t < n; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            Eigen::Index pr = -1, pc = -1;
            for (Eigen::Index i = t; i < rows; ++i)
                for (Eigen::Index j = t; j < cols; ++j)
                    if (m(i, j) != 0 && (pr < 0 || abs(m(i, j)) < abs(m(pr, pc)))) {
                        pr = i;
                        pc = j;
                    }
            if (pr < 0)
                break;
            m.row(t).swap(m.row(pr));
            m.col(t).swap(m.col(pc));
            bool clean = true;
            for (Eigen::Index i = t + 1; i < rows; ++i) {
                const Integer q = m(i, t) / m(t, t);
                if (q != 0)
                    m.row(i) -= q * m.row(t);
                clean = clean && m(i, t) == 0;
            }
            for (Eigen::Index j = t + 1; j < cols; ++j) {
                const Integer q = m(t, j) / m(t, t);
                if (q != 0)
                    m.col(j) -= q * m.col(t);
                clean = clean && m(t, j) == 0;
            }
            if (!clean)
                continue;
            // The pivot must divide the rest of the block.
            Eigen::Index bad = -1;
            for (Eigen::Index i = t + 1; i < rows && bad < 0; ++i)
                for (Eigen::Index j = t + 1; j < cols; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0)
                break;
            m.row(t) += m.row(bad);
        }
    }
    std::vector<Integer> out;
    for (Eigen::Index t = 0; t < n; ++t)
        out.push_back(abs(m(t, t)));
    std::stable_partition(out.begin(), out.end(), [](const Integer& x) { return x != 0; });
    return out;
}

MappingTorusHomology homology_of_mapping_torus(const HomologicalAction& a)
{
    (void)check_action(a);
    const auto n = a.matrix.rows();
    Matrix<Integer> m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = Integer((i == j ? 1 : 0) - a.matrix(i, j));
    MappingTorusHomology out;
    out.invariant_factors = smith_invariant_factors(m);
    for (const auto& d : out.invariant_factors) {
        if (d == 0)
            ++out.b1;
        else if (d > 1)
            out.torsion.push_back(d);
    }
    return out;
}

SingleVariableAlexander alexander_single_variable(const HomologicalAction& a)
{
    (void)check_action(a);
    const auto n = static_cast<std::size_t>(a.matrix.rows());
    RingMatrix<Rational> m(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto entry = GroupRingElement::monomial(Monomial({}, 1), Rational(-a.matrix(static_cast<Eigen::Index>(i),
                                                                                         static_cast<Eigen::Index>(j))));
            if (i == j)
                entry += GroupRingElement::one(0);
            m(i, j) = std::move(entry);
        }
    SingleVariableAlexander out{det_division_free(m), false, false};
    if (out.polynomial.is_zero())
        return out;
    const auto d = out.polynomial.max_degree();
    auto coeff = [&](std::int64_t k) { return out.polynomial.coefficient(Monomial({}, k)); };
    out.monic = abs(coeff(d)) == 1 && abs(coeff(0)) == 1;
    out.palindromic = true;
    for (std::int64_t k = 0; k <= d; ++k)
        out.palindromic = out.palindromic && coeff(k) == coeff(d - k);
    return out;
}

std::vector<Cycle> primitive_cycles(const Subgraph& g, std::int64_t bound, std::size_t walk_cap)
{
    const auto& parent = g.parent();
    std::vector<Cycle> out;
    std::size_t walks = 0;
    std::vector<EdgeId> path;
    for (EdgeId e0 : g.edges()) {
        const VertexId home = parent.edge(e0).source;
        // Depth-first over walks that start with e0 and use only edges >= e0.
        auto extend = [&](auto&& self, VertexId v, std::int64_t degree) -> void {
            if (++walks > walk_cap)
                fail(ErrorCode::WalkCapExceeded, "more than " + std::to_string(walk_cap) +
                                                     " walks explored below degree " + std::to_string(bound));
            if (v == home) {
                // Least rotation and primitive iff strictly below every other rotation starting at e0.
                const auto n = path.size();
                bool least = true;
                for (std::size_t i = 1; i < n && least; ++i) {
                    if (path[i] != e0)
                        continue;
                    for (std::size_t k = 0; k < n; ++k) {
                        const auto x = path[(i + k) % n], y = path[k];
                        if (x != y) {
                            least = x > y;
                            break;
                        }
                        if (k + 1 == n)
                            least = false;
                    }
                }
                if (least)
                    out.push_back(Cycle{path});
            }
            for (EdgeId e : parent.out_edges()[v]) {
                if (e < e0 || !g.has_edge(e) || degree + parent.edge(e).weight > bound)
                    continue;
                path.push_back(e);
                self(self, parent.edge(e).target, degree + parent.edge(e).weight);
                path.pop_back();
            }
        };
        if (parent.edge(e0).weight > bound)
            continue;
        path.assign(1, e0);
        extend(extend, parent.edge(e0).target, parent.edge(e0).weight);
    }
    return out;
}

TruncatedSeries<Rational> zeta_product_oracle(const TransitionGraph& g,
                                              std::span<const ExceptionalCycleRecord> exceptional,
                                              std::int64_t bound, std::size_t walk_cap)
{
    validate_records(g, exceptional);
    std::map<std::vector<EdgeId>, const ExceptionalCycleRecord*> recorded;
    for (const auto& r : exceptional)
        recorded[canonical_rotation(r.cycle).edges] = &r;

    const auto one = GroupRingElement::one(g.rank());
    TruncatedSeries<Rational> product(one, bound);
    for (const auto& c : primitive_cycles(Subgraph::whole(g), bound, walk_cap)) {
        const Monomial a = cycle_class(g, c);
        const int s = cycle_sign(g, c);
        const auto am = GroupRingElement::monomial(a);
        GroupRingElement factor(g.rank());
        if (auto it = recorded.find(c.edges); it != recorded.end()) {
            factor = GroupRingElement::multiply(one - am * Rational(s),
                                                series_inverse(correction_polynomial(*it->second, a), bound).element(),
                                                bound);
        } else {
            const int po = s > 0 ? 1 : 2;
            const auto lifted = power(one - GroupRingElement::monomial(a.pow(po)), static_cast<unsigned>(2 / po));
            factor = GroupRingElement::multiply(series_inverse(one - am, bound).element(), lifted, bound);
        }
        product = product * TruncatedSeries<Rational>(factor, bound);
    }
    return product;
}

} // namespace flowtorus
