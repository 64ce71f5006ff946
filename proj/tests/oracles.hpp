#ifndef FLOWTORUS_TESTS_ORACLES_HPP
#define FLOWTORUS_TESTS_ORACLES_HPP

// Independent reference computations. None of these share code paths with the
// library beyond the GroupRing container itself.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "flowtorus/digraph.hpp"
#include "flowtorus/laurent.hpp"

namespace oracle {

using flowtorus::GroupRingElement;
using flowtorus::Monomial;
using flowtorus::Rational;

inline Monomial mono(std::vector<std::int64_t> v, std::int64_t deg) { return Monomial(std::move(v), deg); }

inline GroupRingElement term(std::vector<std::int64_t> v, std::int64_t deg, Rational c = 1)
{
    return GroupRingElement::monomial(mono(std::move(v), deg), c);
}

inline GroupRingElement one(std::size_t rank) { return GroupRingElement::one(rank); }

/// Univariate polynomial in t (rank 0) from ascending integer coefficients.
inline GroupRingElement poly_t(const std::vector<std::int64_t>& c)
{
    GroupRingElement p(0);
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0)
            p += term({}, static_cast<std::int64_t>(k), Rational(c[k]));
    return p;
}

/// Leibniz expansion over all permutations.
inline GroupRingElement leibniz_det(const flowtorus::RingMatrix<Rational>& m)
{
    const auto n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    GroupRingElement total(m.rank());
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j])
                    ++inversions;
        GroupRingElement prod = GroupRingElement::one(m.rank());
        for (std::size_t i = 0; i < n; ++i)
            prod = prod * m(i, perm[i]);
        total += (inversions % 2 == 0) ? prod : prod * Rational(-1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// log q up to degree M, computed as the unique series s with s' q = q' in the grading
/// variable: m s_m = m q_m - sum_{j=1}^{m-1} j s_j q_{m-j}.
inline GroupRingElement log_by_derivative(const GroupRingElement& q, std::int64_t bound)
{
    std::vector<GroupRingElement> qs, ss;
    for (std::int64_t m = 0; m <= bound; ++m) {
        qs.push_back(q.homogeneous_part(m));
        ss.emplace_back(q.rank());
    }
    for (std::int64_t m = 1; m <= bound; ++m) {
        GroupRingElement acc = qs[static_cast<std::size_t>(m)] * Rational(m);
        for (std::int64_t j = 1; j < m; ++j)
            acc = acc - ss[static_cast<std::size_t>(j)] * qs[static_cast<std::size_t>(m - j)] * Rational(j);
        ss[static_cast<std::size_t>(m)] = acc * Rational(1, m);
    }
    GroupRingElement out(q.rank());
    for (auto& s : ss)
        out += s;
    return out;
}

/// Product of max(1, |root|) times |lead| via Durand-Kerner, independent of the library's
/// companion-matrix route. Ascending coefficients.
inline double mahler_durand_kerner(std::vector<double> c)
{
    while (!c.empty() && c.back() == 0)
        c.pop_back();
    std::size_t lo = 0;
    while (lo < c.size() && c[lo] == 0)
        ++lo;
    c.erase(c.begin(), c.begin() + static_cast<long>(lo));
    const auto n = c.size() - 1;
    const double lead = c.back();
    if (n == 0)
        return std::abs(lead);
    std::vector<std::complex<double>> z(n);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = std::pow(std::complex<double>(0.4, 0.9), static_cast<double>(k));
    for (int it = 0; it < 2000; ++it)
        for (std::size_t k = 0; k < n; ++k) {
            std::complex<double> v = 0;
            for (std::size_t j = c.size(); j-- > 0;)
                v = v * z[k] + c[j] / lead;
            std::complex<double> den = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k)
                    den *= z[k] - z[j];
            z[k] -= v / den;
        }
    double m = std::abs(lead);
    for (auto r : z)
        m *= std::max(1.0, std::abs(r));
    return m;
}

/// Plain midpoint grid quadrature of the Mahler integral of a two-variable integer polynomial.
template <class F>
double mahler_torus_grid(F&& evaluate, int n)
{
    const double two_pi = 2 * std::acos(-1.0);
    double acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double a = two_pi * (i + 0.5) / n, b = two_pi * (j + 0.5) / n;
            acc += std::log(std::abs(evaluate(std::polar(1.0, a), std::polar(1.0, b))));
        }
    return std::exp(acc / (static_cast<double>(n) * n));
}

/// Brute-force enumeration of vertex-simple cycles by DFS over edge sequences from each
/// smallest vertex; returns sorted canonical edge lists.
inline std::vector<std::vector<flowtorus::EdgeId>> brute_force_cycles(const flowtorus::TransitionGraph& g,
                                                                      const std::vector<flowtorus::EdgeId>& allowed)
{
    std::vector<std::vector<flowtorus::EdgeId>> out;
    std::vector<bool> ok(g.edge_count(), false);
    for (auto e : allowed)
        ok[e] = true;
    std::vector<flowtorus::EdgeId> path;
    std::vector<bool> on(g.vertex_count(), false);
    std::function<void(flowtorus::VertexId, flowtorus::VertexId)> go = [&](flowtorus::VertexId s,
                                                                           flowtorus::VertexId v) {
        for (flowtorus::EdgeId e = 0; e < g.edge_count(); ++e) {
            if (!ok[e] || g.edge(e).source != v)
                continue;
            const auto w = g.edge(e).target;
            if (w < s)
                continue;
            path.push_back(e);
            if (w == s)
                out.push_back(path);
            else if (!on[w]) {
                on[w] = true;
                go(s, w);
                on[w] = false;
            }
            path.pop_back();
        }
    };
    for (flowtorus::VertexId s = 0; s < g.vertex_count(); ++s) {
        on[s] = true;
        go(s, s);
        on[s] = false;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Random polynomial with constant term 1, integer coefficients in [-2, 2].
inline GroupRingElement random_unit_constant(std::mt19937_64& rng, std::size_t rank, std::int64_t max_degree,
                                             int terms)
{
    std::uniform_int_distribution<int> coef(-2, 2), expo(-1, 1);
    std::uniform_int_distribution<std::int64_t> deg(1, max_degree);
    GroupRingElement p = GroupRingElement::one(rank);
    for (int k = 0; k < terms; ++k) {
        std::vector<std::int64_t> v(rank);
        for (auto& x : v)
            x = expo(rng);
        p += term(v, deg(rng), Rational(coef(rng)));
    }
    return p;
}

/// Invariant factors from determinantal divisors: d_k = gcd of all k x k minors.
inline std::vector<flowtorus::Integer> determinantal_invariant_factors(const flowtorus::Matrix<flowtorus::Integer>& m)
{
    using flowtorus::Integer;
    const auto rows = static_cast<std::size_t>(m.rows()), cols = static_cast<std::size_t>(m.cols());
    const auto n = std::min(rows, cols);
    auto subsets = [](std::size_t total, std::size_t k) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<bool> pick(total, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
        do {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < total; ++i)
                if (pick[i])
                    s.push_back(i);
            out.push_back(s);
        } while (std::prev_permutation(pick.begin(), pick.end()));
        return out;
    };
    auto minor = [&](const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) {
        std::vector<std::size_t> perm(r.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        Integer total = 0;
        do {
            int inv = 0;
            for (std::size_t i = 0; i < perm.size(); ++i)
                for (std::size_t j = i + 1; j < perm.size(); ++j)
                    inv += perm[i] > perm[j];
            Integer prod = 1;
            for (std::size_t i = 0; i < perm.size(); ++i)
                prod *= m(static_cast<Eigen::Index>(r[i]), static_cast<Eigen::Index>(c[perm[i]]));
            total += inv % 2 ? Integer(-prod) : prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return total;
    };
    std::vector<Integer> d{1};
    for (std::size_t k = 1; k <= n; ++k) {
        Integer g = 0;
        for (const auto& r : subsets(rows, k))
            for (const auto& c : subsets(cols, k))
                g = boost::multiprecision::gcd(g, minor(r, c));
        d.push_back(g);
    }
    std::vector<Integer> out;
    for (std::size_t k = 1; k <= n; ++k)
        out.push_back(d[k] == 0 ? Integer(0) : Integer(d[k] / d[k - 1]));
    return out;
}

} // namespace oracle

#endif // FLOWTORUS_TESTS_ORACLES_HPP
