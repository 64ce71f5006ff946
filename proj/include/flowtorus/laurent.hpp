#ifndef FLOWTORUS_LAURENT_HPP
#define FLOWTORUS_LAURENT_HPP

// Exact arithmetic in the graded group ring Q[Z^b][t]: Laurent in the
// homology coordinates, polynomial in the grading. Monomials of positive
// degree generate the forward half completion used for log/exp.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flowtorus/error.hpp"
#include "flowtorus/scalar.hpp"

namespace flowtorus {

/// An element of Z^b together with a non-negative grading degree.
class Monomial {
public:
    Monomial() = default;

    Monomial(IntVector vector, std::int64_t degree) : vector_(std::move(vector)), degree_(degree)
    {
        if (degree_ < 0)
            throw std::invalid_argument("monomial degree must be non-negative");
    }

    static Monomial one(std::size_t rank) { return Monomial(IntVector(rank, 0), 0); }

    const IntVector& vector() const noexcept { return vector_; }
    std::int64_t degree() const noexcept { return degree_; }
    std::size_t rank() const noexcept { return vector_.size(); }

    bool is_one() const
    {
        return degree_ == 0 && std::all_of(vector_.begin(), vector_.end(), [](auto x) { return x == 0; });
    }

    Monomial operator*(const Monomial& other) const
    {
        check_rank(other);
        IntVector v(vector_);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += other.vector_[i];
        return Monomial(std::move(v), degree_ + other.degree_);
    }

    Monomial pow(std::int64_t k) const
    {
        IntVector v(vector_);
        for (auto& x : v)
            x *= k;
        return Monomial(std::move(v), degree_ * k);
    }

    /// Display and storage order: degree first, then the vector lexicographically.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        if (auto c = a.degree_ <=> b.degree_; c != 0)
            return c;
        return a.vector_ <=> b.vector_;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;

    void check_rank(const Monomial& other) const
    {
        if (other.rank() != rank())
            throw std::invalid_argument("monomial rank mismatch");
    }

private:
    IntVector vector_;
    std::int64_t degree_ = 0;
};

/// Finitely supported map Monomial -> Scalar with no stored zeros.
template <class Scalar>
class GroupRing {
public:
    using Terms = std::map<Monomial, Scalar>;

    explicit GroupRing(std::size_t rank = 0) : rank_(rank) {}

    static GroupRing constant(const Scalar& c, std::size_t rank)
    {
        GroupRing p(rank);
        p.add_term(Monomial::one(rank), c);
        return p;
    }

    static GroupRing one(std::size_t rank) { return constant(Scalar(1), rank); }

    static GroupRing monomial(const Monomial& m, const Scalar& c = Scalar(1))
    {
        GroupRing p(m.rank());
        p.add_term(m, c);
        return p;
    }

    std::size_t rank() const noexcept { return rank_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool is_one() const
    {
        return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == Scalar(1);
    }

    Scalar coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    /// Coefficient of the zero monomial.
    Scalar constant_term() const { return coefficient(Monomial::one(rank_)); }

    std::int64_t max_degree() const
    {
        if (terms_.empty())
            fail(ErrorCode::ZeroPolynomial, "degree of the zero element");
        return terms_.rbegin()->first.degree();
    }

    std::int64_t min_degree() const
    {
        if (terms_.empty())
            fail(ErrorCode::ZeroPolynomial, "degree of the zero element");
        return terms_.begin()->first.degree();
    }

    GroupRing homogeneous_part(std::int64_t degree) const
    {
        GroupRing out(rank_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == degree)
                out.terms_.emplace_hint(out.terms_.end(), m, c);
        return out;
    }

    GroupRing truncated(std::int64_t bound) const
    {
        GroupRing out(rank_);
        for (const auto& [m, c] : terms_) {
            if (m.degree() > bound)
                break;
            out.terms_.emplace_hint(out.terms_.end(), m, c);
        }
        return out;
    }

    void add_term(const Monomial& m, const Scalar& c)
    {
        if (m.rank() != rank_)
            throw std::invalid_argument("monomial rank does not match ring rank");
        if (c == Scalar(0))
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Scalar(0))
                terms_.erase(it);
        }
    }

    GroupRing& operator+=(const GroupRing& o)
    {
        check_rank(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }

    GroupRing& operator-=(const GroupRing& o)
    {
        check_rank(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }

    GroupRing& operator*=(const Scalar& s)
    {
        if (s == Scalar(0)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }

    friend GroupRing operator+(GroupRing a, const GroupRing& b) { return a += b; }
    friend GroupRing operator-(GroupRing a, const GroupRing& b) { return a -= b; }
    friend GroupRing operator-(GroupRing a)
    {
        for (auto& [m, c] : a.terms_)
            c = -c;
        return a;
    }
    friend GroupRing operator*(GroupRing a, const Scalar& s) { return a *= s; }
    friend GroupRing operator*(const Scalar& s, GroupRing a) { return a *= s; }
    friend GroupRing operator*(const GroupRing& a, const GroupRing& b) { return multiply(a, b, -1); }
    GroupRing& operator*=(const GroupRing& o) { return *this = multiply(*this, o, -1); }

    friend bool operator==(const GroupRing& a, const GroupRing& b)
    {
        return a.rank_ == b.rank_ && a.terms_ == b.terms_;
    }

    /// Product keeping only monomials of degree <= bound; bound < 0 means no truncation.
    static GroupRing multiply(const GroupRing& a, const GroupRing& b, std::int64_t bound)
    {
        a.check_rank(b);
        GroupRing out(a.rank_);
        for (const auto& [ma, ca] : a.terms_) {
            if (bound >= 0 && ma.degree() > bound)
                break;
            for (const auto& [mb, cb] : b.terms_) {
                if (bound >= 0 && ma.degree() + mb.degree() > bound)
                    break;
                out.add_term(ma * mb, ca * cb);
            }
        }
        return out;
    }

    /// Image under a map on monomials extended linearly (a group-ring homomorphism
    /// when `f` is a group homomorphism).
    template <class F>
    GroupRing map_monomials(F&& f, std::size_t new_rank) const
    {
        GroupRing out(new_rank);
        for (const auto& [m, c] : terms_)
            out.add_term(f(m), c);
        return out;
    }

    void check_rank(const GroupRing& o) const
    {
        if (o.rank_ != rank_)
            throw std::invalid_argument("group ring rank mismatch");
    }

private:
    std::size_t rank_ = 0;
    Terms terms_;
};

using GroupRingElement = GroupRing<Rational>;

/// x1^a*x2^b*t^d style rendering; terms in storage order.
template <class Scalar>
std::string to_string(const GroupRing<Scalar>& p)
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Scalar mag = c < Scalar(0) ? Scalar(-c) : c;
        if (first)
            os << (c < Scalar(0) ? "-" : "");
        else
            os << (c < Scalar(0) ? " - " : " + ");
        first = false;
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < m.rank(); ++i) {
            const auto e = m.vector()[i];
            if (e == 0)
                continue;
            factors.push_back("x" + std::to_string(i + 1) + (e == 1 ? "" : "^" + std::to_string(e)));
        }
        if (m.degree() != 0)
            factors.push_back(m.degree() == 1 ? "t" : "t^" + std::to_string(m.degree()));
        if (factors.empty() || mag != Scalar(1)) {
            os << mag;
            if (!factors.empty())
                os << "*";
        }
        for (std::size_t i = 0; i < factors.size(); ++i)
            os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

template <class Scalar>
std::ostream& operator<<(std::ostream& os, const GroupRing<Scalar>& p)
{
    return os << to_string(p);
}

template <class Scalar>
Scalar ell1_norm(const GroupRing<Scalar>& p)
{
    Scalar sum(0);
    for (const auto& [m, c] : p.terms())
        sum += c < Scalar(0) ? Scalar(-c) : c;
    return sum;
}

/// Element of the forward-graded completion known modulo degree > bound.
template <class Scalar>
class TruncatedSeries {
public:
    TruncatedSeries(GroupRing<Scalar> element, std::int64_t bound)
        : element_(element.truncated(bound)), bound_(bound)
    {
        if (bound < 1)
            throw std::invalid_argument("truncation bound must be positive");
    }

    const GroupRing<Scalar>& element() const noexcept { return element_; }
    std::int64_t bound() const noexcept { return bound_; }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        const auto bound = std::min(a.bound_, b.bound_);
        return TruncatedSeries(GroupRing<Scalar>::multiply(a.element_, b.element_, bound), bound);
    }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    GroupRing<Scalar> element_;
    std::int64_t bound_;
};

namespace detail {

/// Degree-zero part equals exactly 1, so q - 1 lies in the positive-degree ideal.
template <class Scalar>
bool has_unit_degree_zero_part(const GroupRing<Scalar>& q)
{
    return q.is_zero() ? false : q.homogeneous_part(0).is_one();
}

} // namespace detail

/// log q truncated at `bound` via log(1+r) = sum (-1)^{k+1} r^k / k.
template <class Scalar>
TruncatedSeries<Scalar> series_log(const GroupRing<Scalar>& q, std::int64_t bound)
{
    if (!detail::has_unit_degree_zero_part(q))
        fail(ErrorCode::ConstantTermNotOne, "series_log needs degree-zero part equal to 1");
    const auto r = (q - GroupRing<Scalar>::one(q.rank())).truncated(bound);
    GroupRing<Scalar> sum(q.rank());
    GroupRing<Scalar> power = r;
    for (std::int64_t k = 1; k <= bound && !power.is_zero(); ++k) {
        Scalar coeff = Scalar(k % 2 == 1 ? 1 : -1) / Scalar(k);
        sum += power * coeff;
        power = GroupRing<Scalar>::multiply(power, r, bound);
    }
    return TruncatedSeries<Scalar>(sum, bound);
}

/// exp s truncated at s.bound() via the Horner form 1 + s(1 + s/2(1 + s/3(...))).
template <class Scalar>
TruncatedSeries<Scalar> series_exp(const TruncatedSeries<Scalar>& s)
{
    const auto& x = s.element();
    if (!x.homogeneous_part(0).is_zero())
        fail(ErrorCode::NonzeroConstantTerm, "series_exp needs zero degree-zero part");
    const auto one = GroupRing<Scalar>::one(x.rank());
    GroupRing<Scalar> acc = one;
    for (std::int64_t k = s.bound(); k >= 1; --k)
        acc = one + GroupRing<Scalar>::multiply(x, acc, s.bound()) * (Scalar(1) / Scalar(k));
    return TruncatedSeries<Scalar>(acc, s.bound());
}

/// 1/q truncated at bound, for q with degree-zero part 1.
template <class Scalar>
TruncatedSeries<Scalar> series_inverse(const GroupRing<Scalar>& q, std::int64_t bound)
{
    if (!detail::has_unit_degree_zero_part(q))
        fail(ErrorCode::ConstantTermNotOne, "series_inverse needs degree-zero part equal to 1");
    const auto one = GroupRing<Scalar>::one(q.rank());
    const auto minus_r = (one - q).truncated(bound);
    // 1/(1 - y) = 1 + y(1 + y(...))
    GroupRing<Scalar> acc = one;
    for (std::int64_t k = 0; k < bound; ++k)
        acc = one + GroupRing<Scalar>::multiply(minus_r, acc, bound);
    return TruncatedSeries<Scalar>(acc, bound);
}

/// Quotient n/d when it is a polynomial; d must have degree-zero part 1.
template <class Scalar>
std::optional<GroupRing<Scalar>> exact_divide(const GroupRing<Scalar>& n, const GroupRing<Scalar>& d)
{
    if (n.is_zero())
        return GroupRing<Scalar>(n.rank());
    const auto bound = std::max<std::int64_t>(n.max_degree(), 1);
    auto q = GroupRing<Scalar>::multiply(n, series_inverse(d, bound).element(), bound);
    if (q * d == n)
        return q;
    return std::nullopt;
}

template <class Scalar>
GroupRing<Scalar> power(const GroupRing<Scalar>& p, unsigned k)
{
    auto out = GroupRing<Scalar>::one(p.rank());
    for (unsigned i = 0; i < k; ++i)
        out *= p;
    return out;
}

/// Square matrix over the group ring, row-major.
template <class Scalar>
class RingMatrix {
public:
    RingMatrix(std::size_t size, std::size_t rank)
        : size_(size), rank_(rank), entries_(size * size, GroupRing<Scalar>(rank))
    {
    }

    static RingMatrix identity(std::size_t size, std::size_t rank)
    {
        RingMatrix m(size, rank);
        for (std::size_t i = 0; i < size; ++i)
            m(i, i) = GroupRing<Scalar>::one(rank);
        return m;
    }

    std::size_t size() const noexcept { return size_; }
    std::size_t rank() const noexcept { return rank_; }

    GroupRing<Scalar>& operator()(std::size_t i, std::size_t j) { return entries_[i * size_ + j]; }
    const GroupRing<Scalar>& operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }

    friend RingMatrix operator-(const RingMatrix& a, const RingMatrix& b)
    {
        RingMatrix out(a.size_, a.rank_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k)
            out.entries_[k] = a.entries_[k] - b.entries_[k];
        return out;
    }

    static RingMatrix multiply(const RingMatrix& a, const RingMatrix& b, std::int64_t bound)
    {
        RingMatrix out(a.size_, a.rank_);
        for (std::size_t i = 0; i < a.size_; ++i)
            for (std::size_t k = 0; k < a.size_; ++k) {
                if (a(i, k).is_zero())
                    continue;
                for (std::size_t j = 0; j < a.size_; ++j)
                    if (!b(k, j).is_zero())
                        out(i, j) += GroupRing<Scalar>::multiply(a(i, k), b(k, j), bound);
            }
        return out;
    }

    GroupRing<Scalar> trace() const
    {
        GroupRing<Scalar> t(rank_);
        for (std::size_t i = 0; i < size_; ++i)
            t += (*this)(i, i);
        return t;
    }

private:
    std::size_t size_;
    std::size_t rank_;
    std::vector<GroupRing<Scalar>> entries_;
};

constexpr std::size_t default_determinant_cap = 24;

/// Berkowitz characteristic-polynomial recursion; only ring operations are used.
/// `at(i, j)` returns entry (i, j) of an n x n matrix. Returns det.
template <class Ring, class At>
Ring berkowitz_determinant(std::size_t n, At&& at, const Ring& zero, const Ring& one)
{
    if (n == 0)
        return one;
    // Coefficients of det(lambda - A) restricted to the trailing block, highest power first.
    std::vector<Ring> p{one, zero - at(n - 1, n - 1)};
    for (std::size_t i = n - 1; i-- > 0;) {
        const std::size_t s = n - 1 - i; // trailing block size
        std::vector<Ring> col(s + 2, zero);
        col[0] = one;
        col[1] = zero - at(i, i);
        std::vector<Ring> v(s, zero);
        for (std::size_t r = 0; r < s; ++r)
            v[r] = at(i + 1 + r, i);
        for (std::size_t k = 0; k < s; ++k) {
            Ring dot = zero;
            for (std::size_t r = 0; r < s; ++r)
                dot = dot + at(i, i + 1 + r) * v[r];
            col[k + 2] = zero - dot;
            if (k + 1 < s) {
                std::vector<Ring> next(s, zero);
                for (std::size_t r = 0; r < s; ++r)
                    for (std::size_t c = 0; c < s; ++c)
                        next[r] = next[r] + at(i + 1 + r, i + 1 + c) * v[c];
                v = std::move(next);
            }
        }
        std::vector<Ring> q(s + 2, zero);
        for (std::size_t r = 0; r < s + 2; ++r)
            for (std::size_t c = 0; c <= std::min(r, s); ++c)
                q[r] = q[r] + col[r - c] * p[c];
        p = std::move(q);
    }
    return n % 2 == 0 ? p[n] : zero - p[n];
}

/// Exact determinant over the commutative group ring without division.
template <class Scalar>
GroupRing<Scalar> det_division_free(const RingMatrix<Scalar>& m, std::size_t cap = default_determinant_cap)
{
    if (m.size() > cap)
        fail(ErrorCode::SizeCapExceeded,
             "matrix size " + std::to_string(m.size()) + " exceeds determinant cap " + std::to_string(cap));
    const GroupRing<Scalar> zero(m.rank());
    const auto one = GroupRing<Scalar>::one(m.rank());
    return berkowitz_determinant<GroupRing<Scalar>>(
        m.size(), [&](std::size_t i, std::size_t j) -> const GroupRing<Scalar>& { return m(i, j); }, zero, one);
}

} // namespace flowtorus

#endif // FLOWTORUS_LAURENT_HPP
