#ifndef FLOWTORUS_SCALAR_HPP
#define FLOWTORUS_SCALAR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace flowtorus {

// Expression templates are disabled so that `auto` and Eigen's own
// expression machinery compose without dangling temporaries.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<std::int64_t>;
using IntVector = std::vector<std::int64_t>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

inline bool is_integral(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r)
{
    if (is_integral(r))
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);

/// Row echelon data of an exact matrix: reduced form, pivot columns, rank.
template <class Scalar>
struct RowEchelon {
    Matrix<Scalar> reduced;
    std::vector<Eigen::Index> pivots;
    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Reduced row echelon form by exact Gauss-Jordan elimination. Scalar must be a field
/// with exact equality (Rational).
template <class Scalar>
RowEchelon<Scalar> row_echelon(Matrix<Scalar> m)
{
    RowEchelon<Scalar> out;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = row; r < m.rows(); ++r)
            if (m(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            continue;
        m.row(row).swap(m.row(pivot));
        const Scalar inv = Scalar(1) / m(row, col);
        m.row(row) *= inv;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0)
                continue;
            const Scalar f = m(r, col);
            m.row(r) -= f * m.row(row);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

template <class Scalar>
Eigen::Index rank(const Matrix<Scalar>& m)
{
    return row_echelon<Scalar>(m).rank();
}

/// Basis of the right null space, one column per free variable.
template <class Scalar>
Matrix<Scalar> null_space(const Matrix<Scalar>& m)
{
    const auto ech = row_echelon<Scalar>(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (auto p : ech.pivots)
        is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<Eigen::Index> free;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        if (!is_pivot[static_cast<std::size_t>(c)])
            free.push_back(c);
    Matrix<Scalar> basis = Matrix<Scalar>::Zero(m.cols(), static_cast<Eigen::Index>(free.size()));
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], static_cast<Eigen::Index>(k)) = 1;
        for (Eigen::Index r = 0; r < ech.rank(); ++r)
            basis(ech.pivots[static_cast<std::size_t>(r)], static_cast<Eigen::Index>(k)) = -ech.reduced(r, free[k]);
    }
    return basis;
}

template <class To, class From>
Matrix<To> cast_matrix(const Matrix<From>& m)
{
    Matrix<To> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = To(m(i, j));
    return out;
}

} // namespace flowtorus

#endif // FLOWTORUS_SCALAR_HPP
