#ifndef FLOWTORUS_MAHLER_HPP
#define FLOWTORUS_MAHLER_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flowtorus/laurent.hpp"

namespace flowtorus {

enum class MahlerMethod { JensenExact, IteratedJensen };

struct MahlerEstimate {
    double value = 0.0;
    /// Standard error of `value`; zero for the exact univariate formula.
    double standard_error = 0.0;
    std::size_t samples = 1;
    MahlerMethod method = MahlerMethod::JensenExact;
    /// Largest relative residual |q(b)| / sum |a_k||b|^k over the computed roots.
    double root_tolerance = 0.0;
    /// Specializations that vanished identically and were left out of the average.
    std::size_t discarded = 0;
};

/// Mahler measure of a one-variable polynomial given by ascending coefficients,
/// through the Jensen formula |D| * prod max(1, |b_i|).
MahlerEstimate mahler_univariate(std::span<const std::complex<double>> coefficients);
MahlerEstimate mahler_univariate(std::span<const double> coefficients);

/// Natural log of the Jensen product; -inf never occurs for a nonzero input.
double log_mahler_univariate(std::span<const std::complex<double>> coefficients, double* residual = nullptr);

/// Iterated Jensen quadrature. Axis k < rank selects x_{k+1}; axis == rank selects t.
/// The remaining torus coordinates follow a shifted Kronecker sequence seeded by `seed`.
MahlerEstimate mahler_multivariate(const GroupRingElement& q, std::size_t distinguished, std::size_t samples,
                                   std::uint64_t seed);

/// L_m(q) for m = 1..M, with the power-sum normalization: if q = prod (1 - lambda_i),
/// then L_m(q) = sum lambda_i^m (graded by m).
class LmSequence {
public:
    LmSequence() = default;
    explicit LmSequence(std::vector<GroupRingElement> entries) : entries_(std::move(entries)) {}

    std::int64_t size() const noexcept { return static_cast<std::int64_t>(entries_.size()); }
    /// One-based index m.
    const GroupRingElement& operator[](std::int64_t m) const { return entries_.at(static_cast<std::size_t>(m - 1)); }
    const std::vector<GroupRingElement>& entries() const noexcept { return entries_; }

    friend bool operator==(const LmSequence&, const LmSequence&) = default;

private:
    std::vector<GroupRingElement> entries_;
};

/// Primary route: expansion of the logarithm series.
LmSequence lm_sequence(const GroupRingElement& q, std::int64_t upto);

/// Independent route: Newton identities in the grading variable, seeded with L_0 = deg q.
LmSequence lm_recurrence_oracle(const GroupRingElement& q, std::int64_t upto);

struct L1BoundReport {
    bool holds_up_to_M = true;
    std::optional<std::int64_t> first_violation;
    std::int64_t degree = 0;
    std::vector<Rational> norms; // norms[m-1] = |L_m(q)|_1
};

/// Checks |L_m(q)|_1 <= deg q for m <= upto. A violation certifies Mahler measure > 1.
L1BoundReport check_lemma_l1_bound(const GroupRingElement& q, std::int64_t upto);

/// Period m_q of the sequence L_m(q) after evaluating x_i -> evaluations[i] and reducing mod p.
/// Every positive multiple m of m_q has L_m(q) != 0. nullopt if no period below `search_cap`.
std::optional<std::int64_t> find_mq(const GroupRingElement& q, std::int64_t prime,
                                    std::span<const std::int64_t> evaluations,
                                    std::int64_t search_cap = 10'000'000);

bool is_prime(std::int64_t n);

} // namespace flowtorus

#endif // FLOWTORUS_MAHLER_HPP
