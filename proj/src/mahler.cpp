#include "flowtorus/mahler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace flowtorus {

namespace {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

// Roots of sum a_k z^k with a_0 != 0 and a_n != 0, refined by Newton steps.
std::vector<cplx> polynomial_roots(std::span<const cplx> a)
{
    const auto n = static_cast<Eigen::Index>(a.size()) - 1;
    std::vector<cplx> roots;
    if (n == 1) {
        roots.push_back(-a[0] / a[1]);
        return roots;
    }
    if (n == 2) {
        const cplx disc = std::sqrt(a[1] * a[1] - 4.0 * a[2] * a[0]);
        // Avoid cancellation: pick the larger-magnitude root first.
        const cplx q = -0.5 * (a[1] + (std::real(std::conj(a[1]) * disc) >= 0 ? disc : -disc));
        if (q != cplx(0)) {
            roots.push_back(q / a[2]);
            roots.push_back(a[0] / q);
        } else {
            roots.assign(2, cplx(0));
        }
        return roots;
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i)
        companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i)
        companion(i, n - 1) = -a[static_cast<std::size_t>(i)] / a[static_cast<std::size_t>(n)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < n; ++i) {
        lcplx z(ev(i).real(), ev(i).imag());
        for (int iter = 0; iter < 3; ++iter) {
            lcplx f(0), df(0);
            for (auto k = a.size(); k-- > 0;) {
                df = df * z + f;
                f = f * z + lcplx(a[k].real(), a[k].imag());
            }
            if (std::abs(df) == 0.0L)
                break;
            const lcplx step = f / df;
            const lcplx candidate = z - step;
            // Accept only improving steps; multiple roots make Newton creep.
            lcplx fc(0);
            for (auto k = a.size(); k-- > 0;)
                fc = fc * candidate + lcplx(a[k].real(), a[k].imag());
            if (std::abs(fc) >= std::abs(f))
                break;
            z = candidate;
        }
        roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    return roots;
}

double relative_residual(std::span<const cplx> a, cplx z)
{
    cplx f(0);
    double scale = 0.0;
    const double r = std::abs(z);
    for (auto k = a.size(); k-- > 0;) {
        f = f * z + a[k];
        scale = scale * r + std::abs(a[k]);
    }
    return scale > 0 ? std::abs(f) / scale : 0.0;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace

namespace {

// log|lead| + sum over roots outside the unit disk; trimmed input of degree >= 0.
double log_mahler_by_roots(std::span<const cplx> trimmed, double& worst)
{
    double log_m = std::log(std::abs(trimmed.back()));
    if (trimmed.size() > 1)
        for (const auto& z : polynomial_roots(trimmed)) {
            const double r = std::abs(z);
            if (r > 1.0)
                log_m += std::log(r);
            worst = std::max(worst, relative_residual(trimmed, z));
        }
    return log_m;
}

using QPoly = std::vector<Rational>; // ascending, no trailing zeros

void trim(QPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

QPoly derivative(const QPoly& p)
{
    QPoly d;
    for (std::size_t k = 1; k < p.size(); ++k)
        d.push_back(p[k] * static_cast<long>(k));
    trim(d);
    return d;
}

// Quotient and remainder of a by b (b nonzero).
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b)
{
    QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        const auto shift = a.size() - b.size();
        const Rational f = a.back() / b.back();
        q[shift] = f;
        for (std::size_t k = 0; k < b.size(); ++k)
            a[shift + k] -= f * b[k];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

QPoly monic(QPoly p)
{
    const Rational lead = p.back();
    for (auto& c : p)
        c /= lead;
    return p;
}

QPoly gcd(QPoly a, QPoly b)
{
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

QPoly subtract(QPoly a, const QPoly& b)
{
    a.resize(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t k = 0; k < b.size(); ++k)
        a[k] -= b[k];
    trim(a);
    return a;
}

// Yun's algorithm: f = lead * prod parts[i]^(i+1) with monic squarefree parts.
std::vector<QPoly> squarefree_parts(const QPoly& f)
{
    std::vector<QPoly> parts;
    const QPoly df = derivative(f);
    const QPoly a0 = gcd(f, df);
    QPoly b = divmod(f, a0).first;
    QPoly c = divmod(df, a0).first;
    QPoly d = subtract(c, derivative(b));
    while (b.size() > 1) {
        const QPoly a = gcd(b, d);
        parts.push_back(a);
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = subtract(c, derivative(b));
    }
    return parts;
}

bool integer_valued(std::span<const cplx> c)
{
    constexpr double limit = 9007199254740992.0; // 2^53
    return std::all_of(c.begin(), c.end(), [](cplx z) {
        return z.imag() == 0 && std::abs(z.real()) <= limit && std::floor(z.real()) == z.real();
    });
}

} // namespace

double log_mahler_univariate(std::span<const cplx> coefficients, double* residual)
{
    std::size_t hi = coefficients.size();
    while (hi > 0 && coefficients[hi - 1] == cplx(0))
        --hi;
    if (hi == 0)
        fail(ErrorCode::ZeroPolynomial, "Mahler measure of the zero polynomial");
    std::size_t lo = 0;
    while (coefficients[lo] == cplx(0))
        ++lo;
    const auto trimmed = coefficients.subspan(lo, hi - lo);
    double worst = 0.0;
    double log_m = 0.0;
    if (trimmed.size() > 2 && integer_valued(trimmed)) {
        // Repeated roots are split off exactly; each squarefree part has simple roots.
        QPoly f;
        for (const auto& z : trimmed)
            f.emplace_back(static_cast<long long>(z.real()));
        log_m = std::log(std::abs(trimmed.back()));
        const auto parts = squarefree_parts(f);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i].size() <= 1)
                continue;
            std::vector<cplx> c;
            for (const auto& x : parts[i])
                c.emplace_back(to_double(x));
            log_m += static_cast<double>(i + 1) * log_mahler_by_roots(c, worst);
        }
    } else {
        log_m = log_mahler_by_roots(trimmed, worst);
    }
    if (residual)
        *residual = worst;
    return log_m;
}

MahlerEstimate mahler_univariate(std::span<const cplx> coefficients)
{
    MahlerEstimate est;
    est.value = std::exp(log_mahler_univariate(coefficients, &est.root_tolerance));
    est.method = MahlerMethod::JensenExact;
    return est;
}

MahlerEstimate mahler_univariate(std::span<const double> coefficients)
{
    std::vector<cplx> c(coefficients.begin(), coefficients.end());
    return mahler_univariate(std::span<const cplx>(c));
}

MahlerEstimate mahler_multivariate(const GroupRingElement& q, std::size_t distinguished, std::size_t samples,
                                   std::uint64_t seed)
{
    if (q.is_zero())
        fail(ErrorCode::ZeroPolynomial, "Mahler measure of the zero polynomial");
    const std::size_t rank = q.rank();
    if (distinguished > rank)
        throw std::invalid_argument("distinguished axis out of range");
    if (samples == 0)
        throw std::invalid_argument("sample count must be positive");

    auto exponent = [&](const Monomial& m, std::size_t axis) -> std::int64_t {
        return axis == rank ? m.degree() : m.vector()[axis];
    };

    struct Term {
        std::int64_t axis_exponent;
        std::vector<std::int64_t> others;
        double coeff;
    };
    std::vector<Term> terms;
    std::int64_t kmin = 0, kmax = 0;
    bool first = true;
    double l1 = 0.0;
    std::vector<bool> other_used(rank + 1, false);
    for (const auto& [m, c] : q.terms()) {
        Term t{exponent(m, distinguished), {}, to_double(c)};
        for (std::size_t axis = 0; axis <= rank; ++axis) {
            if (axis == distinguished)
                continue;
            t.others.push_back(exponent(m, axis));
            if (exponent(m, axis) != 0)
                other_used[axis] = true;
        }
        kmin = first ? t.axis_exponent : std::min(kmin, t.axis_exponent);
        kmax = first ? t.axis_exponent : std::max(kmax, t.axis_exponent);
        first = false;
        l1 += std::abs(t.coeff);
        terms.push_back(std::move(t));
    }

    // Unit monomials, and polynomials that only involve the distinguished axis, are exact.
    const bool only_axis = std::none_of(other_used.begin(), other_used.end(), [](bool b) { return b; });
    if (terms.size() == 1 || only_axis) {
        std::vector<cplx> coeffs(static_cast<std::size_t>(kmax - kmin + 1), cplx(0));
        for (const auto& t : terms)
            coeffs[static_cast<std::size_t>(t.axis_exponent - kmin)] += t.coeff;
        return mahler_univariate(std::span<const cplx>(coeffs));
    }

    const std::size_t dims = rank; // number of non-distinguished coordinates
    static constexpr double primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                                        59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};
    std::vector<double> alpha(dims), shift(dims);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t j = 0; j < dims; ++j) {
        const double s = std::sqrt(primes[j % std::size(primes)] + static_cast<double>(j / std::size(primes)));
        alpha[j] = s - std::floor(s);
        shift[j] = unif(rng);
    }

    const std::size_t width = static_cast<std::size_t>(kmax - kmin + 1);
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(8, samples / 2048));
    struct Partial {
        double sum = 0, sum_sq = 0, residual = 0;
        std::size_t used = 0, discarded = 0;
    };
    std::vector<Partial> partials(chunks);

    auto work = [&](std::size_t chunk) {
        Partial& part = partials[chunk];
        const std::size_t begin = samples * chunk / chunks;
        const std::size_t end = samples * (chunk + 1) / chunks;
        std::vector<cplx> coeffs(width);
        std::vector<double> theta(dims);
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = 0; j < dims; ++j) {
                const double x = shift[j] + static_cast<double>(i + 1) * alpha[j];
                theta[j] = x - std::floor(x);
            }
            std::fill(coeffs.begin(), coeffs.end(), cplx(0));
            for (const auto& t : terms) {
                double phase = 0.0;
                for (std::size_t j = 0; j < dims; ++j)
                    phase += static_cast<double>(t.others[j]) * theta[j];
                coeffs[static_cast<std::size_t>(t.axis_exponent - kmin)] +=
                    std::polar(t.coeff, 2.0 * std::numbers::pi * phase);
            }
            double biggest = 0.0;
            for (const auto& c : coeffs)
                biggest = std::max(biggest, std::abs(c));
            if (biggest <= 1e-13 * l1) {
                ++part.discarded;
                continue;
            }
            // Exact cancellation in the top/bottom coefficient is a null set; clip round-off.
            for (auto& c : coeffs)
                if (std::abs(c) <= 1e-14 * l1)
                    c = 0;
            double residual = 0.0;
            const double lm = log_mahler_univariate(std::span<const cplx>(coeffs), &residual);
            part.sum += lm;
            part.sum_sq += lm * lm;
            part.residual = std::max(part.residual, residual);
            ++part.used;
        }
    };

    if (chunks == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        for (std::size_t c = 0; c < chunks; ++c)
            threads.emplace_back(work, c);
    }

    Partial total;
    for (const auto& p : partials) {
        total.sum += p.sum;
        total.sum_sq += p.sum_sq;
        total.used += p.used;
        total.discarded += p.discarded;
        total.residual = std::max(total.residual, p.residual);
    }
    if (static_cast<double>(total.discarded) > 0.01 * static_cast<double>(samples))
        fail(ErrorCode::DegenerateSpecialization,
             std::to_string(total.discarded) + " of " + std::to_string(samples) +
                 " specializations vanished identically; is the distinguished axis present?");

    const double n = static_cast<double>(total.used);
    const double mean = total.sum / n;
    const double var = total.used > 1 ? std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1)) : 0.0;
    MahlerEstimate est;
    est.value = std::exp(mean);
    est.standard_error = est.value * std::sqrt(var / n);
    est.samples = samples;
    est.method = MahlerMethod::IteratedJensen;
    est.root_tolerance = total.residual;
    est.discarded = total.discarded;
    return est;
}

LmSequence lm_sequence(const GroupRingElement& q, std::int64_t upto)
{
    if (upto < 1)
        throw std::invalid_argument("L_m sequence length must be positive");
    const auto log_q = series_log(q, upto);
    std::vector<GroupRingElement> out;
    out.reserve(static_cast<std::size_t>(upto));
    for (std::int64_t m = 1; m <= upto; ++m)
        out.push_back(log_q.element().homogeneous_part(m) * Rational(-m));
    return LmSequence(std::move(out));
}

LmSequence lm_recurrence_oracle(const GroupRingElement& q, std::int64_t upto)
{
    if (upto < 1)
        throw std::invalid_argument("L_m sequence length must be positive");
    if (!detail::has_unit_degree_zero_part(q))
        fail(ErrorCode::ConstantTermNotOne, "recurrence needs degree-zero part equal to 1");
    const std::size_t rank = q.rank();
    const std::int64_t d = q.max_degree();
    std::vector<GroupRingElement> c(static_cast<std::size_t>(d + 1), GroupRingElement(rank));
    for (std::int64_t j = 1; j <= d; ++j)
        c[static_cast<std::size_t>(j)] = q.homogeneous_part(j);

    // L[0] = d; for k >= 1: L_k = -k c_k - sum_{j=1}^{min(k-1,d)} c_j L_{k-j}
    // (Newton's identities; for k >= d this is the order-d linear recurrence).
    std::vector<GroupRingElement> L(static_cast<std::size_t>(upto + 1), GroupRingElement(rank));
    L[0] = GroupRingElement::constant(Rational(d), rank);
    for (std::int64_t k = 1; k <= upto; ++k) {
        GroupRingElement acc(rank);
        if (k <= d)
            acc -= c[static_cast<std::size_t>(k)] * Rational(k);
        for (std::int64_t j = 1; j <= std::min(k - 1, d); ++j)
            acc -= c[static_cast<std::size_t>(j)] * L[static_cast<std::size_t>(k - j)];
        L[static_cast<std::size_t>(k)] = std::move(acc);
    }
    L.erase(L.begin());
    return LmSequence(std::move(L));
}

L1BoundReport check_lemma_l1_bound(const GroupRingElement& q, std::int64_t upto)
{
    for (const auto& [m, c] : q.terms())
        if (!is_integral(c))
            fail(ErrorCode::NonIntegerCoefficients, "coefficient " + to_string(c) + " is not an integer");
    const auto seq = lm_sequence(q, upto);
    L1BoundReport report;
    report.degree = q.max_degree();
    for (std::int64_t m = 1; m <= upto; ++m) {
        report.norms.push_back(ell1_norm(seq[m]));
        if (report.norms.back() > Rational(report.degree) && !report.first_violation)
            report.first_violation = m;
    }
    report.holds_up_to_M = !report.first_violation.has_value();
    return report;
}

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t k = 2; k * k <= n; ++k)
        if (n % k == 0)
            return false;
    return true;
}

std::optional<std::int64_t> find_mq(const GroupRingElement& q, std::int64_t prime,
                                    std::span<const std::int64_t> evaluations, std::int64_t search_cap)
{
    if (q.is_one())
        fail(ErrorCode::NotApplicable, "q = 1 has L_m(q) = 0 for all m");
    if (!detail::has_unit_degree_zero_part(q))
        fail(ErrorCode::ConstantTermNotOne, "find_mq needs degree-zero part equal to 1");
    if (evaluations.size() != q.rank())
        fail(ErrorCode::ValidationError, "expected " + std::to_string(q.rank()) + " evaluation values, got " +
                                             std::to_string(evaluations.size()));
    if (!is_prime(prime))
        fail(ErrorCode::BadPrime, std::to_string(prime) + " is not prime");
    for (auto v : evaluations) {
        if (v == 0)
            fail(ErrorCode::BadPrime, "evaluation values must be nonzero");
        if (v % prime == 0)
            fail(ErrorCode::BadPrime, "prime divides evaluation value " + std::to_string(v));
    }
    const std::int64_t d = q.max_degree();
    if (d % prime == 0)
        fail(ErrorCode::BadPrime, "prime divides the degree " + std::to_string(d));

    // Evaluate each homogeneous coefficient c_j at the integers, then reduce mod p.
    const Integer P(prime);
    auto reduce = [&](const Rational& r) -> std::int64_t {
        const Integer den = boost::multiprecision::denominator(r);
        if (den % P == 0)
            fail(ErrorCode::BadPrime, "prime divides a denominator of the evaluated coefficients");
        Integer num = boost::multiprecision::numerator(r) % P;
        Integer inv = boost::multiprecision::powm(Integer(den % P), P - 2, P);
        Integer res = (num * inv) % P;
        if (res < 0)
            res += P;
        return res.convert_to<std::int64_t>();
    };
    std::vector<Rational> exact(static_cast<std::size_t>(d + 1), Rational(0));
    for (const auto& [m, coeff] : q.terms()) {
        Rational value = coeff;
        for (std::size_t i = 0; i < m.rank(); ++i) {
            const auto e = m.vector()[i];
            const Integer p = boost::multiprecision::pow(Integer(evaluations[i]), static_cast<unsigned>(e >= 0 ? e : -e));
            value *= e >= 0 ? Rational(p) : Rational(1) / Rational(p);
        }
        exact[static_cast<std::size_t>(m.degree())] += value;
    }
    if (exact[static_cast<std::size_t>(d)] == 0)
        fail(ErrorCode::BadPrime, "leading coefficient vanishes under the evaluation");
    std::vector<std::int64_t> c(static_cast<std::size_t>(d + 1), 0);
    for (std::int64_t j = 0; j <= d; ++j)
        c[static_cast<std::size_t>(j)] = reduce(exact[static_cast<std::size_t>(j)]);
    if (c[static_cast<std::size_t>(d)] == 0)
        fail(ErrorCode::BadPrime, "prime divides the evaluated leading coefficient");

    const auto dd = static_cast<std::size_t>(d);
    auto mod = [&](__int128 x) {
        x %= prime;
        return static_cast<std::int64_t>(x < 0 ? x + prime : x);
    };
    // L_0 .. L_{d-1} by Newton's identities.
    std::vector<std::int64_t> initial{d % prime};
    for (std::int64_t k = 1; k < d; ++k) {
        __int128 acc = -static_cast<__int128>(k % prime) * c[static_cast<std::size_t>(k)];
        for (std::int64_t j = 1; j < k; ++j)
            acc -= static_cast<__int128>(c[static_cast<std::size_t>(j)]) * initial[static_cast<std::size_t>(k - j)];
        initial.push_back(mod(acc));
    }
    // From index d on the order-d recurrence holds; c_d being a unit makes the
    // state map invertible, so the sequence is periodic from L_0.
    std::vector<std::int64_t> window = initial;
    for (std::int64_t period = 1; period <= search_cap; ++period) {
        __int128 acc = 0;
        for (std::size_t j = 1; j <= dd; ++j)
            acc -= static_cast<__int128>(c[j]) * window[dd - j];
        window.erase(window.begin());
        window.push_back(mod(acc));
        if (window == initial)
            return period;
    }
    return std::nullopt;
}

} // namespace flowtorus
