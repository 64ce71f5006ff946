#ifndef FLOWTORUS_ZETA_HPP
#define FLOWTORUS_ZETA_HPP

// Signed transfer matrices, reciprocal characteristic polynomials, zeta functions,
// Alexander polynomials and the homology of mapping tori.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flowtorus/digraph.hpp"
#include "flowtorus/exceptional.hpp"
#include "flowtorus/hull.hpp"
#include "flowtorus/laurent.hpp"

namespace flowtorus {

/// Rows and columns follow w.vertices(); parallel edges are summed into one entry.
RingMatrix<Rational> transfer_matrix(const Subgraph& w);

/// det(1 - Phi(W)).
GroupRingElement kappa(const Subgraph& w, std::size_t determinant_cap = default_determinant_cap);

/// exp(-sum_{m <= bound} tr(Phi^m) / m), truncated at degree `bound`.
TruncatedSeries<Rational> kappa_trace_oracle(const Subgraph& w, std::int64_t bound);

struct KappaFactor {
    Subgraph component;
    GroupRingElement factor;
};

/// One factor per strong component; the product is checked against kappa(W).
std::vector<KappaFactor> kappa_product_formula(const Subgraph& w,
                                               std::size_t determinant_cap = default_determinant_cap);

/// kappa(W meet V[E]) for the support subgraph V[E] of the face.
GroupRingElement kappa_face_part(const Subgraph& w, const DirectionHull& h, FaceId face);

/// Terms of `k` whose direction lies in the face, plus the constant term.
GroupRingElement face_filter(const GroupRingElement& k, const DirectionHull& h, FaceId face);

struct ZetaResult {
    TruncatedSeries<Rational> series;
    std::optional<GroupRingElement> exact; // present when the division is exact
    std::vector<std::string> warnings;
};

/// kappa(g) / prod p_gamma(a_gamma). Throws InexactDivision if `require_exact` and the
/// quotient is not a polynomial.
ZetaResult zeta_from_kappa(const TransitionGraph& g, std::span<const ExceptionalCycleRecord> exceptional,
                           std::int64_t bound, bool require_exact = false,
                           std::size_t determinant_cap = default_determinant_cap);

/// Translate so the least term is the zero monomial and make its coefficient positive.
GroupRingElement normalize_unit(const GroupRingElement& p);

/// Delta = zeta (b1 > 1) or zeta (1 - t)^2 (b1 = 1), normalized.
GroupRingElement alexander_polynomial(const TransitionGraph& g, std::span<const ExceptionalCycleRecord> exceptional,
                                      std::int64_t b1);

/// Grading spread of delta equals -chi (b1 > 1) or -chi + 2 (b1 = 1).
bool check_degree_formula(const GroupRingElement& delta, std::int64_t chi, std::int64_t b1);

/// Integer matrix of the first homological action of the monodromy.
struct HomologicalAction {
    IntMatrix matrix;
};

/// Throws ValidationError unless square; warns when det = 0.
std::vector<std::string> check_action(const HomologicalAction& a);

/// Invariant factors of an integer matrix, ascending by divisibility, zeros last.
std::vector<Integer> smith_invariant_factors(const Matrix<Integer>& m);

struct MappingTorusHomology {
    std::int64_t b1 = 1;
    std::vector<Integer> torsion;           // invariant factors > 1
    std::vector<Integer> invariant_factors; // of I - A
};

MappingTorusHomology homology_of_mapping_torus(const HomologicalAction& a);

struct SingleVariableAlexander {
    GroupRingElement polynomial; // det(1 - tA), rank 0
    bool monic = false;          // extreme coefficients are +-1
    bool palindromic = false;    // c_k = c_{d-k}
};

SingleVariableAlexander alexander_single_variable(const HomologicalAction& a);

constexpr std::size_t default_walk_cap = 1'000'000;

/// Primitive closed walks of degree <= bound, each once, as least rotations.
std::vector<Cycle> primitive_cycles(const Subgraph& g, std::int64_t bound, std::size_t walk_cap = default_walk_cap);

/// Product over primitive cycles. Ordinary cycles contribute (1-a)^-1 (1-a^po)^(pn/po) with
/// pn = 2 and po = 1 (sign +1) or 2 (sign -1); recorded exceptional cycles contribute
/// (1 - sign a) / p_gamma(a).
TruncatedSeries<Rational> zeta_product_oracle(const TransitionGraph& g,
                                              std::span<const ExceptionalCycleRecord> exceptional,
                                              std::int64_t bound, std::size_t walk_cap = default_walk_cap);

} // namespace flowtorus

#endif // FLOWTORUS_ZETA_HPP
