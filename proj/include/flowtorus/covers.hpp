#ifndef FLOWTORUS_COVERS_HPP
#define FLOWTORUS_COVERS_HPP

// Regular covers by permutation voltages, deck actions, face orbits, dominance and the
// disjoint-dominant-orbit criterion.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flowtorus/digraph.hpp"
#include "flowtorus/exceptional.hpp"
#include "flowtorus/hull.hpp"
#include "flowtorus/mahler.hpp"

namespace flowtorus {

/// Images of 0..d-1.
using Permutation = std::vector<std::size_t>;

constexpr std::size_t default_group_cap = 5040;

/// Finite permutation group closed from its generators. Element 0 is the identity;
/// the product a * b applies b first.
class PermutationGroup {
public:
    PermutationGroup() = default;

    /// Throws ValidationError on malformed permutations, GroupCapExceeded past `cap` elements.
    static PermutationGroup generate(std::vector<Permutation> generators, std::size_t degree,
                                     std::size_t cap = default_group_cap);

    std::size_t degree() const noexcept { return degree_; }
    std::size_t order() const noexcept { return elements_.size(); }
    const Permutation& element(std::size_t i) const { return elements_.at(i); }
    const std::vector<Permutation>& generators() const noexcept { return generators_; }
    std::optional<std::size_t> index_of(const Permutation& p) const;
    std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a][b]; }

private:
    std::size_t degree_ = 1;
    std::vector<Permutation> generators_;
    std::vector<Permutation> elements_;
    std::map<Permutation, std::size_t> index_;
    std::vector<std::vector<std::size_t>> table_;
};

enum class CoverLabels {
    Abstract, // fundamental-cycle coordinates of the derived graph, weights kept
    Pullback  // each lifted edge keeps the hvec of its base edge
};

struct CoverSpec {
    std::vector<Permutation> generators;
    std::vector<Permutation> voltage; // per base edge
    CoverLabels labels = CoverLabels::Abstract;
};

/// One graph automorphism together with its action on homology classes.
struct DeckElement {
    std::vector<VertexId> vertex_perm;
    std::vector<EdgeId> edge_perm;
    IntMatrix matrix; // b x b; class(g . z) = matrix * class(z) for every cycle z
};

struct DeckAction {
    std::vector<DeckElement> elements;
};

/// Closes `generators` under composition and validates the result. Throws ValidationError
/// when an element is not a sign- and weight-preserving automorphism, is not equivariant on
/// cycle classes, or when two words for the same automorphism disagree on homology.
DeckAction generate_action(const TransitionGraph& g, std::vector<DeckElement> generators,
                           std::size_t cap = default_group_cap);

/// Same checks on a complete list of elements.
void validate_action(const TransitionGraph& g, const DeckAction& action);

struct DerivedCover {
    PermutationGroup group;
    TransitionGraph graph;                // vertex (v, g) has id v * |G| + g; edge (e, g) has id e * |G| + g
    DeckAction action;                    // left multiplication, in group element order
    std::vector<VertexId> vertex_projection;
    std::vector<EdgeId> edge_projection;
    IntMatrix homology_projection;        // base rank x cover rank
    std::size_t component_count = 0;
    std::vector<std::string> warnings;    // DisconnectedCoverWarning
};

/// Lift (v, g) -> (w, g * voltage(e)) of every base edge e: v -> w.
DerivedCover derived_cover(const TransitionGraph& base, const CoverSpec& spec, std::size_t group_cap = default_group_cap);

/// Projecting g . x equals projecting x for every vertex, edge and element.
bool deck_commutes_with_projection(const DerivedCover& cover);

struct FacePreimage {
    FaceId base_face = 0;
    std::optional<FaceId> cover_face;
    std::size_t base_codimension = 0;
    std::optional<std::size_t> cover_codimension;
};

struct LiftedProjection {
    ProjectionMap map;
    std::vector<FacePreimage> table; // one row per base face
    bool consistent = true;          // every preimage is a face of unchanged codimension
    std::vector<std::string> inconsistencies;
};

/// Throws InconsistentProjection when `strict` and some preimage is missing, is not a face,
/// or changes codimension.
LiftedProjection lifted_hull_projection(const DirectionHull& base, const DirectionHull& cover,
                                        const IntMatrix& projection, bool strict = true);

struct FaceOrbit {
    std::vector<FaceId> faces; // sorted
    bool disjoint = true;      // member faces share no point
};

/// Orbits of the face lattice under the induced linear action, ordered by least member.
/// Throws ActionDoesNotPreserveHull if some element moves a generating point out of the
/// hull or does not permute the faces.
std::vector<FaceOrbit> gamma_orbits_of_faces(const DirectionHull& h, const DeckAction& action);

struct DominanceReport {
    FaceId face = 0;
    Subgraph support;
    FaceClass classification = FaceClass::PurelyOrdinary;
    GroupRingElement zeta_face_part;
    bool dominant = false; // zeta_face_part != 1
};

/// zeta[E] = kappa(support) divided exactly by the correction polynomials of the recorded
/// cycles carried by the support. Throws InexactDivision.
DominanceReport dominance_report(const TransitionGraph& g, const DirectionHull& h, FaceId face,
                                 std::span<const ExceptionalCycleRecord> exceptional);

struct CriterionOptions {
    std::optional<std::int64_t> b1;   // defaults to the label rank plus one (the t direction)
    std::size_t samples = 20'000;
    std::uint64_t seed = 1;
};

struct CriterionReport {
    std::vector<FaceOrbit> orbits;
    std::vector<DominanceReport> reports;  // per face
    std::vector<std::size_t> selected;     // orbit indices, mutually disjoint, dominant
    std::int64_t count = 0;
    std::int64_t threshold = 0;            // -chi + 1
    bool pass = false;
    std::optional<GroupRingElement> delta;
    std::optional<MahlerEstimate> mahler;
    bool mahler_exceeds_one = false;       // estimate - 3 * standard error > 1
};

/// Greedy selection of disjoint invariant dominant orbit unions, lowest dimension first.
CriterionReport criterion_check(const TransitionGraph& g, const DirectionHull& h, const DeckAction& action,
                                std::span<const ExceptionalCycleRecord> exceptional, std::int64_t chi,
                                const CriterionOptions& options = {});

/// V_n together with the face E_n of the hull of V_{n-1} it is drawn from (ignored at n = 0).
struct ClusterLink {
    Subgraph subgraph;
    FaceId face = 0;
};

struct ClusterChainReport {
    bool holds = false;
    std::vector<std::string> diagnostics;
    std::vector<GroupRingElement> face_parts; // kappa(V_{n-1})[E_n], n = 1..d
};

/// Checks the subordination conditions and that every kappa(V_{n-1})[E_n] differs from 1.
/// Throws ChainNotNested, NotIrreducible.
ClusterChainReport cluster_sequence_check(const TransitionGraph& g, std::span<const ClusterLink> chain);

} // namespace flowtorus

#endif // FLOWTORUS_COVERS_HPP
