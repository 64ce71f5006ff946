#ifndef FLOWTORUS_HULL_HPP
#define FLOWTORUS_HULL_HPP

// Projective currents, homology direction points and their exact convex hull
// with the full face lattice.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flowtorus/digraph.hpp"
#include "flowtorus/exceptional.hpp"
#include "flowtorus/scalar.hpp"

namespace flowtorus {

using RationalVector = Vector<Rational>;
using FaceId = std::size_t;

constexpr std::size_t default_dimension_cap = 8;

/// normal . x <= offset on the affine span; (normal, offset) is a primitive integer vector.
struct Facet {
    RationalVector normal;
    Rational offset;
    std::vector<std::size_t> points; // generating points on the facet
};

struct Face {
    std::vector<std::size_t> points;  // generating point indices, sorted
    std::size_t dimension = 0;
    std::vector<std::size_t> facets;  // facets containing the face; empty for the top face
};

/// Exact convex hull of finitely many rational points with its face lattice.
/// Degenerate inputs are handled inside their affine span.
class DirectionHull {
public:
    DirectionHull() = default;

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t dimension() const noexcept { return dimension_; }
    const std::vector<RationalVector>& points() const noexcept { return points_; }
    const std::vector<Cycle>& cycles() const noexcept { return cycles_; }
    /// Affine span as equations a . x = c.
    const std::vector<std::pair<RationalVector, Rational>>& span_equations() const noexcept { return span_; }
    const std::vector<Facet>& facets() const noexcept { return facets_; }
    /// Nonempty faces in lexicographic order of their point sets; includes the top face.
    const std::vector<Face>& faces() const noexcept { return faces_; }
    const Face& face(FaceId id) const;
    FaceId top_face() const noexcept { return top_; }
    /// Dimension-0 faces.
    std::vector<FaceId> vertex_faces() const;

    std::optional<FaceId> find_face(const std::vector<std::size_t>& sorted_points) const;
    bool contains(const RationalVector& x) const;
    bool in_face(const RationalVector& x, FaceId face) const;
    /// Smallest face containing all of `xs` (each must lie in the hull).
    FaceId smallest_face_containing(std::span<const RationalVector> xs) const;

    friend bool operator==(const DirectionHull& a, const DirectionHull& b);

    friend DirectionHull convex_hull(std::vector<RationalVector> points, std::size_t ambient_dim,
                                     std::size_t dimension_cap);
    friend DirectionHull direction_hull(const Subgraph& g, std::size_t cycle_cap, std::size_t dimension_cap);
    friend DirectionHull assemble_hull(std::size_t ambient_dim, std::vector<RationalVector> points,
                                       std::vector<Cycle> cycles, std::vector<std::pair<RationalVector, Rational>> span,
                                       std::vector<Facet> facets);

private:
    std::size_t ambient_dim_ = 0;
    std::size_t dimension_ = 0;
    std::vector<RationalVector> points_;
    std::vector<Cycle> cycles_;
    std::vector<std::pair<RationalVector, Rational>> span_;
    std::vector<Facet> facets_;
    std::vector<Face> faces_;
    FaceId top_ = 0;

    void build_faces();
};

/// Hull of raw points (no generating cycles).
DirectionHull convex_hull(std::vector<RationalVector> points, std::size_t ambient_dim,
                          std::size_t dimension_cap = default_dimension_cap);

/// Rebuilds the face lattice from stored facets (used when re-reading serialized hulls).
DirectionHull assemble_hull(std::size_t ambient_dim, std::vector<RationalVector> points, std::vector<Cycle> cycles,
                            std::vector<std::pair<RationalVector, Rational>> span, std::vector<Facet> facets);

/// hvec sum over degree sum of a closed edge sequence.
RationalVector direction_point(const TransitionGraph& g, const Cycle& z);

/// Hull of the direction points of all simple cycles of g, one generating point per cycle.
DirectionHull direction_hull(const Subgraph& g, std::size_t cycle_cap = default_cycle_cap,
                             std::size_t dimension_cap = default_dimension_cap);

/// Balanced non-negative edge weights of total mass 1.
struct ProjectiveCurrent {
    std::vector<Rational> weights; // per parent edge
    friend bool operator==(const ProjectiveCurrent&, const ProjectiveCurrent&) = default;
};

bool is_projective_current(const TransitionGraph& g, const ProjectiveCurrent& mu);

/// Normalized counting measure of each simple cycle.
std::vector<ProjectiveCurrent> elementary_currents(const Subgraph& g, std::size_t cycle_cap = default_cycle_cap);

/// Union of the generating cycles whose direction point lies in the face.
Subgraph support_subgraph(const TransitionGraph& g, const DirectionHull& h, FaceId face);

enum class FaceClass { PurelyOrdinary, PurelyExceptional, Mixed };
std::string_view face_class_name(FaceClass c);

FaceClass classify_face(const TransitionGraph& g, const DirectionHull& h, FaceId face,
                        std::span<const ExceptionalCycleRecord> exceptional);

/// Affine image of a cover hull in a base hull and the induced face preimages.
struct ProjectionMap {
    std::vector<RationalVector> images;                // image of each cover generating point
    std::vector<std::optional<FaceId>> preimage;       // per base face: the cover face, if the preimage is one
    std::vector<std::vector<std::size_t>> preimage_points; // per base face: cover points mapping into it
    bool surjective = true;
    std::vector<std::string> warnings;
};

/// `projection` maps cover homology coordinates (columns) to base coordinates (rows).
/// Throws ValidationError if some image leaves the base hull.
ProjectionMap polytope_projection(const DirectionHull& cover, const IntMatrix& projection, const DirectionHull& base);

} // namespace flowtorus

#endif // FLOWTORUS_HULL_HPP
