#ifndef FLOWTORUS_EXCEPTIONAL_HPP
#define FLOWTORUS_EXCEPTIONAL_HPP

#include <span>
#include <string_view>
#include <vector>

#include "flowtorus/digraph.hpp"

namespace flowtorus {

/// Pre-zipping type content of an exceptional periodic trajectory.
enum class TypeContent {
    SideOnly,   // SH or SV
    Mixed,      // KR + KL + SH, or KR + KL + SV
    CornerOnly, // KR + KL
};

std::string_view type_content_name(TypeContent t);
TypeContent parse_type_content(std::string_view s);

struct ExceptionalCycleRecord {
    Cycle cycle;
    TypeContent type = TypeContent::SideOnly;
    int pn = 2; // prong count, >= 2
    int po = 1; // prongs per iteration orbit, divides pn
};

/// Throws BadExceptionalReference: cycles must be vertex-simple cycles of g,
/// mutually edge-disjoint, with pn >= 2 and po | pn.
void validate_records(const TransitionGraph& g, std::span<const ExceptionalCycleRecord> records);

/// The correction polynomial p(a): (1-a), (1-a)^2 or (1-a)(1-a^po)^(pn/po).
GroupRingElement correction_polynomial(const ExceptionalCycleRecord& record, const Monomial& a);

/// Lexicographically least rotation; equal for two traversals of the same cycle.
Cycle canonical_rotation(const Cycle& z);

} // namespace flowtorus

#endif // FLOWTORUS_EXCEPTIONAL_HPP
