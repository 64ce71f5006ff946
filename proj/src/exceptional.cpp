#include "flowtorus/exceptional.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace flowtorus {

std::string_view type_content_name(TypeContent t)
{
    switch (t) {
    case TypeContent::SideOnly: return "SH_or_SV";
    case TypeContent::Mixed: return "mixed";
    case TypeContent::CornerOnly: return "corner";
    }
    return "?";
}

TypeContent parse_type_content(std::string_view s)
{
    if (s == "SH_or_SV" || s == "SH" || s == "SV")
        return TypeContent::SideOnly;
    if (s == "mixed")
        return TypeContent::Mixed;
    if (s == "corner")
        return TypeContent::CornerOnly;
    throw std::invalid_argument("unknown type content '" + std::string(s) + "'");
}

void validate_records(const TransitionGraph& g, std::span<const ExceptionalCycleRecord> records)
{
    std::set<EdgeId> used;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const std::string tag = "exceptional record " + std::to_string(i);
        try {
            check_cycle(g, r.cycle.edges);
        } catch (const Error& e) {
            fail(ErrorCode::BadExceptionalReference, tag + ": " + e.what());
        }
        if (!is_vertex_simple(g, r.cycle))
            fail(ErrorCode::BadExceptionalReference, tag + ": cycle is not embedded");
        if (r.pn < 2)
            fail(ErrorCode::BadExceptionalReference, tag + ": pn must be >= 2");
        if (r.po < 1 || r.pn % r.po != 0)
            fail(ErrorCode::BadExceptionalReference, tag + ": po must be a positive divisor of pn");
        for (EdgeId e : r.cycle.edges)
            if (!used.insert(e).second)
                fail(ErrorCode::BadExceptionalReference, tag + ": shares edge " + std::to_string(e) +
                                                             " with another record");
    }
}

GroupRingElement correction_polynomial(const ExceptionalCycleRecord& record, const Monomial& a)
{
    const auto one = GroupRingElement::one(a.rank());
    const auto one_minus_a = one - GroupRingElement::monomial(a);
    switch (record.type) {
    case TypeContent::SideOnly:
        return one_minus_a;
    case TypeContent::Mixed:
        return one_minus_a * one_minus_a;
    case TypeContent::CornerOnly: {
        const auto one_minus_apo = one - GroupRingElement::monomial(a.pow(record.po));
        return one_minus_a * power(one_minus_apo, static_cast<unsigned>(record.pn / record.po));
    }
    }
    return one;
}

Cycle canonical_rotation(const Cycle& z)
{
    Cycle best = z;
    const auto n = z.edges.size();
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<EdgeId> rot(n);
        for (std::size_t i = 0; i < n; ++i)
            rot[i] = z.edges[(i + k) % n];
        if (rot < best.edges)
            best.edges = std::move(rot);
    }
    return best;
}

} // namespace flowtorus
