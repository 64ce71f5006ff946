#ifndef FLOWTORUS_TESTS_FIXTURES_HPP
#define FLOWTORUS_TESTS_FIXTURES_HPP

#include <vector>

#include "flowtorus/covers.hpp"
#include "flowtorus/digraph.hpp"

namespace fixture {

using flowtorus::Edge;
using flowtorus::TransitionGraph;

inline Edge edge(std::size_t s, std::size_t t, std::vector<std::int64_t> h, std::int64_t w = 1, int sign = 1)
{
    return Edge{s, t, sign, std::move(h), w};
}

/// One vertex, two self-loops labelled (1,0) and (0,1).
inline TransitionGraph figure_eight()
{
    return TransitionGraph(1, 2, {edge(0, 0, {1, 0}), edge(0, 0, {0, 1})});
}

inline TransitionGraph directed_triangle()
{
    return TransitionGraph(3, 1, {edge(0, 1, {0}), edge(1, 2, {0}), edge(2, 0, {1})});
}

/// Complete digraph on three vertices with rank-2 labels. Its five simple cycles have
/// direction points (1,0), (0,1), (-1/2,-1) (the hull vertices) and (1/3,-1/3), (0,1/3).
///   edges: 0:0->1 1:1->0 2:1->2 3:2->1 4:0->2 5:2->0
inline TransitionGraph complete3()
{
    return TransitionGraph(3, 2,
                           {edge(0, 1, {1, 0}), edge(1, 0, {1, 0}), edge(1, 2, {0, 1}), edge(2, 1, {0, 1}),
                            edge(0, 2, {-1, 0}), edge(2, 0, {0, -2})});
}

/// Generator i -> i + 1 of Z/k acting on {0..k-1}.
inline flowtorus::Permutation rotation(std::size_t k, std::size_t shift = 1)
{
    flowtorus::Permutation p(k);
    for (std::size_t i = 0; i < k; ++i)
        p[i] = (i + shift) % k;
    return p;
}

/// Cyclic voltages: edge e gets rotation by shifts[e] in Z/k.
inline flowtorus::CoverSpec cyclic_spec(std::size_t k, const std::vector<std::size_t>& shifts,
                                        flowtorus::CoverLabels labels = flowtorus::CoverLabels::Pullback)
{
    flowtorus::CoverSpec spec;
    spec.generators = {rotation(k)};
    for (auto s : shifts)
        spec.voltage.push_back(rotation(k, s));
    spec.labels = labels;
    return spec;
}

/// Triangle 0 -> 1 -> 2 -> 0 with loops at 0 and 1, rank 1.
inline TransitionGraph triangle_with_loops()
{
    return TransitionGraph(3, 1, {edge(0, 1, {0}), edge(1, 2, {0}), edge(2, 0, {1}), edge(0, 0, {1}), edge(1, 1, {0})});
}

struct CoverCase {
    TransitionGraph base;
    flowtorus::CoverSpec spec;
};

/// Ten Z/k voltage covers over small recurrent bases.
inline std::vector<CoverCase> cyclic_cover_cases()
{
    const TransitionGraph theta(2, 2, {edge(0, 1, {1, 0}), edge(1, 0, {0, 0}), edge(0, 1, {0, 1}), edge(1, 1, {1, 1}, 2)});
    const TransitionGraph signed_pair(2, 1, {edge(0, 1, {1}, 1, -1), edge(1, 0, {0}, 2), edge(0, 0, {-1}), edge(1, 1, {2}, 1, -1)});
    return {
        {figure_eight(), cyclic_spec(2, {1, 0})},
        {figure_eight(), cyclic_spec(3, {1, 2})},
        {directed_triangle(), cyclic_spec(3, {0, 0, 1})},
        {complete3(), cyclic_spec(2, {1, 0, 0, 0, 0, 1})},
        {complete3(), cyclic_spec(3, {1, 1, 0, 2, 0, 0})},
        {triangle_with_loops(), cyclic_spec(2, {0, 0, 0, 1, 1})},
        {triangle_with_loops(), cyclic_spec(4, {1, 0, 0, 2, 3})},
        {theta, cyclic_spec(2, {1, 1, 0, 1})},
        {theta, cyclic_spec(5, {0, 1, 0, 2})},
        {signed_pair, cyclic_spec(3, {1, 0, 1, 0})},
    };
}

/// Z/2 cover of triangle_with_loops with abstract labels. Its five simple cycles are hull
/// vertices in three disjoint orbits: the swapped pair of lifted triangles, the invariant
/// 2-cycle over the loop at 0, and the swapped pair of lifted loops at 1.
inline flowtorus::DerivedCover criterion_cover()
{
    static const TransitionGraph base = triangle_with_loops();
    return flowtorus::derived_cover(base, cyclic_spec(2, {0, 0, 0, 1, 0}, flowtorus::CoverLabels::Abstract));
}

} // namespace fixture

#endif // FLOWTORUS_TESTS_FIXTURES_HPP
