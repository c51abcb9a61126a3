#pragma once

#include "regracut/decomposition.hpp"
#include "regracut/graph.hpp"
#include "regracut/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace regracut {

/// Number of unordered pairs whose color or state differs. Throws
/// SizeMismatch or KindMismatch.
template <PairColoring G>
long long edit_distance(const G & a, const G & b);

/// An injective map V(H) -> V(G) with every ordered color preserved.
template <PairColoring G>
std::optional<std::vector<Vertex>> find_induced_copy(const G & g, const G & h);

/// True when no member of the family occurs as an induced copy.
template <PairColoring G>
bool avoids_family(const G & g, const ForbiddenFamily<G> & family);

inline constexpr int default_rgraph_exact_cap = 7;
inline constexpr int default_digraph_exact_cap = 6;

struct DistanceOptions {
    /// Largest n accepted; 0 picks 7 for r-graphs and 6 for digraphs.
    int cap = 0;
    /// States a digraph pair may be recolored to.
    PaletteId palette = PaletteId::P0;
};

template <PairColoring G>
struct DistanceResult {
    long long distance = 0;
    G witness;
};

/// Exact distance to the property of avoiding every member of the family.
/// Iterative deepening on the budget: find an induced copy, branch on each
/// of its unfixed pairs and every other allowed color, fixing the pairs
/// branched on before it as unchanged. Throws TooLargeForExact,
/// EmptyFamily, KindMismatch, or EmptyProperty when no graph of this
/// size avoids the family.
template <PairColoring G>
DistanceResult<G> distance_to_property(const G & g, const ForbiddenFamily<G> & family, const DistanceOptions & options = {});

/// How vertices of G are sent to type vertices.
struct FiberAssignment {
    enum class Mode { explicit_map, balanced, best_of };

    Mode mode = Mode::balanced;
    std::vector<int> map;
    int trials = 1;
    std::uint64_t seed = 0;

    static FiberAssignment explicit_of(std::vector<int> map) { return {Mode::explicit_map, std::move(map), 1, 0}; }
    /// v -> v mod k.
    static FiberAssignment balanced() { return {Mode::balanced, {}, 1, 0}; }
    /// `trials` seeded shuffles, each dealt round-robin; the cheapest wins.
    static FiberAssignment best_of(int trials, std::uint64_t seed) { return {Mode::best_of, {}, trials, seed}; }
};

template <PairColoring G>
struct FitResult {
    G fitted;
    long long cost = 0;
    std::vector<int> map;
};

/// Recolors G to conform to K under the assignment, changing a pair only
/// when its color is not allowed and then to the lowest allowed color.
/// Inside a dir-type fiber with one arrow allowed every oriented pair is
/// turned to point from the lower to the higher vertex. Throws
/// KindMismatch, BadPartition for a malformed explicit map.
template <PairColoring G>
FitResult<G> fit_to_type(const G & g, const TypeGraph & k, const FiberAssignment & assignment);

/// The five bracketed error terms of the finite-n lower bound for an
/// order-k partition, and their sum.
struct ErrorTerms {
    double uneven = 0.0;
    double diagonal = 0.0;
    double fluctuation = 0.0;
    double color_slack = 0.0;
    double irregular = 0.0;
    double total = 0.0;
};

ErrorTerms finite_error_terms(int n, int k, int r, double eps);

struct LowerBound {
    std::size_t best_index = 0;
    double f = 0.0;
    /// f * C(n, 2).
    double value = 0.0;
    std::optional<ErrorTerms> error_terms;
};

/// Maximizes f_K(p) over the family. Throws EmptyFamily.
LowerBound lower_bound_fk(const ColorDistribution & p, const TypeFamily & family, int n, std::optional<double> eps = std::nullopt);
LowerBound lower_bound_fk(const ArrowDistribution & pq, const TypeFamily & family, int n, std::optional<double> eps = std::nullopt);

struct TypeConstruction {
    /// Set when some self-label assignment keeps every pattern out.
    std::optional<TypeGraph> type;
    /// Edge labels alone, self labels left empty.
    TypeGraph skeleton;
    int irregular_pairs = 0;
    int fallback_labels = 0;
    long long assignments_tried = 0;
    std::string failure;
};

/// Edge labels: colors of density at least delta between the selected
/// clusters (highest-density color when none reaches delta). Self labels:
/// proper nonempty sets tried per vertex in order of size, then of internal
/// density mass, until no pattern embeds. Throws SearchSpaceTooLarge when
/// more than `cap` self-label assignments exist.
template <PairColoring G>
TypeConstruction construct_type_from_partition(const G & g, const std::vector<VertexSet> & clusters, double delta,
    const EFunction & e, const ForbiddenFamily<G> & family, const Certifier & certifier = {},
    long long cap = default_enumeration_cap);

} // namespace regracut
