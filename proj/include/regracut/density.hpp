#pragma once

#include "regracut/graph.hpp"
#include "regracut/partition.hpp"

#include <span>
#include <vector>

namespace regracut {

/// Tolerance applied to every inequality check on densities and sums of
/// squared densities.
inline constexpr double density_tolerance = 1e-9;

/// Per-color densities of an ordered pair of disjoint vertex sets, indexed
/// by ColorIndex (r entries for r-graphs, four for digraphs).
struct DensityVector {
    std::vector<double> entries;

    double operator[](ColorIndex c) const { return entries[static_cast<std::size_t>(c)]; }
    std::size_t size() const { return entries.size(); }
    double sum() const;
};

double linf_distance(const DensityVector & a, const DensityVector & b);

/// Number of (a, b) in A x B with ordered color c(a, b) = rho, per rho.
/// No validation.
template <PairColoring G>
std::vector<long long> color_counts(const G & g, std::span<const Vertex> a, std::span<const Vertex> b)
{
    std::vector<long long> counts(static_cast<std::size_t>(g.color_count()), 0);
    for (Vertex x : a)
        for (Vertex y : b)
            ++counts[static_cast<std::size_t>(g.ordered_color(x, y))];
    return counts;
}

/// Density vector without validation; A and B must be nonempty.
template <PairColoring G>
DensityVector density_unchecked(const G & g, std::span<const Vertex> a, std::span<const Vertex> b)
{
    const auto counts = color_counts(g, a, b);
    const double total = static_cast<double>(a.size()) * static_cast<double>(b.size());
    DensityVector d;
    d.entries.reserve(counts.size());
    for (auto c : counts)
        d.entries.push_back(static_cast<double>(c) / total);
    return d;
}

/// d_rho(A,B) = e_rho(A,B) / (|A||B|). For digraphs the counts are taken on
/// ordered pairs from A to B, so d_fwd(A,B) = d_back(B,A).
/// Throws EmptySet or OverlappingSets.
template <PairColoring G>
DensityVector density_vector(const G & g, std::span<const Vertex> a, std::span<const Vertex> b);

/// Throws EmptySet, OverlappingSets or BadPartition (vertex out of range).
void check_disjoint_nonempty(int n, std::span<const Vertex> a, std::span<const Vertex> b);

/// The potential (1/k^2) sum_rho sum_{i<i'} d_rho(V_i,V_i')^2. Throws
/// BadPartition when the partition has fewer than two blocks or does not
/// match the graph.
template <PairColoring G>
double partition_index(const G & g, const Equipartition & p);

/// All block-pair density vectors d(V_i, V_j) for i < j, in row-major
/// order of (i, j). Computed in one pass over the vertex pairs.
template <PairColoring G>
std::vector<DensityVector> block_pair_densities(const G & g, const std::vector<VertexSet> & blocks);

struct DefectCsResult {
    double alpha;
    double lhs;
    double rhs;
    bool holds;
};

/// Evaluates both sides of the defect Cauchy-Schwarz inequality for the
/// split after the first m terms. Throws BadM unless 1 <= m < |x|.
DefectCsResult defect_cs_check(std::span<const double> x, int m);

struct CorollaryCsResult {
    int premise_count;     // sub-pairs with |d(A,B) - d(A_j,B_j')| >= eps/2
    bool premise_holds;    // premise_count >= eps * ell^2
    double lhs;            // sum of d_rho(A_j,B_j')^2
    double rhs;            // ell^2 (d_rho(A,B)^2 + eps^3 / 8)
    bool conclusion_holds; // lhs > rhs
    double sub_density_sum; // sum of d_rho(A_j,B_j'), equals ell^2 d_rho(A,B)
};

/// Throws UnequalSubBlocks when the parts are not ell equal-sized sets on
/// each side, BadPartition when they do not partition A and B.
template <PairColoring G>
CorollaryCsResult corollary_cs_check(const G & g, std::span<const Vertex> a, std::span<const Vertex> b,
    const std::vector<VertexSet> & a_parts, const std::vector<VertexSet> & b_parts, ColorIndex rho, double eps);

} // namespace regracut
