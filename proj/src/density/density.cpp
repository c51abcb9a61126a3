#include "regracut/density.hpp"

#include "regracut/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace regracut {

double DensityVector::sum() const
{
    return std::accumulate(entries.begin(), entries.end(), 0.0);
}

double linf_distance(const DensityVector & a, const DensityVector & b)
{
    if (a.size() != b.size())
        fail(ErrorKind::DimensionMismatch, "density vectors of different length");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.entries[i] - b.entries[i]));
    return worst;
}

void check_disjoint_nonempty(int n, std::span<const Vertex> a, std::span<const Vertex> b)
{
    if (a.empty() || b.empty())
        fail(ErrorKind::EmptySet, "density needs two nonempty vertex sets");
    std::vector<char> side(static_cast<std::size_t>(n), 0);
    for (Vertex v : a) {
        if (v < 0 || v >= n)
            fail(ErrorKind::BadPartition, "vertex " + std::to_string(v) + " out of range");
        if (side[static_cast<std::size_t>(v)])
            fail(ErrorKind::OverlappingSets, "vertex " + std::to_string(v) + " repeated");
        side[static_cast<std::size_t>(v)] = 1;
    }
    for (Vertex v : b) {
        if (v < 0 || v >= n)
            fail(ErrorKind::BadPartition, "vertex " + std::to_string(v) + " out of range");
        if (side[static_cast<std::size_t>(v)])
            fail(ErrorKind::OverlappingSets, "vertex " + std::to_string(v) + " lies in both sets");
        side[static_cast<std::size_t>(v)] = 2;
    }
}

template <PairColoring G>
DensityVector density_vector(const G & g, std::span<const Vertex> a, std::span<const Vertex> b)
{
    check_disjoint_nonempty(g.vertex_count(), a, b);
    return density_unchecked(g, a, b);
}

template <PairColoring G>
std::vector<DensityVector> block_pair_densities(const G & g, const std::vector<VertexSet> & blocks)
{
    const std::size_t k = blocks.size();
    const std::size_t colors = static_cast<std::size_t>(g.color_count());
    std::vector<int> owner(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < k; ++i)
        for (Vertex v : blocks[i])
            owner[static_cast<std::size_t>(v)] = static_cast<int>(i);

    // counts[(i * k + j) * colors + rho] for i < j, ordered from V_i to V_j.
    std::vector<long long> counts(k * k * colors, 0);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        const int bu = owner[static_cast<std::size_t>(u)];
        if (bu < 0)
            continue;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            const int bv = owner[static_cast<std::size_t>(v)];
            if (bv <= bu)
                continue;
            ++counts[(static_cast<std::size_t>(bu) * k + static_cast<std::size_t>(bv)) * colors
                + static_cast<std::size_t>(g.ordered_color(u, v))];
        }
    }

    std::vector<DensityVector> result;
    result.reserve(k * (k - 1) / 2);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const double total = static_cast<double>(blocks[i].size()) * static_cast<double>(blocks[j].size());
            DensityVector d;
            d.entries.resize(colors);
            for (std::size_t rho = 0; rho < colors; ++rho)
                d.entries[rho] = static_cast<double>(counts[(i * k + j) * colors + rho]) / total;
            result.push_back(std::move(d));
        }
    return result;
}

template <PairColoring G>
double partition_index(const G & g, const Equipartition & p)
{
    if (p.order() < 2)
        fail(ErrorKind::BadPartition, "index needs at least two blocks");
    if (p.vertex_count() != g.vertex_count())
        fail(ErrorKind::BadPartition, "partition and graph have different vertex counts");

    double total = 0.0;
    for (const auto & d : block_pair_densities(g, p.blocks()))
        for (double x : d.entries)
            total += x * x;
    const double k = p.order();
    return total / (k * k);
}

DefectCsResult defect_cs_check(std::span<const double> x, int m)
{
    const int n = static_cast<int>(x.size());
    if (m < 1 || m >= n)
        fail(ErrorKind::BadM, "need 1 <= m < " + std::to_string(n) + ", got " + std::to_string(m));

    double total = 0.0, head = 0.0, squares = 0.0;
    for (int i = 0; i < n; ++i) {
        total += x[static_cast<std::size_t>(i)];
        squares += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        if (i < m)
            head += x[static_cast<std::size_t>(i)];
    }
    DefectCsResult r{};
    r.alpha = head - static_cast<double>(m) / n * total;
    r.lhs = squares;
    r.rhs = total * total / n + r.alpha * r.alpha * n / (static_cast<double>(m) * (n - m));
    r.holds = r.lhs >= r.rhs - density_tolerance;
    return r;
}

template <PairColoring G>
CorollaryCsResult corollary_cs_check(const G & g, std::span<const Vertex> a, std::span<const Vertex> b,
    const std::vector<VertexSet> & a_parts, const std::vector<VertexSet> & b_parts, ColorIndex rho, double eps)
{
    check_disjoint_nonempty(g.vertex_count(), a, b);
    if (rho < 0 || rho >= g.color_count())
        fail(ErrorKind::ColorOutOfRange, "color index " + std::to_string(rho));
    const std::size_t ell = a_parts.size();
    if (ell == 0 || b_parts.size() != ell)
        fail(ErrorKind::UnequalSubBlocks, "A and B need the same positive number of parts");

    auto check_parts = [](std::span<const Vertex> whole, const std::vector<VertexSet> & parts) {
        const std::size_t size = parts.front().size();
        std::vector<Vertex> joined;
        for (const auto & p : parts) {
            if (p.size() != size || p.empty())
                fail(ErrorKind::UnequalSubBlocks, "sub-blocks must all have the same positive size");
            joined.insert(joined.end(), p.begin(), p.end());
        }
        std::vector<Vertex> expected(whole.begin(), whole.end());
        std::sort(joined.begin(), joined.end());
        std::sort(expected.begin(), expected.end());
        if (joined != expected)
            fail(ErrorKind::BadPartition, "sub-blocks do not partition their set");
    };
    check_parts(a, a_parts);
    check_parts(b, b_parts);

    const double base = density_unchecked(g, a, b)[rho];
    CorollaryCsResult r{};
    for (const auto & aj : a_parts)
        for (const auto & bj : b_parts) {
            const double d = density_unchecked(g, std::span<const Vertex>(aj), std::span<const Vertex>(bj))[rho];
            if (std::abs(base - d) >= eps / 2.0 - density_tolerance)
                ++r.premise_count;
            r.lhs += d * d;
            r.sub_density_sum += d;
        }
    const double ell2 = static_cast<double>(ell * ell);
    r.premise_holds = r.premise_count >= eps * ell2 - density_tolerance;
    r.rhs = ell2 * (base * base + eps * eps * eps / 8.0);
    r.conclusion_holds = r.lhs > r.rhs;
    return r;
}

#define REGRACUT_INSTANTIATE(G)                                                                               \
    template DensityVector density_vector<G>(const G &, std::span<const Vertex>, std::span<const Vertex>);    \
    template std::vector<DensityVector> block_pair_densities<G>(const G &, const std::vector<VertexSet> &);   \
    template double partition_index<G>(const G &, const Equipartition &);                                     \
    template CorollaryCsResult corollary_cs_check<G>(const G &, std::span<const Vertex>, std::span<const Vertex>, \
        const std::vector<VertexSet> &, const std::vector<VertexSet> &, ColorIndex, double);

REGRACUT_INSTANTIATE(ColoredGraph)
REGRACUT_INSTANTIATE(Digraph)

#undef REGRACUT_INSTANTIATE

} // namespace regracut
