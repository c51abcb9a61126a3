#include "regracut/embedding.hpp"

#include "regracut/density.hpp"
#include "regracut/error.hpp"
#include "regracut/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace regracut {

double embedding_gamma(double eta, int k)
{
    return std::min(std::pow(eta / 2.0, k - 1), std::pow(1.0 / 6.0, k - 1));
}

EmbeddingConstants embedding_constants(double eta, int k)
{
    if (! (eta > 0.0 && eta < 1.0))
        fail(ErrorKind::BadEta, "eta must lie in (0,1)");
    if (k < 1)
        fail(ErrorKind::ArityMismatch, "k must be at least 1");

    EmbeddingConstants c{eta, k, embedding_gamma(eta, k), 1.0};
    double level_eta = eta;
    for (int level = k; level >= 2; --level) {
        const double gamma = embedding_gamma(level_eta, level);
        const double shrunk = level_eta - gamma;
        c.delta *= std::pow(shrunk, level - 1) * (1.0 - (level - 1) * gamma);
        level_eta = shrunk;
    }
    return c;
}

GammaChain gamma_chain(double eta, int k)
{
    if (k < 2)
        fail(ErrorKind::ArityMismatch, "the chain needs k >= 2");
    const double gamma = embedding_gamma(eta, k);
    GammaChain chain;
    chain.lhs = std::max(2.0, 1.0 / (eta - gamma)) * gamma;
    chain.rhs = embedding_gamma(eta - gamma, k - 1);
    chain.holds = chain.lhs <= chain.rhs + 1e-12;
    return chain;
}

namespace {

template <PairColoring G>
void check_pattern(const G & g, const G & h, const std::vector<VertexSet> & parts)
{
    if (static_cast<int>(parts.size()) != h.vertex_count())
        fail(ErrorKind::ArityMismatch,
            "pattern has " + std::to_string(h.vertex_count()) + " vertices but " + std::to_string(parts.size()) + " parts given");
    if (h.color_count() != g.color_count())
        fail(ErrorKind::ArityMismatch, "pattern and graph use different palettes");
    std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const auto & part : parts)
        for (Vertex v : part) {
            if (v < 0 || v >= g.vertex_count())
                fail(ErrorKind::BadPartition, "vertex " + std::to_string(v) + " out of range");
            if (used[static_cast<std::size_t>(v)]++)
                fail(ErrorKind::OverlappingSets, "vertex " + std::to_string(v) + " lies in two parts");
        }
}

// Depth-first extension of a partial tuple; chosen[0..depth) are fixed.
template <PairColoring G>
std::uint64_t extend(const G & g, const G & h, const std::vector<VertexSet> & parts, std::vector<Vertex> & chosen, int depth)
{
    const int k = static_cast<int>(parts.size());
    if (depth == k)
        return 1;
    std::uint64_t total = 0;
    for (Vertex w : parts[static_cast<std::size_t>(depth)]) {
        bool fits = true;
        for (int i = 0; i < depth && fits; ++i)
            fits = g.ordered_color(chosen[static_cast<std::size_t>(i)], w) == h.ordered_color(i, depth);
        if (! fits)
            continue;
        chosen[static_cast<std::size_t>(depth)] = w;
        total += extend(g, h, parts, chosen, depth + 1);
    }
    return total;
}

} // namespace

template <PairColoring G>
CopyCount count_spanning_copies(const G & g, const G & h, const std::vector<VertexSet> & parts, std::optional<double> eta)
{
    check_pattern(g, h, parts);
    const int k = static_cast<int>(parts.size());
    CopyCount c;
    c.total = 1;
    for (const auto & part : parts)
        c.total *= part.size();

    const auto & first = parts.front();
    std::vector<std::uint64_t> partial(first.size(), 0);
    parallel_for(first.size(), [&](std::size_t t) {
        std::vector<Vertex> chosen(static_cast<std::size_t>(k));
        chosen[0] = first[t];
        partial[t] = extend(g, h, parts, chosen, 1);
    });
    c.count = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});

    if (eta) {
        c.bound = embedding_constants(*eta, k).delta * static_cast<double>(c.total);
        c.satisfied = static_cast<double>(c.count) >= c.bound;
    }
    return c;
}

template <PairColoring G>
VertexSet bad_vertices(
    const G & g, std::span<const Vertex> vk, std::span<const Vertex> vi, ColorIndex rho, double eta, double gamma)
{
    check_disjoint_nonempty(g.vertex_count(), vk, vi);
    const double threshold = (eta - gamma) * static_cast<double>(vi.size());
    VertexSet bad;
    for (Vertex w : vk) {
        int degree = 0;
        for (Vertex x : vi)
            degree += g.ordered_color(w, x) == rho;
        if (degree < threshold - density_tolerance)
            bad.push_back(w);
    }
    return bad;
}

template <PairColoring G>
EmbeddingReport check_embedding_lemma(
    const G & g, const G & h, const std::vector<VertexSet> & parts, double eta, int exact_limit)
{
    check_pattern(g, h, parts);
    const int k = static_cast<int>(parts.size());
    EmbeddingReport report;
    report.constants = embedding_constants(eta, k);
    const double gamma = report.constants.gamma;
    report.densities_ok = report.regularity_certified = report.no_irregular_pair = true;

    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const std::span<const Vertex> a(parts[static_cast<std::size_t>(i)]), b(parts[static_cast<std::size_t>(j)]);
            EmbeddingPairCheck check;
            check.i = i;
            check.j = j;
            check.required = h.ordered_color(i, j);
            check.density = density_vector(g, a, b)[check.required];
            check.density_ok = check.density >= eta - density_tolerance;

            RegularityReport r;
            if (static_cast<int>(std::min(a.size(), b.size())) <= exact_limit)
                r = is_regular_exact(g, a, b, gamma, std::numeric_limits<int>::max());
            else
                r = irregularity_witness_heuristic(g, a, b, gamma);
            check.verdict = r.verdict;
            check.witness = std::move(r.witness);

            report.densities_ok = report.densities_ok && check.density_ok;
            report.regularity_certified = report.regularity_certified && check.verdict == Verdict::regular;
            report.no_irregular_pair = report.no_irregular_pair && check.verdict != Verdict::irregular;
            report.pairs.push_back(std::move(check));
        }
    report.copies = count_spanning_copies(g, h, parts, eta);
    return report;
}

#define REGRACUT_INSTANTIATE(G)                                                                                  \
    template CopyCount count_spanning_copies<G>(                                                                 \
        const G &, const G &, const std::vector<VertexSet> &, std::optional<double>);                           \
    template VertexSet bad_vertices<G>(                                                                          \
        const G &, std::span<const Vertex>, std::span<const Vertex>, ColorIndex, double, double);                \
    template EmbeddingReport check_embedding_lemma<G>(const G &, const G &, const std::vector<VertexSet> &, double, int);

REGRACUT_INSTANTIATE(ColoredGraph)
REGRACUT_INSTANTIATE(Digraph)

#undef REGRACUT_INSTANTIATE

} // namespace regracut
