#include "regracut/regularity.hpp"

#include "regracut/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace regracut {

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::regular: return "regular";
    case Verdict::irregular: return "irregular";
    case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(CertifierMode m)
{
    switch (m) {
    case CertifierMode::exact: return "exact";
    case CertifierMode::heuristic: return "heuristic";
    case CertifierMode::automatic: return "auto";
    }
    return "auto";
}

std::optional<CertifierMode> certifier_from_name(std::string_view name)
{
    if (name == "exact") return CertifierMode::exact;
    if (name == "heuristic") return CertifierMode::heuristic;
    if (name == "auto" || name == "automatic") return CertifierMode::automatic;
    return std::nullopt;
}

int min_subset_size(int total, double gamma)
{
    const double threshold = gamma * total;
    int s = static_cast<int>(std::ceil(threshold - density_tolerance));
    return std::max(1, s);
}

namespace {

    // Running best candidate: larger deviation wins, ties go to larger
    // subsets, then to the first candidate seen.
    struct Best {
        double deviation = -1.0;
        int total_size = 0;

        bool improves(double dev, int size) const
        {
            if (dev > deviation + 1e-12)
                return true;
            return dev > deviation - 1e-12 && size > total_size;
        }
    };

    template <PairColoring G>
    VertexSet pick_extreme(std::span<const Vertex> candidates, int size, bool high, const G & g,
        std::span<const Vertex> against, ColorIndex rho, bool candidates_are_a)
    {
        std::vector<std::pair<long long, Vertex>> scored;
        scored.reserve(candidates.size());
        for (Vertex c : candidates) {
            long long score = 0;
            for (Vertex o : against)
                if ((candidates_are_a ? g.ordered_color(c, o) : g.ordered_color(o, c)) == rho)
                    ++score;
            scored.emplace_back(high ? -score : score, c);
        }
        std::sort(scored.begin(), scored.end());
        VertexSet chosen;
        for (int i = 0; i < size; ++i)
            chosen.push_back(scored[static_cast<std::size_t>(i)].second);
        std::sort(chosen.begin(), chosen.end());
        return chosen;
    }

} // namespace

template <PairColoring G>
RegularityReport is_regular_exact(const G & g, std::span<const Vertex> a, std::span<const Vertex> b, double gamma, int cap)
{
    check_disjoint_nonempty(g.vertex_count(), a, b);
    RegularityReport report;
    report.gamma = gamma;
    if (gamma >= 1.0) {
        report.verdict = Verdict::regular;
        return report;
    }
    if (static_cast<int>(a.size()) > cap || static_cast<int>(b.size()) > cap)
        fail(ErrorKind::TooLargeForExhaustive,
            "exact regularity limited to sets of at most " + std::to_string(cap) + " vertices");

    const DensityVector base = density_unchecked(g, a, b);
    const bool swapped = a.size() > b.size();
    const std::span<const Vertex> xs = swapped ? b : a, ys = swapped ? a : b;
    const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
    const int min_x = min_subset_size(nx, gamma), min_y = min_subset_size(ny, gamma);
    const int colors = g.color_count();

    // color_of[x][y] in the A -> B orientation
    std::vector<ColorIndex> color_of(static_cast<std::size_t>(nx * ny));
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            color_of[static_cast<std::size_t>(i * ny + j)] = swapped
                ? g.ordered_color(ys[static_cast<std::size_t>(j)], xs[static_cast<std::size_t>(i)])
                : g.ordered_color(xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)]);

    Best best;
    std::uint32_t best_mask = 0;
    ColorIndex best_rho = 0;
    int best_s = 0;
    bool best_high = true;

    std::vector<long long> counts(static_cast<std::size_t>(ny * colors));
    std::vector<int> order(static_cast<std::size_t>(ny));
    std::vector<long long> prefix(static_cast<std::size_t>(ny + 1));

    for (std::uint32_t mask = 1; mask < (1u << nx); ++mask) {
        const int sx = std::popcount(mask);
        if (sx < min_x)
            continue;
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < nx; ++i)
            if (mask & (1u << i))
                for (int j = 0; j < ny; ++j)
                    ++counts[static_cast<std::size_t>(j * colors + color_of[static_cast<std::size_t>(i * ny + j)])];

        for (ColorIndex rho = 0; rho < colors; ++rho) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int p, int q) {
                return counts[static_cast<std::size_t>(p * colors + rho)] > counts[static_cast<std::size_t>(q * colors + rho)];
            });
            prefix[0] = 0;
            for (int j = 0; j < ny; ++j)
                prefix[static_cast<std::size_t>(j + 1)] = prefix[static_cast<std::size_t>(j)]
                    + counts[static_cast<std::size_t>(order[static_cast<std::size_t>(j)] * colors + rho)];
            const long long total = prefix[static_cast<std::size_t>(ny)];

            for (int s = min_y; s <= ny; ++s) {
                const double pairs = static_cast<double>(sx) * s;
                const double high = static_cast<double>(prefix[static_cast<std::size_t>(s)]) / pairs;
                const double low = static_cast<double>(total - prefix[static_cast<std::size_t>(ny - s)]) / pairs;
                const double up = high - base[rho], down = base[rho] - low;
                if (best.improves(up, sx + s)) {
                    best = {up, sx + s};
                    best_mask = mask, best_rho = rho, best_s = s, best_high = true;
                }
                if (best.improves(down, sx + s)) {
                    best = {down, sx + s};
                    best_mask = mask, best_rho = rho, best_s = s, best_high = false;
                }
            }
        }
    }

    if (best.deviation <= gamma + density_tolerance) {
        report.verdict = Verdict::regular;
        return report;
    }

    // Rebuild the witness sets from the winning (mask, rho, size, tail).
    VertexSet x_subset, y_subset;
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < nx; ++i)
        if (best_mask & (1u << i)) {
            x_subset.push_back(xs[static_cast<std::size_t>(i)]);
            for (int j = 0; j < ny; ++j)
                ++counts[static_cast<std::size_t>(j * colors + color_of[static_cast<std::size_t>(i * ny + j)])];
        }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int p, int q) {
        return counts[static_cast<std::size_t>(p * colors + best_rho)] > counts[static_cast<std::size_t>(q * colors + best_rho)];
    });
    for (int t = 0; t < best_s; ++t) {
        const int j = best_high ? order[static_cast<std::size_t>(t)] : order[static_cast<std::size_t>(ny - 1 - t)];
        y_subset.push_back(ys[static_cast<std::size_t>(j)]);
    }
    std::sort(x_subset.begin(), x_subset.end());
    std::sort(y_subset.begin(), y_subset.end());

    IrregularityWitness w;
    w.a_prime = swapped ? y_subset : x_subset;
    w.b_prime = swapped ? x_subset : y_subset;
    w.color = best_rho;
    w.deviation = std::abs(density_unchecked(g, std::span<const Vertex>(w.a_prime), std::span<const Vertex>(w.b_prime))[best_rho]
        - base[best_rho]);
    report.verdict = Verdict::irregular;
    report.witness = std::move(w);
    return report;
}

template <PairColoring G>
RegularityReport irregularity_witness_heuristic(const G & g, std::span<const Vertex> a, std::span<const Vertex> b, double gamma)
{
    check_disjoint_nonempty(g.vertex_count(), a, b);
    RegularityReport report;
    report.gamma = gamma;

    const DensityVector base = density_unchecked(g, a, b);
    const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    const int min_a = min_subset_size(na, gamma), min_b = min_subset_size(nb, gamma);
    if (min_a > na || min_b > nb)
        return report; // only A x B itself qualifies: nothing to find

    std::vector<std::pair<int, int>> sizes{{min_a, min_b}};
    const std::pair<int, int> halves{std::max(min_a, (na + 1) / 2), std::max(min_b, (nb + 1) / 2)};
    if (halves != sizes.front())
        sizes.push_back(halves);

    Best best;
    IrregularityWitness best_witness{};
    for (ColorIndex rho = 0; rho < g.color_count(); ++rho)
        for (bool high : {true, false})
            for (auto [sa, sb] : sizes) {
                VertexSet ap = pick_extreme(a, sa, high, g, b, rho, true);
                VertexSet bp;
                for (int round = 0; round < 2; ++round) {
                    bp = pick_extreme(b, sb, high, g, std::span<const Vertex>(ap), rho, false);
                    ap = pick_extreme(a, sa, high, g, std::span<const Vertex>(bp), rho, true);
                }
                bp = pick_extreme(b, sb, high, g, std::span<const Vertex>(ap), rho, false);

                const DensityVector d = density_unchecked(g, std::span<const Vertex>(ap), std::span<const Vertex>(bp));
                ColorIndex worst = 0;
                double dev = -1.0;
                for (ColorIndex c = 0; c < g.color_count(); ++c) {
                    const double x = std::abs(d[c] - base[c]);
                    if (x > dev + 1e-12) {
                        dev = x;
                        worst = c;
                    }
                }
                if (best.improves(dev, sa + sb)) {
                    best = {dev, sa + sb};
                    best_witness = {std::move(ap), std::move(bp), worst, dev};
                }
            }

    if (best.deviation > gamma + density_tolerance) {
        report.verdict = Verdict::irregular;
        report.witness = std::move(best_witness);
    }
    return report;
}

template <PairColoring G>
RegularityReport Certifier::certify(const G & g, std::span<const Vertex> a, std::span<const Vertex> b, double gamma) const
{
    const int limit = mode == CertifierMode::heuristic ? 0
        : mode == CertifierMode::exact                 ? std::max(exact_cap, default_exhaustive_cap)
                                                       : exact_cap;
    if (static_cast<int>(a.size()) <= limit && static_cast<int>(b.size()) <= limit)
        return is_regular_exact(g, a, b, gamma, limit);
    return irregularity_witness_heuristic(g, a, b, gamma);
}

template <PairColoring G>
bool witness_is_valid(const G & g, std::span<const Vertex> a, std::span<const Vertex> b, double gamma,
    const IrregularityWitness & w)
{
    auto subset_of = [](const VertexSet & part, std::span<const Vertex> whole) {
        VertexSet sorted_part = part, sorted_whole(whole.begin(), whole.end());
        std::sort(sorted_part.begin(), sorted_part.end());
        std::sort(sorted_whole.begin(), sorted_whole.end());
        return std::adjacent_find(sorted_part.begin(), sorted_part.end()) == sorted_part.end()
            && std::includes(sorted_whole.begin(), sorted_whole.end(), sorted_part.begin(), sorted_part.end());
    };
    if (w.a_prime.empty() || w.b_prime.empty() || ! subset_of(w.a_prime, a) || ! subset_of(w.b_prime, b))
        return false;
    if (static_cast<double>(w.a_prime.size()) + density_tolerance < gamma * static_cast<double>(a.size())
        || static_cast<double>(w.b_prime.size()) + density_tolerance < gamma * static_cast<double>(b.size()))
        return false;
    if (w.color < 0 || w.color >= g.color_count())
        return false;
    const double whole = density_unchecked(g, a, b)[w.color];
    const double part = density_unchecked(g, std::span<const Vertex>(w.a_prime), std::span<const Vertex>(w.b_prime))[w.color];
    return std::abs(part - whole) > gamma;
}

#define REGRACUT_INSTANTIATE(G)                                                                                      \
    template RegularityReport is_regular_exact<G>(const G &, std::span<const Vertex>, std::span<const Vertex>, double, int); \
    template RegularityReport irregularity_witness_heuristic<G>(                                                     \
        const G &, std::span<const Vertex>, std::span<const Vertex>, double);                                        \
    template RegularityReport Certifier::certify<G>(const G &, std::span<const Vertex>, std::span<const Vertex>, double) const; \
    template bool witness_is_valid<G>(                                                                               \
        const G &, std::span<const Vertex>, std::span<const Vertex>, double, const IrregularityWitness &);

REGRACUT_INSTANTIATE(ColoredGraph)
REGRACUT_INSTANTIATE(Digraph)

#undef REGRACUT_INSTANTIATE

} // namespace regracut
