#include "regracut/sampling.hpp"

#include "regracut/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace regracut {

ColorDistribution::ColorDistribution(std::vector<double> p) :
    p_(std::move(p))
{
    if (p_.size() < 2)
        fail(ErrorKind::BadDistribution, "need at least two colors");
    for (double x : p_)
        if (! (x >= 0.0) || ! std::isfinite(x))
            fail(ErrorKind::BadDistribution, "negative or non-finite probability");
    const double total = std::accumulate(p_.begin(), p_.end(), 0.0);
    if (std::abs(total - 1.0) > probability_tolerance)
        fail(ErrorKind::BadDistribution, "probabilities sum to " + std::to_string(total));
}

ArrowDistribution::ArrowDistribution(double p, double q) :
    p_(p), q_(q)
{
    if (! (p >= 0.0) || ! (q >= 0.0) || ! std::isfinite(p) || ! std::isfinite(q))
        fail(ErrorKind::BadDistribution, "p and q must be nonnegative");
    if (p + 2.0 * q > 1.0 + probability_tolerance)
        fail(ErrorKind::BadDistribution, "p + 2q exceeds 1");
}

bool ArrowDistribution::fits(const Palette & palette) const
{
    constexpr double tol = probability_tolerance;
    switch (palette.id) {
    case PaletteId::P0: return true;
    case PaletteId::P1: return std::abs(p_ + 2.0 * q_ - 1.0) <= tol;
    case PaletteId::P2: return std::abs(p_) <= tol && q_ <= 0.5 + tol;
    case PaletteId::P3: return std::abs(q_) <= tol;
    case PaletteId::P4: return std::abs(p_) <= tol && std::abs(q_ - 0.5) <= tol;
    }
    return false;
}

ColoredGraph sample_rgraph(int n, const ColorDistribution & p, std::uint64_t seed)
{
    ColoredGraph g = ColoredGraph::constant(n, p.r(), 1);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<int> pick(p.values().begin(), p.values().end());
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            g.set_color(u, v, pick(rng) + 1);
    return g;
}

Digraph sample_digraph(int n, const ArrowDistribution & pq, std::uint64_t seed)
{
    Digraph g = Digraph::constant(n, Arrow::none);
    std::mt19937_64 rng(seed);
    // Weights in Arrow order: none, bi, back, fwd.
    const double weights[] = {std::max(0.0, pq.none()), pq.p(), pq.q(), pq.q()};
    std::discrete_distribution<int> pick(std::begin(weights), std::end(weights));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            g.set_arrow(u, v, static_cast<Arrow>(pick(rng)));
    return g;
}

} // namespace regracut
