// One PASS/FAIL line per acceptance criterion; exit status 1 when any fails.

#include "regracut/decomposition.hpp"
#include "regracut/density.hpp"
#include "regracut/edit.hpp"
#include "regracut/embedding.hpp"
#include "regracut/regularity.hpp"
#include "regracut/sampling.hpp"
#include "regracut/types.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

using namespace regracut;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char * name, double budget_seconds, const std::function<Outcome()> & body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception & e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > budget_seconds) {
        o.pass = false;
        o.detail += " over time budget";
    }
    failures += ! o.pass;
    std::printf("%s criterion %d: %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", id, name, seconds, o.detail.empty() ? "" : " ",
        o.detail.c_str());
    std::fflush(stdout);
}

std::vector<double> random_distribution(int r, std::mt19937_64 & rng)
{
    std::vector<double> p(static_cast<std::size_t>(r));
    double s = 0.0;
    for (auto & x : p)
        s += x = static_cast<double>(rng() % 1000 + 1);
    for (auto & x : p)
        x /= s;
    return p;
}

// Densities by direct counting, one entry per ordered color.
template <typename G>
std::vector<double> count_densities(const G & g, const VertexSet & a, const VertexSet & b)
{
    std::vector<double> d(static_cast<std::size_t>(g.color_count()), 0.0);
    for (Vertex u : a)
        for (Vertex v : b)
            d[static_cast<std::size_t>(g.ordered_color(u, v))] += 1.0;
    for (auto & x : d)
        x /= static_cast<double>(a.size() * b.size());
    return d;
}

double max_gap(const std::vector<double> & x, const std::vector<double> & y)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        worst = std::max(worst, std::abs(x[i] - y[i]));
    return worst;
}

Outcome density_normalization()
{
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const int r = 2 + t % 3, n = 2 + static_cast<int>(rng() % 59);
        auto g = sample_rgraph(n, ColorDistribution(random_distribution(r, rng)), rng());
        VertexSet perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const std::size_t sa = 1 + rng() % static_cast<std::size_t>(n - 1);
        const std::size_t sb = 1 + rng() % (static_cast<std::size_t>(n) - sa);
        VertexSet a(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(sa));
        VertexSet b(perm.begin() + static_cast<std::ptrdiff_t>(sa), perm.begin() + static_cast<std::ptrdiff_t>(sa + sb));
        const auto d = density_vector(g, std::span<const Vertex>(a), std::span<const Vertex>(b));
        worst = std::max(worst, std::abs(std::accumulate(d.entries.begin(), d.entries.end(), 0.0) - 1.0));
    }
    std::ostringstream s;
    s << "max |sum - 1| = " << worst;
    return {worst <= 1e-12, s.str()};
}

Outcome index_bounds()
{
    std::mt19937_64 rng(202);
    int bad_range = 0, bad_monotone = 0;
    for (int t = 0; t < 500; ++t) {
        const int r = 2 + t % 3, n = 2 + static_cast<int>(rng() % 59);
        const int k = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
        auto g = sample_rgraph(n, ColorDistribution(random_distribution(r, rng)), rng());
        const double ind = partition_index(g, equipartition(n, k, rng()));
        bad_range += ind < 0.0 || ind > 0.5;
    }
    int refinements = 0;
    while (refinements < 100) {
        const int k = 2 + static_cast<int>(rng() % 5), ell = 2 + static_cast<int>(rng() % 3);
        const int n = k * ell * (1 + static_cast<int>(rng() % 3));
        if (n > 24)
            continue;
        ++refinements;
        auto g = sample_rgraph(n, ColorDistribution(random_distribution(2 + refinements % 3, rng)), rng());
        const auto a = equipartition(n, k, rng());
        const auto b = refine_equipartition(a, ell, rng());
        bad_monotone += partition_index(g, b) < partition_index(g, a) - 1e-9;
    }
    std::ostringstream s;
    s << bad_range << " out of range, " << bad_monotone << " refinements lost index";
    return {bad_range == 0 && bad_monotone == 0, s.str()};
}

Outcome defect_cauchy_schwarz()
{
    std::mt19937_64 rng(303);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const int len = 2 + static_cast<int>(rng() % 49);
        std::vector<double> x(static_cast<std::size_t>(len));
        for (auto & v : x)
            v = static_cast<double>(rng() % 10001) / 1000.0 - 5.0;
        const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(len - 1));
        bad += ! defect_cs_check(std::span<const double>(x), m).holds;
    }
    const std::vector<double> ones{1, 1, 1, 1}, two{2, 0};
    const auto e1 = defect_cs_check(std::span<const double>(ones), 2);
    const auto e2 = defect_cs_check(std::span<const double>(two), 1);
    const bool examples = e1.holds && std::abs(e1.lhs - e1.rhs) < 1e-12 && e2.holds && std::abs(e2.lhs - e2.rhs) < 1e-12;
    std::ostringstream s;
    s << bad << " random failures, hand examples " << (examples ? "equal" : "not equal");
    return {bad == 0 && examples, s.str()};
}

Outcome regularity_oracle()
{
    std::mt19937_64 rng(404);
    int invalid = 0, contradictions = 0, witnesses = 0;
    for (int t = 0; t < 200; ++t) {
        const int side = 5 + t % 2, r = 2 + t % 2;
        auto g = sample_rgraph(2 * side + 3, ColorDistribution(random_distribution(r, rng)), rng());
        VertexSet a(static_cast<std::size_t>(side)), b(static_cast<std::size_t>(side));
        std::iota(a.begin(), a.end(), 0);
        std::iota(b.begin(), b.end(), side);
        const double gamma = 0.1 + static_cast<double>(rng() % 40) / 100.0;
        const std::span<const Vertex> sa(a), sb(b);
        const auto guess = irregularity_witness_heuristic(g, sa, sb, gamma);
        const auto exact = is_regular_exact(g, sa, sb, gamma);
        if (guess.verdict == Verdict::irregular) {
            ++witnesses;
            const auto & w = *guess.witness;
            const double dev = max_gap(count_densities(g, w.a_prime, w.b_prime), count_densities(g, a, b));
            const bool sizes = static_cast<double>(w.a_prime.size()) >= gamma * side - 1e-9
                && static_cast<double>(w.b_prime.size()) >= gamma * side - 1e-9;
            invalid += ! (sizes && dev > gamma);
            contradictions += exact.verdict == Verdict::regular;
        }
    }
    std::ostringstream s;
    s << witnesses << " witnesses, " << invalid << " invalid, " << contradictions << " contradict the exact check";
    return {invalid == 0 && contradictions == 0, s.str()};
}

Outcome embedding_constants_check()
{
    const bool base = std::abs(embedding_constants(0.5, 2).gamma - 1.0 / 6.0) <= 1e-12;
    int bad = 0;
    for (int e = 1; e <= 9; ++e)
        for (int k = 2; k <= 6; ++k) {
            const double eta = e / 10.0, gamma = embedding_gamma(eta, k), rest = embedding_gamma(eta - gamma, k - 1);
            const double lhs = std::max(2.0, 1.0 / (eta - gamma)) * gamma;
            bad += lhs > rest + 1e-12 || ! gamma_chain(eta, k).holds;
        }
    std::ostringstream s;
    s << "gamma(1/2,2) " << (base ? "= 1/6" : "wrong") << ", " << bad << " grid violations";
    return {base && bad == 0, s.str()};
}

Outcome embedding_lemma()
{
    // H: v0v1 color 1, v0v2 color 2, v1v2 color 1.
    auto h = ColoredGraph::constant(3, 2, 1).with_color(0, 2, 2);
    const double bound = embedding_constants(0.4, 3).delta * 15 * 15 * 15;
    std::vector<VertexSet> parts(3);
    for (int i = 0; i < 3; ++i) {
        parts[static_cast<std::size_t>(i)].resize(15);
        std::iota(parts[static_cast<std::size_t>(i)].begin(), parts[static_cast<std::size_t>(i)].end(), 15 * i);
    }
    int ok = 0;
    std::string log;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(seed);
        auto g = sample_rgraph(45, ColorDistribution({0.5, 0.5}), seed);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                for (Vertex u : parts[static_cast<std::size_t>(i)])
                    for (Vertex v : parts[static_cast<std::size_t>(j)]) {
                        const Color want = h.color(i, j);
                        g.set_color(u, v, rng() % 100 < 60 ? want : 3 - want);
                    }
        const auto report = check_embedding_lemma(g, h, parts, 0.4);
        if (static_cast<double>(report.copies.count) >= bound) {
            ++ok;
        } else {
            std::ostringstream s;
            s << " [seed " << seed << ": " << report.copies.count << " copies;";
            for (const auto & p : report.pairs)
                s << " (" << p.i << "," << p.j << ") d=" << p.density << " " << to_string(p.verdict);
            s << "]";
            log += s.str();
        }
    }
    std::ostringstream s;
    s << ok << "/20 seeds reach delta(0.4,3)*15^3 = " << bound << log;
    return {ok >= 19, s.str()};
}

Outcome decomposition_contract()
{
    std::mt19937_64 rng(707);
    int over_cap = 0, mismatched = 0;
    for (int t = 0; t < 50; ++t) {
        const int r = 2 + t % 2, n = 24 * (1 + static_cast<int>(rng() % 10));
        const double e0 = t % 4 < 2 ? 0.25 : 0.3;
        const EFunction e = t % 2 ? EFunction::constant(e0) : EFunction::reciprocal(e0);
        const int m = 2 + static_cast<int>(rng() % 3);
        auto g = sample_rgraph(n, ColorDistribution(random_distribution(r, rng)), rng());
        const auto d = decompose(g, m, e, DecomposeOptions{default_order_cap, {}, rng()});
        over_cap += d.iterations > static_cast<int>(std::floor(64.0 / (r * std::pow(e0, 4)))) + 1;

        std::vector<int> counts;
        for (int i = 0; i < d.k; ++i)
            for (int i2 = i + 1; i2 < d.k; ++i2) {
                const auto whole = count_densities(g, d.a.block(i), d.a.block(i2));
                int c = 0;
                for (int j = 0; j < d.b.order(); ++j)
                    for (int j2 = 0; j2 < d.b.order(); ++j2)
                        if (d.b.parent(j) == i && d.b.parent(j2) == i2)
                            c += max_gap(count_densities(g, d.b.block(j), d.b.block(j2)), whole) >= e0 - 1e-9;
                counts.push_back(c);
            }
        mismatched += counts != d.pair_stats.deviating_subpairs;
    }
    std::ostringstream s;
    s << over_cap << " runs over the iteration cap, " << mismatched << " deviation recounts differ";
    return {over_cap == 0 && mismatched == 0, s.str()};
}

Outcome fk_examples()
{
    auto one = TypeGraph::rtype(2, 1);
    one.set_self(0, label_bit(0));
    double worst = 0.0;
    for (double p1 : {0.0, 0.25, 0.5, 0.8, 1.0})
        worst = std::max(worst, std::abs(f_k(one, ColorDistribution({p1, 1.0 - p1})) - (1.0 - p1)));
    auto two = TypeGraph::rtype(2, 2);
    two.set_self(0, label_bit(0));
    two.set_self(1, label_bit(1));
    two.set_edge(0, 1, label_bit(0) | label_bit(1));
    for (double p1 : {0.0, 0.3, 0.5, 1.0})
        worst = std::max(worst, std::abs(f_k(two, ColorDistribution({p1, 1.0 - p1})) - 0.25));
    auto tour = TypeGraph::dirtype(PaletteId::P4, 1);
    tour.set_self(0, arrow_bit(Arrow::fwd) | arrow_bit(Arrow::back));
    worst = std::max(worst, std::abs(f_k(tour, ArrowDistribution(0.0, 0.5))));
    std::ostringstream s;
    s << "max error " << worst;
    return {worst <= 1e-12, s.str()};
}

bool has_color1_triangle(const ColoredGraph & g)
{
    const int n = g.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (g.color(a, b) == 1 && g.color(a, c) == 1 && g.color(b, c) == 1)
                    return true;
    return false;
}

Outcome edit_sandwich()
{
    const std::vector<ColoredGraph> family{ColoredGraph::constant(3, 2, 1)};
    const auto types = enumerate_types(TypeSpace::rtypes(2), 3, family);
    if (types.types.empty())
        return {false, "no types enumerated"};
    int violations = 0, dirty = 0;
    for (unsigned bits = 0; bits < 1024; ++bits) {
        auto g = ColoredGraph::constant(5, 2, 2);
        int i = 0;
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v, ++i)
                if (bits >> i & 1u)
                    g.set_color(u, v, 1);
        const long long exact = distance_to_property(g, family).distance;
        long long best = std::numeric_limits<long long>::max();
        for (const auto & k : types.types) {
            const auto fit = fit_to_type(g, k, FiberAssignment::best_of(10, bits));
            dirty += has_color1_triangle(fit.fitted);
            best = std::min(best, fit.cost);
        }
        violations += exact > best;
    }
    std::ostringstream s;
    s << types.types.size() << " types, " << violations << " graphs above the fitted cost, " << dirty << " fitted graphs with a triangle";
    return {violations == 0 && dirty == 0, s.str()};
}

Outcome theorem_trend()
{
    const std::vector<ColoredGraph> family{ColoredGraph::constant(2, 2, 1)};
    auto k = TypeGraph::rtype(2, 1);
    k.set_self(0, label_bit(1));
    const ColorDistribution p({0.5, 0.5});
    const double target = f_k(k, p) * 21.0;
    const auto types = enumerate_types(TypeSpace::rtypes(2), 2, family);
    const double best = lower_bound_fk(p, types, 7).value;

    int mismatches = 0;
    std::vector<double> d;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto g = sample_rgraph(7, p, seed);
        long long ones = 0;
        for (int u = 0; u < 7; ++u)
            for (int v = u + 1; v < 7; ++v)
                ones += g.color(u, v) == 1;
        const long long dist = distance_to_property(g, family).distance;
        mismatches += dist != ones;
        d.push_back(static_cast<double>(dist));
    }
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / 200.0;
    double var = 0.0;
    for (double x : d)
        var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / 199.0), sem = sd / std::sqrt(200.0);
    std::ostringstream s;
    s << "target " << target << " (max over types " << best << "), mean " << mean << ", sd " << sd << ", |mean - target|/sem "
      << std::abs(mean - target) / sem << ", " << mismatches << " distance mismatches";
    return {mismatches == 0 && std::abs(target - 10.5) < 1e-12 && std::abs(best - target) < 1e-12
            && std::abs(mean - target) <= 3.0 * sem,
        s.str()};
}

} // namespace

int main()
{
    criterion(1, "density vectors sum to one", 5, density_normalization);
    criterion(2, "index bounds and refinement monotonicity", 10, index_bounds);
    criterion(3, "defect Cauchy-Schwarz", 2, defect_cauchy_schwarz);
    criterion(4, "heuristic witnesses agree with the exact check", 60, regularity_oracle);
    criterion(5, "embedding constants and the gamma chain", 1, embedding_constants_check);
    criterion(6, "spanning copies at desk scale", 30, embedding_lemma);
    criterion(7, "decomposition loop contract", 300, decomposition_contract);
    criterion(8, "f_K worked examples", 1, fk_examples);
    criterion(9, "edit-distance sandwich on all 5-vertex graphs", 600, edit_sandwich);
    criterion(10, "theorem trend for the color-1 edge", 30, theorem_trend);
    return failures == 0 ? 0 : 1;
}
