#include "regracut/edit.hpp"

#include "regracut/density.hpp"
#include "regracut/error.hpp"
#include "regracut/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <type_traits>

namespace regracut {

namespace {

template <PairColoring G>
void check_same_kind(const G & a, const G & b)
{
    if (a.vertex_count() != b.vertex_count())
        fail(ErrorKind::SizeMismatch,
            "graphs have " + std::to_string(a.vertex_count()) + " and " + std::to_string(b.vertex_count()) + " vertices");
    if (a.color_count() != b.color_count())
        fail(ErrorKind::KindMismatch, "graphs use different numbers of colors");
}

template <PairColoring G>
void check_type_fits(const G & g, const TypeGraph & k)
{
    if constexpr (std::is_same_v<G, Digraph>) {
        if (k.kind() != TypeKind::dirtype)
            fail(ErrorKind::KindMismatch, "digraph against an r-type");
    } else {
        if (k.kind() != TypeKind::rtype || k.space().r != g.color_count())
            fail(ErrorKind::KindMismatch, "r-graph against a type of another kind or r");
    }
}

// Recolors the unordered pair {u, v}, u < v, to ordered color c.
template <PairColoring G>
void recolor(G & g, Vertex u, Vertex v, ColorIndex c)
{
    if constexpr (std::is_same_v<G, Digraph>)
        g.set_arrow(u, v, static_cast<Arrow>(c));
    else
        g.set_color(u, v, c + 1);
}

template <PairColoring G>
bool extend_copy(const G & g, const G & h, std::vector<Vertex> & map, std::vector<char> & used, int depth)
{
    if (depth == h.vertex_count())
        return true;
    for (Vertex w = 0; w < g.vertex_count(); ++w) {
        if (used[static_cast<std::size_t>(w)])
            continue;
        bool ok = true;
        for (int i = 0; i < depth && ok; ++i)
            ok = g.ordered_color(map[static_cast<std::size_t>(i)], w) == h.ordered_color(i, depth);
        if (! ok)
            continue;
        map[static_cast<std::size_t>(depth)] = w;
        used[static_cast<std::size_t>(w)] = 1;
        if (extend_copy(g, h, map, used, depth + 1))
            return true;
        used[static_cast<std::size_t>(w)] = 0;
    }
    return false;
}

template <PairColoring G>
std::optional<std::vector<Vertex>> first_copy(const G & g, const ForbiddenFamily<G> & family)
{
    for (const auto & h : family)
        if (auto copy = find_induced_copy(g, h))
            return copy;
    return std::nullopt;
}

template <PairColoring G>
struct DistanceSearch {
    const ForbiddenFamily<G> & family;
    std::vector<ColorIndex> alphabet;
    int n;
    std::vector<char> fixed;

    std::size_t key(Vertex u, Vertex v) const
    {
        return static_cast<std::size_t>(std::min(u, v)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(std::max(u, v));
    }

    // Pairs of the copy, in copy order, that are still free.
    std::vector<std::pair<Vertex, Vertex>> free_pairs(const std::vector<Vertex> & copy) const
    {
        std::vector<std::pair<Vertex, Vertex>> out;
        for (std::size_t i = 0; i < copy.size(); ++i)
            for (std::size_t j = i + 1; j < copy.size(); ++j)
                if (! fixed[key(copy[i], copy[j])])
                    out.emplace_back(std::min(copy[i], copy[j]), std::max(copy[i], copy[j]));
        return out;
    }

    bool search(G & g, int budget)
    {
        const auto copy = first_copy(g, family);
        if (! copy)
            return true;
        if (budget == 0)
            return false;
        const auto pairs = free_pairs(*copy);
        for (const auto & [u, v] : pairs) {
            const ColorIndex old = g.ordered_color(u, v);
            fixed[key(u, v)] = 1;
            for (ColorIndex c : alphabet) {
                if (c == old)
                    continue;
                recolor(g, u, v, c);
                if (search(g, budget - 1))
                    return true;
            }
            recolor(g, u, v, old);
        }
        for (const auto & [u, v] : pairs)
            fixed[key(u, v)] = 0;
        return false;
    }
};

} // namespace

template <PairColoring G>
long long edit_distance(const G & a, const G & b)
{
    check_same_kind(a, b);
    return differing_pairs(a, b);
}

template <PairColoring G>
std::optional<std::vector<Vertex>> find_induced_copy(const G & g, const G & h)
{
    if (h.vertex_count() > g.vertex_count() || h.color_count() != g.color_count())
        return std::nullopt;
    std::vector<Vertex> map(static_cast<std::size_t>(h.vertex_count()), -1);
    std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
    if (extend_copy(g, h, map, used, 0))
        return map;
    return std::nullopt;
}

template <PairColoring G>
bool avoids_family(const G & g, const ForbiddenFamily<G> & family)
{
    return ! first_copy(g, family);
}

template <PairColoring G>
DistanceResult<G> distance_to_property(const G & g, const ForbiddenFamily<G> & family, const DistanceOptions & options)
{
    validate_family(family);
    if (family.front().color_count() != g.color_count())
        fail(ErrorKind::KindMismatch, "forbidden patterns and graph use different numbers of colors");
    const int cap = options.cap > 0 ? options.cap
                                    : (std::is_same_v<G, Digraph> ? default_digraph_exact_cap : default_rgraph_exact_cap);
    const int n = g.vertex_count();
    if (n > cap)
        fail(ErrorKind::TooLargeForExact,
            "exact distance limited to n <= " + std::to_string(cap) + ", got n=" + std::to_string(n));

    std::vector<ColorIndex> alphabet;
    if constexpr (std::is_same_v<G, Digraph>) {
        const Palette pal = palette(options.palette);
        for (int s = 0; s < arrow_count; ++s)
            if (pal.contains(static_cast<Arrow>(s)))
                alphabet.push_back(s);
    } else {
        for (int c = 0; c < g.color_count(); ++c)
            alphabet.push_back(c);
    }

    const int max_budget = n * (n - 1) / 2;
    for (int budget = 0; budget <= max_budget; ++budget) {
        const auto root = first_copy(g, family);
        if (! root)
            return {0, g};
        if (budget == 0)
            continue;

        // Root branches run in parallel; the first success in branch order
        // wins, so the witness does not depend on the schedule.
        DistanceSearch<G> base{family, alphabet, n, std::vector<char>(static_cast<std::size_t>(n) * n, 0)};
        const auto pairs = base.free_pairs(*root);
        struct Branch {
            std::size_t pair;
            ColorIndex color;
        };
        std::vector<Branch> branches;
        for (std::size_t p = 0; p < pairs.size(); ++p)
            for (ColorIndex c : alphabet)
                if (c != g.ordered_color(pairs[p].first, pairs[p].second))
                    branches.push_back({p, c});

        std::vector<std::optional<G>> found(branches.size());
        std::atomic<std::size_t> first_success{branches.size()};
        parallel_for(branches.size(), [&](std::size_t b) {
            if (b > first_success.load())
                return;
            DistanceSearch<G> search = base;
            for (std::size_t p = 0; p <= branches[b].pair; ++p)
                search.fixed[search.key(pairs[p].first, pairs[p].second)] = 1;
            G candidate = g;
            recolor(candidate, pairs[branches[b].pair].first, pairs[branches[b].pair].second, branches[b].color);
            if (search.search(candidate, budget - 1)) {
                found[b] = std::move(candidate);
                std::size_t current = first_success.load();
                while (b < current && ! first_success.compare_exchange_weak(current, b)) { }
            }
        });
        for (auto & f : found)
            if (f)
                return {differing_pairs(g, *f), std::move(*f)};
    }
    fail(ErrorKind::EmptyProperty, "no graph on " + std::to_string(n) + " vertices avoids the family");
}

template <PairColoring G>
FitResult<G> fit_to_type(const G & g, const TypeGraph & k, const FiberAssignment & assignment)
{
    check_type_fits(g, k);
    validate_type(k);
    const int n = g.vertex_count();

    auto fit = [&](const std::vector<int> & map) {
        G out = g;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) {
                const int a = map[static_cast<std::size_t>(u)], b = map[static_cast<std::size_t>(v)];
                LabelMask allowed = k.label(a, b);
                if constexpr (std::is_same_v<G, Digraph>) {
                    if (a == b) {
                        const LabelMask self = k.label(a, a);
                        const int arrows = std::popcount(static_cast<unsigned>(self & arrow_pair_bits));
                        allowed = self & static_cast<LabelMask>(arrow_bit(Arrow::none) | arrow_bit(Arrow::bi));
                        if (arrows >= 1)
                            allowed |= arrow_bit(Arrow::fwd);
                        if (arrows == 2)
                            allowed |= arrow_bit(Arrow::back);
                    }
                }
                const ColorIndex c = g.ordered_color(u, v);
                if (! (allowed & label_bit(c)))
                    recolor(out, u, v, std::countr_zero(static_cast<unsigned>(allowed)));
            }
        return out;
    };

    FitResult<G> best{g, std::numeric_limits<long long>::max(), {}};
    auto consider = [&](std::vector<int> map) {
        G fitted = fit(map);
        const long long cost = differing_pairs(g, fitted);
        if (cost < best.cost)
            best = {std::move(fitted), cost, std::move(map)};
    };

    switch (assignment.mode) {
    case FiberAssignment::Mode::explicit_map:
        if (static_cast<int>(assignment.map.size()) != n)
            fail(ErrorKind::BadPartition, "assignment covers " + std::to_string(assignment.map.size()) + " of " + std::to_string(n) + " vertices");
        for (int u : assignment.map)
            if (u < 0 || u >= k.k())
                fail(ErrorKind::BadPartition, "assignment names type vertex " + std::to_string(u));
        consider(assignment.map);
        break;
    case FiberAssignment::Mode::balanced: {
        std::vector<int> map(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v)
            map[static_cast<std::size_t>(v)] = v % k.k();
        consider(std::move(map));
        break;
    }
    case FiberAssignment::Mode::best_of: {
        if (assignment.trials < 1)
            fail(ErrorKind::BadOrder, "best_of needs at least one trial");
        std::mt19937_64 rng(assignment.seed);
        std::vector<Vertex> order(static_cast<std::size_t>(n));
        for (int t = 0; t < assignment.trials; ++t) {
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            std::vector<int> map(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                map[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i % k.k();
            consider(std::move(map));
        }
        break;
    }
    }
    return best;
}

ErrorTerms finite_error_terms(int n, int k, int r, double eps)
{
    const double fl = std::floor(static_cast<double>(n) / k), ce = std::ceil(static_cast<double>(n) / k);
    const double pairs = n * (n - 1.0) / 2.0, k_pairs = k * (k - 1.0) / 2.0;
    ErrorTerms t;
    t.uneven = pairs - k * k / 2.0 * fl * fl;
    t.diagonal = k / 2.0 * fl * fl;
    t.fluctuation = r * k_pairs * std::pow(fl, 5.0 / 3.0);
    t.color_slack = eps * r * k_pairs * ce * ce;
    t.irregular = eps * k * k * ce * ce;
    t.total = t.uneven + t.diagonal + t.fluctuation + t.color_slack + t.irregular;
    return t;
}

namespace {

template <typename Dist>
LowerBound best_fk(const Dist & p, const TypeFamily & family, int n, std::optional<double> eps)
{
    if (family.types.empty())
        fail(ErrorKind::EmptyFamily, "no types to maximize over");
    LowerBound out;
    out.f = -1.0;
    for (std::size_t i = 0; i < family.types.size(); ++i) {
        const double f = f_k(family.types[i], p);
        if (f > out.f) {
            out.f = f;
            out.best_index = i;
        }
    }
    out.value = out.f * n * (n - 1.0) / 2.0;
    if (eps)
        out.error_terms = finite_error_terms(n, family.types[out.best_index].k(), family.space.color_count(), *eps);
    return out;
}

} // namespace

LowerBound lower_bound_fk(const ColorDistribution & p, const TypeFamily & family, int n, std::optional<double> eps)
{
    return best_fk(p, family, n, eps);
}

LowerBound lower_bound_fk(const ArrowDistribution & pq, const TypeFamily & family, int n, std::optional<double> eps)
{
    return best_fk(pq, family, n, eps);
}

template <PairColoring G>
TypeConstruction construct_type_from_partition(const G & g, const std::vector<VertexSet> & clusters, double delta,
    const EFunction & e, const ForbiddenFamily<G> & family, const Certifier & certifier, long long cap)
{
    validate_family(family);
    const int k = static_cast<int>(clusters.size());
    if (k < 1)
        fail(ErrorKind::BadPartition, "no clusters given");
    if (! (delta > 0.0 && delta <= 1.0))
        fail(ErrorKind::BadEta, "delta must lie in (0,1]");
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            check_disjoint_nonempty(g.vertex_count(), clusters[static_cast<std::size_t>(i)], clusters[static_cast<std::size_t>(j)]);
    if (k == 1 && clusters.front().empty())
        fail(ErrorKind::EmptySet, "empty cluster");

    TypeSpace space = default_space(g);
    if constexpr (std::is_same_v<G, Digraph>)
        space = TypeSpace::dirtypes(palette_of(g).id);
    for (const auto & h : family)
        if (h.color_count() != space.color_count())
            fail(ErrorKind::KindMismatch, "forbidden patterns and graph use different numbers of colors");

    TypeConstruction out{std::nullopt, TypeGraph(space, k), 0, 0, 0, {}};
    const double eps_k = e(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const std::span<const Vertex> a(clusters[static_cast<std::size_t>(i)]), b(clusters[static_cast<std::size_t>(j)]);
            out.irregular_pairs += certifier.certify(g, a, b, eps_k).verdict == Verdict::irregular;
            const auto d = density_unchecked(g, a, b);
            LabelMask label = 0;
            for (int c = 0; c < g.color_count(); ++c)
                if (d[c] >= delta - density_tolerance)
                    label |= label_bit(c);
            if (label == 0) {
                label = label_bit(static_cast<ColorIndex>(std::max_element(d.entries.begin(), d.entries.end()) - d.entries.begin()));
                ++out.fallback_labels;
            }
            out.skeleton.set_edge(i, j, label);
        }

    // Candidate self labels per cluster: smaller sets first, then those
    // covering more of the cluster's internal color mass.
    std::vector<LabelMask> proper;
    for (unsigned m = 1; m < space.universe(); ++m)
        if ((m & ~static_cast<unsigned>(space.universe())) == 0)
            proper.push_back(static_cast<LabelMask>(m));
    std::vector<std::vector<LabelMask>> options(static_cast<std::size_t>(k));
    long long total = 1;
    for (int i = 0; i < k; ++i) {
        const auto & cluster = clusters[static_cast<std::size_t>(i)];
        std::vector<double> mass(static_cast<std::size_t>(g.color_count()), 0.0);
        for (std::size_t x = 0; x < cluster.size(); ++x)
            for (std::size_t y = x + 1; y < cluster.size(); ++y)
                mass[static_cast<std::size_t>(g.ordered_color(cluster[x], cluster[y]))] += 1.0;
        auto covered = [&](LabelMask m) {
            double s = 0.0;
            for (int c = 0; c < g.color_count(); ++c)
                if (m & label_bit(c))
                    s += mass[static_cast<std::size_t>(c)];
            return s;
        };
        auto & list = options[static_cast<std::size_t>(i)];
        list = proper;
        std::stable_sort(list.begin(), list.end(), [&](LabelMask x, LabelMask y) {
            const int px = std::popcount(static_cast<unsigned>(x)), py = std::popcount(static_cast<unsigned>(y));
            return px != py ? px < py : covered(x) > covered(y);
        });
        total = total > cap / static_cast<long long>(list.size()) ? cap + 1 : total * static_cast<long long>(list.size());
    }
    if (total > cap)
        fail(ErrorKind::SearchSpaceTooLarge, "self-label search exceeds " + std::to_string(cap) + " assignments");

    std::vector<std::size_t> rank(static_cast<std::size_t>(k), 0);
    TypeGraph candidate = out.skeleton;
    while (true) {
        for (int i = 0; i < k; ++i)
            candidate.set_self(i, options[static_cast<std::size_t>(i)][rank[static_cast<std::size_t>(i)]]);
        ++out.assignments_tried;
        const bool clean = std::none_of(family.begin(), family.end(), [&](const G & h) { return embeds(h, candidate).embeds; });
        if (clean) {
            out.type = candidate;
            return out;
        }
        int pos = k - 1;
        while (pos >= 0 && ++rank[static_cast<std::size_t>(pos)] == options[static_cast<std::size_t>(pos)].size())
            rank[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0)
            break;
    }
    out.failure = "NoValidVertexLabels";
    return out;
}

#define REGRACUT_INSTANTIATE(G)                                                                                   \
    template long long edit_distance<G>(const G &, const G &);                                                   \
    template std::optional<std::vector<Vertex>> find_induced_copy<G>(const G &, const G &);                      \
    template bool avoids_family<G>(const G &, const ForbiddenFamily<G> &);                                       \
    template DistanceResult<G> distance_to_property<G>(const G &, const ForbiddenFamily<G> &, const DistanceOptions &); \
    template FitResult<G> fit_to_type<G>(const G &, const TypeGraph &, const FiberAssignment &);                 \
    template TypeConstruction construct_type_from_partition<G>(const G &, const std::vector<VertexSet> &, double, \
        const EFunction &, const ForbiddenFamily<G> &, const Certifier &, long long);

REGRACUT_INSTANTIATE(ColoredGraph)
REGRACUT_INSTANTIATE(Digraph)

#undef REGRACUT_INSTANTIATE

} // namespace regracut
