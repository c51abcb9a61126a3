#include "regracut/edit.hpp"
#include "regracut/error.hpp"
#include "regracut/sampling.hpp"
#include "regracut/type_io.hpp"
#include "regracut/types.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>

using namespace regracut;

namespace {

ErrorKind error_of(auto && fn)
{
    try {
        fn();
    } catch (const Error & e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::ParseError;
}

constexpr LabelMask c1 = label_bit(0), c2 = label_bit(1), c12 = c1 | c2;
constexpr LabelMask s_none = label_bit(0), s_bi = label_bit(1), s_back = label_bit(2), s_fwd = label_bit(3);

TypeGraph one_vertex(LabelMask self, int r = 2)
{
    auto k = TypeGraph::rtype(r, 1);
    k.set_self(0, self);
    return k;
}

ColoredGraph triangle1() { return ColoredGraph::constant(3, 2, 1); }
ColoredGraph edge1() { return ColoredGraph::constant(2, 2, 1); }

TypeGraph random_type(const TypeSpace & space, int k, std::mt19937_64 & rng)
{
    const LabelMask u = space.universe();
    auto pick = [&](bool proper) {
        while (true) {
            const LabelMask m = static_cast<LabelMask>(rng() % 256) & u;
            if (m != 0 && (! proper || m != u))
                return m;
        }
    };
    TypeGraph t(space, k);
    for (int x = 0; x < k; ++x)
        t.set_self(x, pick(true));
    for (int x = 0; x < k; ++x)
        for (int y = x + 1; y < k; ++y)
            t.set_edge(x, y, pick(false));
    return t;
}

// Oriented arcs inside a fiber extend to a transitive tournament iff some
// ordering of the fiber has every arc pointing forward.
bool arcs_acyclic(const Digraph & h, std::vector<Vertex> fiber)
{
    std::sort(fiber.begin(), fiber.end());
    do {
        bool ok = true;
        for (std::size_t i = 0; i < fiber.size() && ok; ++i)
            for (std::size_t j = i + 1; j < fiber.size() && ok; ++j)
                ok = h.arrow(fiber[i], fiber[j]) != Arrow::back;
        if (ok)
            return true;
    } while (std::next_permutation(fiber.begin(), fiber.end()));
    return false;
}

// Every map V(H) -> U tried in turn.
template <typename G>
bool naive_embeds(const G & h, const TypeGraph & k)
{
    const int n = h.vertex_count(), kk = k.k();
    std::vector<int> map(static_cast<std::size_t>(n), 0);
    while (true) {
        bool ok = true;
        for (int v = 0; v < n && ok; ++v)
            for (int w = v + 1; w < n && ok; ++w) {
                const int a = map[static_cast<std::size_t>(v)], b = map[static_cast<std::size_t>(w)];
                const int c = h.ordered_color(v, w);
                if (a != b || k.kind() == TypeKind::rtype) {
                    ok = (k.label(a, b) & label_bit(c)) != 0;
                } else {
                    const LabelMask self = k.label(a, a);
                    if (c == 2 || c == 3)
                        ok = (self & (s_back | s_fwd)) != 0;
                    else
                        ok = (self & label_bit(c)) != 0;
                }
            }
        if constexpr (std::is_same_v<G, Digraph>) {
            for (int u = 0; u < kk && ok; ++u) {
                if (std::popcount(static_cast<unsigned>(k.label(u, u) & (s_back | s_fwd))) != 1)
                    continue;
                std::vector<Vertex> fiber;
                for (int v = 0; v < n; ++v)
                    if (map[static_cast<std::size_t>(v)] == u)
                        fiber.push_back(v);
                ok = arcs_acyclic(h, fiber);
            }
        }
        if (ok)
            return true;
        int pos = n - 1;
        while (pos >= 0 && ++map[static_cast<std::size_t>(pos)] == kk)
            map[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0)
            return false;
    }
}

// Induced copy by trying every injective map.
template <typename G>
bool naive_contains(const G & g, const G & h)
{
    const int n = g.vertex_count(), m = h.vertex_count();
    if (m > n)
        return false;
    std::vector<int> map(static_cast<std::size_t>(m), 0);
    while (true) {
        std::set<int> image(map.begin(), map.end());
        bool ok = static_cast<int>(image.size()) == m;
        for (int i = 0; i < m && ok; ++i)
            for (int j = i + 1; j < m && ok; ++j)
                ok = g.ordered_color(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) == h.ordered_color(i, j);
        if (ok)
            return true;
        int pos = m - 1;
        while (pos >= 0 && ++map[static_cast<std::size_t>(pos)] == n)
            map[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0)
            return false;
    }
}

// Minimum distance over every recoloring of a small r-graph.
long long naive_distance(const ColoredGraph & g, const std::vector<ColoredGraph> & family)
{
    const int n = g.vertex_count(), r = g.r();
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            pairs.emplace_back(u, v);
    long long best = static_cast<long long>(pairs.size()) + 1;
    std::vector<int> digits(pairs.size(), 0);
    while (true) {
        auto candidate = ColoredGraph::constant(n, r, 1);
        long long cost = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            candidate.set_color(pairs[i].first, pairs[i].second, digits[i] + 1);
            cost += digits[i] != g.ordered_color(pairs[i].first, pairs[i].second);
        }
        if (cost < best && std::none_of(family.begin(), family.end(), [&](const auto & h) { return naive_contains(candidate, h); }))
            best = cost;
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == r)
            digits[pos++] = 0;
        if (pos == digits.size())
            return best;
    }
}

long long naive_digraph_distance(const Digraph & g, const std::vector<Digraph> & family)
{
    const int n = g.vertex_count();
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            pairs.emplace_back(u, v);
    long long best = static_cast<long long>(pairs.size()) + 1;
    std::vector<int> digits(pairs.size(), 0);
    while (true) {
        auto candidate = Digraph::constant(n, Arrow::none);
        long long cost = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            candidate.set_arrow(pairs[i].first, pairs[i].second, static_cast<Arrow>(digits[i]));
            cost += digits[i] != g.ordered_color(pairs[i].first, pairs[i].second);
        }
        if (cost < best && std::none_of(family.begin(), family.end(), [&](const auto & h) { return naive_contains(candidate, h); }))
            best = cost;
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == 4)
            digits[pos++] = 0;
        if (pos == digits.size())
            return best;
    }
}

} // namespace

TEST_CASE("validate_type")
{
    CHECK_NOTHROW(validate_type(one_vertex(c1)));
    CHECK(error_of([] { validate_type(one_vertex(c12)); }) == ErrorKind::FullSelfLabel);
    CHECK(error_of([] { validate_type(TypeGraph::rtype(2, 1)); }) == ErrorKind::EmptyLabel);

    auto k = TypeGraph::rtype(2, 2);
    k.set_self(0, c1);
    k.set_self(1, c2);
    k.set_raw(0, 1, c1);
    k.set_raw(1, 0, c12);
    CHECK(error_of([&] { validate_type(k); }) == ErrorKind::SymmetryViolation);
    k.set_edge(0, 1, c12);
    CHECK_NOTHROW(validate_type(k));

    SUBCASE("dir-types")
    {
        auto d = TypeGraph::dirtype(PaletteId::P0, 2);
        d.set_self(0, s_none);
        d.set_self(1, s_fwd | s_back);
        d.set_raw(0, 1, s_fwd);
        d.set_raw(1, 0, s_fwd);
        CHECK(error_of([&] { validate_type(d); }) == ErrorKind::ArrowClosureViolation);
        d.set_edge(0, 1, s_fwd | s_bi);
        CHECK(d.label(1, 0) == (s_back | s_bi));
        CHECK_NOTHROW(validate_type(d));
        d.set_raw(1, 0, s_back);
        CHECK(error_of([&] { validate_type(d); }) == ErrorKind::SymmetryViolation);

        auto t = TypeGraph::dirtype(PaletteId::P4, 1);
        t.set_self(0, s_fwd | s_back);
        CHECK(error_of([&] { validate_type(t); }) == ErrorKind::FullSelfLabel);
        t.set_self(0, s_none);
        CHECK(error_of([&] { validate_type(t); }) == ErrorKind::LabelOutOfRange);
    }
}

TEST_CASE("embeds")
{
    SUBCASE("examples")
    {
        std::mt19937_64 rng(1);
        for (int t = 0; t < 10; ++t)
            CHECK(embeds(ColoredGraph::constant(1, 2, 1), random_type(TypeSpace::rtypes(2), 1 + t % 3, rng)).embeds);
        CHECK(! embeds(edge1(), one_vertex(c2)).embeds);
        CHECK(embeds(edge1(), one_vertex(c1)).embeds);

        auto k = TypeGraph::rtype(2, 2);
        k.set_self(0, c2);
        k.set_self(1, c2);
        k.set_edge(0, 1, c1);
        CHECK(! embeds(triangle1(), k).embeds);
        CHECK(! naive_embeds(triangle1(), k));
        auto path = triangle1().with_color(0, 2, 2);
        auto found = embeds(path, k);
        REQUIRE(found.embeds);
        CHECK(found.map[0] != found.map[1]);
        CHECK(found.map[1] != found.map[2]);
    }
    SUBCASE("agrees with every map for r-graphs")
    {
        std::mt19937_64 rng(2);
        int positives = 0;
        for (int t = 0; t < 400; ++t) {
            const int r = 2 + t % 2, n = 1 + t % 5, k = 1 + t % 3;
            std::vector<double> p(static_cast<std::size_t>(r), 1.0 / r);
            auto h = sample_rgraph(n, ColorDistribution(p), rng());
            auto type = random_type(TypeSpace::rtypes(r), k, rng);
            auto result = embeds(h, type);
            CHECK(result.embeds == naive_embeds(h, type));
            positives += result.embeds;
            if (result.embeds)
                for (int v = 0; v < n; ++v)
                    for (int w = v + 1; w < n; ++w)
                        CHECK((type.label(result.map[v], result.map[w]) & label_bit(h.ordered_color(v, w))));
        }
        CHECK(positives > 20);
        CHECK(positives < 380);
    }
    SUBCASE("agrees with every map for dir-types")
    {
        std::mt19937_64 rng(3);
        int positives = 0;
        for (int t = 0; t < 400; ++t) {
            const int n = 1 + t % 5, k = 1 + t % 3;
            const auto pal = static_cast<PaletteId>(t % 5);
            auto h = sample_digraph(n, ArrowDistribution(0.25, 0.25), rng());
            auto type = random_type(TypeSpace::dirtypes(pal), k, rng);
            const bool got = embeds(h, type).embeds;
            CHECK(got == naive_embeds(h, type));
            positives += got;
        }
        CHECK(positives > 20);
    }
    SUBCASE("oriented cycles and a single arrow")
    {
        auto cyc = Digraph::constant(3, Arrow::none);
        cyc.set_arrow(0, 1, Arrow::fwd);
        cyc.set_arrow(1, 2, Arrow::fwd);
        cyc.set_arrow(2, 0, Arrow::fwd);
        auto trans = cyc.with_arrow(0, 2, Arrow::fwd);
        auto one = TypeGraph::dirtype(PaletteId::P4, 1);
        one.set_self(0, s_fwd);
        CHECK(! embeds(cyc, one).embeds);
        CHECK(embeds(trans, one).embeds);
        auto none = TypeGraph::dirtype(PaletteId::P0, 1);
        none.set_self(0, s_none | s_bi);
        CHECK(! embeds(trans, none).embeds);
    }
    SUBCASE("kind mismatch")
    {
        CHECK(error_of([] { (void)embeds(Digraph::constant(2, Arrow::bi), one_vertex(c1)); }) == ErrorKind::KindMismatch);
        CHECK(error_of([] { (void)embeds(ColoredGraph::constant(2, 3, 1), one_vertex(c1)); }) == ErrorKind::KindMismatch);
    }
}

TEST_CASE("canonical_form")
{
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        auto k = random_type(TypeSpace::rtypes(3), 1 + t % 4, rng);
        std::vector<int> perm(static_cast<std::size_t>(k.k()));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(canonical_form(k) == canonical_form(k.permuted(perm)));
        CHECK(canonical_form(k).labels() <= k.labels());
    }
}

TEST_CASE("enumerate_types")
{
    const auto r2 = TypeSpace::rtypes(2);
    SUBCASE("color-1 edge, k_max = 1")
    {
        auto fam = enumerate_types(r2, 1, std::vector{edge1()});
        REQUIRE(fam.types.size() == 1);
        CHECK(fam.types[0] == one_vertex(c2));
        CHECK(embeds(edge1(), one_vertex(c1)).embeds);
    }
    SUBCASE("one-vertex pattern leaves nothing")
    {
        CHECK(enumerate_types(r2, 3, std::vector{ColoredGraph::constant(1, 2, 1)}).types.empty());
    }
    SUBCASE("color-1 triangle, k_max = 2")
    {
        auto fam = enumerate_types(r2, 2, std::vector{triangle1()});
        auto k = TypeGraph::rtype(2, 2);
        k.set_self(0, c2);
        k.set_self(1, c2);
        k.set_edge(0, 1, c12);
        CHECK(std::find(fam.types.begin(), fam.types.end(), canonical_form(k)) != fam.types.end());
    }
    SUBCASE("matches a brute-force enumeration up to isomorphism")
    {
        for (const auto & family : {std::vector{triangle1()}, std::vector{triangle1().with_color(0, 1, 2)}, std::vector{edge1()}}) {
            auto fam = enumerate_types(r2, 3, family);
            std::set<std::vector<LabelMask>> expected;
            const LabelMask selfs[] = {c1, c2}, edges[] = {c1, c2, c12};
            for (int k = 1; k <= 3; ++k) {
                const int slots = k + k * (k - 1) / 2;
                int total = 1;
                for (int i = 0; i < slots; ++i)
                    total *= i < k ? 2 : 3;
                for (int code = 0; code < total; ++code) {
                    TypeGraph t = TypeGraph::rtype(2, k);
                    int c = code;
                    for (int x = 0; x < k; ++x, c /= 2)
                        t.set_self(x, selfs[c % 2]);
                    for (int x = 0; x < k; ++x)
                        for (int y = x + 1; y < k; ++y, c /= 3)
                            t.set_edge(x, y, edges[c % 3]);
                    if (std::none_of(family.begin(), family.end(), [&](const auto & h) { return naive_embeds(h, t); }))
                        expected.insert(canonical_form(t).labels());
                }
            }
            std::set<std::vector<LabelMask>> got;
            for (const auto & t : fam.types)
                got.insert(t.labels());
            CHECK(got.size() == fam.types.size());
            CHECK(got == expected);
        }
    }
    SUBCASE("adding a member never enlarges the family")
    {
        auto small = enumerate_types(r2, 3, std::vector{triangle1()});
        auto big = enumerate_types(r2, 3, std::vector{triangle1(), ColoredGraph::constant(3, 2, 2)});
        CHECK(big.types.size() < small.types.size());
        for (const auto & t : big.types)
            CHECK(std::find(small.types.begin(), small.types.end(), t) != small.types.end());
    }
    SUBCASE("dir-types and the cap")
    {
        auto cyc = Digraph::constant(3, Arrow::none);
        cyc.set_arrow(0, 1, Arrow::fwd);
        cyc.set_arrow(1, 2, Arrow::fwd);
        cyc.set_arrow(2, 0, Arrow::fwd);
        auto fam = enumerate_types(TypeSpace::dirtypes(PaletteId::P4), 2, std::vector{cyc});
        for (const auto & t : fam.types) {
            CHECK_NOTHROW(validate_type(t));
            CHECK(! naive_embeds(cyc, t));
        }
        CHECK(! fam.types.empty());
        CHECK(error_of([] { (void)enumerate_types(TypeSpace::rtypes(3), 4, std::vector{ColoredGraph::constant(2, 3, 1)}, 1000); })
            == ErrorKind::SearchSpaceTooLarge);
        CHECK(error_of([] { (void)enumerate_types(TypeSpace::rtypes(2), 2, std::vector<ColoredGraph>{}); }) == ErrorKind::EmptyFamily);
    }
}

TEST_CASE("f_k")
{
    SUBCASE("examples")
    {
        for (double p1 : {0.0, 0.3, 0.5, 1.0})
            CHECK(f_k(one_vertex(c1), ColorDistribution({p1, 1.0 - p1})) == doctest::Approx(1.0 - p1).epsilon(1e-12));
        auto k = TypeGraph::rtype(2, 2);
        k.set_self(0, c1);
        k.set_self(1, c2);
        k.set_edge(0, 1, c12);
        for (double p1 : {0.0, 0.2, 0.7})
            CHECK(f_k(k, ColorDistribution({p1, 1.0 - p1})) == doctest::Approx(0.25).epsilon(1e-12));
        auto t = TypeGraph::dirtype(PaletteId::P4, 1);
        t.set_self(0, s_fwd | s_back);
        CHECK(std::abs(f_k(t, ArrowDistribution(0.0, 0.5))) < 1e-12);
    }
    SUBCASE("range on a grid and linearity")
    {
        std::mt19937_64 rng(5);
        for (int t = 0; t < 100; ++t) {
            const int r = 2 + t % 3;
            auto k = random_type(TypeSpace::rtypes(r), 1 + t % 4, rng);
            std::vector<double> a(static_cast<std::size_t>(r)), b(static_cast<std::size_t>(r));
            for (auto * v : {&a, &b}) {
                double s = 0.0;
                for (auto & x : *v)
                    s += x = static_cast<double>(rng() % 100 + 1);
                for (auto & x : *v)
                    x /= s;
            }
            const double fa = f_k(k, ColorDistribution(a)), fb = f_k(k, ColorDistribution(b));
            CHECK(fa >= -1e-12);
            CHECK(fa <= 1.0 + 1e-12);
            for (double lambda : {0.25, 0.5, 0.9}) {
                std::vector<double> mix(a.size());
                for (std::size_t i = 0; i < a.size(); ++i)
                    mix[i] = lambda * a[i] + (1 - lambda) * b[i];
                CHECK(f_k(k, ColorDistribution(mix)) == doctest::Approx(lambda * fa + (1 - lambda) * fb).epsilon(1e-12));
            }
        }
        for (int t = 0; t < 50; ++t) {
            auto k = random_type(TypeSpace::dirtypes(PaletteId::P0), 1 + t % 3, rng);
            for (double p : {0.0, 0.2, 0.5})
                for (double q : {0.0, 0.1, 0.25}) {
                    const double f = f_k(k, ArrowDistribution(p, q));
                    CHECK(f >= -1e-12);
                    CHECK(f <= 1.0 + 1e-12);
                }
        }
    }
    SUBCASE("errors")
    {
        CHECK(error_of([] { (void)f_k(one_vertex(c1), ColorDistribution({0.2, 0.3, 0.5})); }) == ErrorKind::DimensionMismatch);
        CHECK(error_of([] { (void)f_k(one_vertex(c1), ArrowDistribution(0.1, 0.1)); }) == ErrorKind::KindMismatch);
        CHECK(error_of([] { (void)f_k(TypeGraph::rtype(2, 1), ColorDistribution({0.5, 0.5})); }) == ErrorKind::EmptyLabel);
    }
}

TEST_CASE("edit_distance and induced copies")
{
    auto g = sample_rgraph(9, ColorDistribution({0.5, 0.5}), 7);
    CHECK(edit_distance(g, g) == 0);
    auto comp = ColoredGraph::constant(9, 2, 1);
    for (Vertex u = 0; u < 9; ++u)
        for (Vertex v = u + 1; v < 9; ++v)
            comp.set_color(u, v, 3 - g.color(u, v));
    CHECK(edit_distance(g, comp) == 36);
    CHECK(edit_distance(g, g.with_color(2, 5, 3 - g.color(2, 5))) == 1);
    CHECK(error_of([&] { (void)edit_distance(g, ColoredGraph::constant(8, 2, 1)); }) == ErrorKind::SizeMismatch);
    auto d = Digraph::constant(4, Arrow::fwd);
    CHECK(edit_distance(d, d.with_arrow(1, 3, Arrow::back)) == 1);

    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t) {
        auto big = sample_rgraph(6, ColorDistribution({0.5, 0.5}), rng());
        auto small = sample_rgraph(1 + t % 4, ColorDistribution({0.5, 0.5}), rng());
        auto copy = find_induced_copy(big, small);
        CHECK(copy.has_value() == naive_contains(big, small));
        if (copy)
            for (int i = 0; i < small.vertex_count(); ++i)
                for (int j = i + 1; j < small.vertex_count(); ++j)
                    CHECK(big.ordered_color((*copy)[i], (*copy)[j]) == small.ordered_color(i, j));
    }
}

TEST_CASE("distance_to_property")
{
    SUBCASE("examples")
    {
        auto g = ColoredGraph::constant(5, 2, 2);
        CHECK(distance_to_property(g, std::vector{triangle1()}).distance == 0);
        auto r = distance_to_property(triangle1(), std::vector{triangle1()});
        CHECK(r.distance == 1);
        CHECK(avoids_family(r.witness, std::vector{triangle1()}));
        auto h = sample_rgraph(7, ColorDistribution({0.5, 0.5}), 11);
        long long ones = 0;
        for (Vertex u = 0; u < 7; ++u)
            for (Vertex v = u + 1; v < 7; ++v)
                ones += h.color(u, v) == 1;
        CHECK(distance_to_property(h, std::vector{edge1()}).distance == ones);
    }
    SUBCASE("agrees with every recoloring")
    {
        std::mt19937_64 rng(9);
        const std::vector<std::vector<ColoredGraph>> families{
            {triangle1()},
            {triangle1().with_color(0, 2, 2)},
            {ColoredGraph::constant(3, 2, 2), triangle1()},
            {ColoredGraph::constant(4, 2, 1).with_color(0, 1, 2)},
        };
        for (int t = 0; t < 80; ++t) {
            const auto & fam = families[static_cast<std::size_t>(t) % families.size()];
            auto g = sample_rgraph(3 + t % 3, ColorDistribution({0.6, 0.4}), rng());
            auto result = distance_to_property(g, fam);
            CHECK(result.distance == naive_distance(g, fam));
            CHECK(result.distance == edit_distance(g, result.witness));
            for (const auto & hh : fam)
                CHECK(! naive_contains(result.witness, hh));
        }
        for (int t = 0; t < 20; ++t) {
            const std::vector<ColoredGraph> fam{ColoredGraph::constant(3, 3, 1 + t % 3)};
            auto g = sample_rgraph(4, ColorDistribution({0.5, 0.3, 0.2}), rng());
            CHECK(distance_to_property(g, fam).distance == naive_distance(g, fam));
        }
    }
    SUBCASE("digraphs")
    {
        std::mt19937_64 rng(10);
        auto cyc = Digraph::constant(3, Arrow::none);
        cyc.set_arrow(0, 1, Arrow::fwd);
        cyc.set_arrow(1, 2, Arrow::fwd);
        cyc.set_arrow(2, 0, Arrow::fwd);
        const std::vector<std::vector<Digraph>> families{{cyc}, {Digraph::constant(2, Arrow::bi)}};
        for (int t = 0; t < 20; ++t) {
            const auto & fam = families[static_cast<std::size_t>(t) % 2];
            auto g = sample_digraph(3 + t % 2, ArrowDistribution(0.3, 0.25), rng());
            auto result = distance_to_property(g, fam);
            CHECK(result.distance == naive_digraph_distance(g, fam));
            CHECK(avoids_family(result.witness, fam));
        }
        // Tournament palette: a bi pair must become an arrow.
        auto t = Digraph::constant(3, Arrow::fwd).with_arrow(0, 1, Arrow::bi);
        auto res = distance_to_property(t, std::vector{Digraph::constant(2, Arrow::bi)}, {0, PaletteId::P4});
        CHECK(res.distance == 1);
        CHECK(res.witness.arrow(0, 1) != Arrow::none);
    }
    SUBCASE("determinism and errors")
    {
        auto g = sample_rgraph(5, ColorDistribution({0.5, 0.5}), 3);
        auto a = distance_to_property(g, std::vector{triangle1(), ColoredGraph::constant(3, 2, 2)});
        auto b = distance_to_property(g, std::vector{triangle1(), ColoredGraph::constant(3, 2, 2)});
        CHECK(a.witness == b.witness);
        // Every 2-coloring of K6 has a monochromatic triangle.
        CHECK(error_of([] {
            (void)distance_to_property(ColoredGraph::constant(6, 2, 1), std::vector{triangle1(), ColoredGraph::constant(3, 2, 2)});
        }) == ErrorKind::EmptyProperty);
        CHECK(error_of([] { (void)distance_to_property(ColoredGraph::constant(8, 2, 1), std::vector{triangle1()}); })
            == ErrorKind::TooLargeForExact);
        CHECK(error_of([] { (void)distance_to_property(Digraph::constant(7, Arrow::bi), std::vector{Digraph::constant(2, Arrow::bi)}); })
            == ErrorKind::TooLargeForExact);
        CHECK(error_of([] { (void)distance_to_property(triangle1(), std::vector<ColoredGraph>{}); }) == ErrorKind::EmptyFamily);
        CHECK(error_of([] { (void)distance_to_property(triangle1(), std::vector{ColoredGraph::constant(2, 3, 1)}); })
            == ErrorKind::KindMismatch);
    }
}

TEST_CASE("fit_to_type")
{
    SUBCASE("examples")
    {
        auto g = sample_rgraph(10, ColorDistribution({0.5, 0.5}), 12);
        long long ones = 0;
        for (Vertex u = 0; u < 10; ++u)
            for (Vertex v = u + 1; v < 10; ++v)
                ones += g.color(u, v) == 1;
        auto fit = fit_to_type(g, one_vertex(c2), FiberAssignment::balanced());
        CHECK(fit.cost == ones);
        CHECK(fit.fitted == ColoredGraph::constant(10, 2, 2));

        auto again = fit_to_type(fit.fitted, one_vertex(c2), FiberAssignment::balanced());
        CHECK(again.cost == 0);

        auto k = TypeGraph::rtype(2, 2);
        k.set_self(0, c1);
        k.set_self(1, c1);
        k.set_edge(0, 1, c2);
        auto conformant = ColoredGraph::constant(6, 2, 1);
        for (Vertex u = 0; u < 6; ++u)
            for (Vertex v = u + 1; v < 6; ++v)
                if (u % 2 != v % 2)
                    conformant.set_color(u, v, 2);
        CHECK(fit_to_type(conformant, k, FiberAssignment::balanced()).cost == 0);
        CHECK(fit_to_type(conformant, k, FiberAssignment::explicit_of({0, 1, 0, 1, 0, 1})).cost == 0);
        CHECK(fit_to_type(conformant, k, FiberAssignment::explicit_of({0, 0, 0, 1, 1, 1})).cost > 0);
        auto best = fit_to_type(conformant, k, FiberAssignment::best_of(20, 3));
        CHECK(best.cost <= fit_to_type(conformant, k, FiberAssignment::explicit_of({0, 0, 0, 1, 1, 1})).cost);
        CHECK(best.cost == edit_distance(conformant, best.fitted));
    }
    SUBCASE("digraph fibers with one arrow follow vertex order")
    {
        auto g = sample_digraph(6, ArrowDistribution(0.25, 0.25), 4);
        auto k = TypeGraph::dirtype(PaletteId::P0, 1);
        k.set_self(0, s_none | s_fwd);
        auto fit = fit_to_type(g, k, FiberAssignment::balanced());
        for (Vertex u = 0; u < 6; ++u)
            for (Vertex v = u + 1; v < 6; ++v) {
                CHECK((fit.fitted.arrow(u, v) == Arrow::none || fit.fitted.arrow(u, v) == Arrow::fwd));
                if (g.arrow(u, v) == Arrow::none || g.arrow(u, v) == Arrow::fwd)
                    CHECK(fit.fitted.arrow(u, v) == g.arrow(u, v));
            }
        CHECK(embeds(fit.fitted, k).embeds);
    }
    SUBCASE("sandwich against the exact distance for n <= 6")
    {
        const std::vector<ColoredGraph> fam{triangle1()};
        auto types = enumerate_types(TypeSpace::rtypes(2), 3, fam);
        REQUIRE(! types.types.empty());
        std::mt19937_64 rng(13);
        for (int t = 0; t < 60; ++t) {
            const int n = 4 + t % 3;
            auto g = sample_rgraph(n, ColorDistribution({0.6, 0.4}), rng());
            const long long exact = distance_to_property(g, fam).distance;
            for (const auto & k : types.types) {
                auto fit = fit_to_type(g, k, FiberAssignment::best_of(3, static_cast<std::uint64_t>(t)));
                CHECK(exact <= fit.cost);
                CHECK(! naive_contains(fit.fitted, triangle1()));
            }
        }
    }
    SUBCASE("errors")
    {
        auto g = ColoredGraph::constant(4, 2, 1);
        CHECK(error_of([&] { (void)fit_to_type(g, one_vertex(c1, 3), FiberAssignment::balanced()); }) == ErrorKind::KindMismatch);
        CHECK(error_of([&] { (void)fit_to_type(g, one_vertex(c1), FiberAssignment::explicit_of({0, 0, 1, 0})); }) == ErrorKind::BadPartition);
        CHECK(error_of([&] { (void)fit_to_type(g, one_vertex(c1), FiberAssignment::explicit_of({0, 0})); }) == ErrorKind::BadPartition);
    }
}

TEST_CASE("lower_bound_fk")
{
    TypeFamily fam{TypeSpace::rtypes(2), 1, {one_vertex(c2)}};
    auto lb = lower_bound_fk(ColorDistribution({0.5, 0.5}), fam, 10);
    CHECK(lb.f == doctest::Approx(0.5));
    CHECK(lb.value == doctest::Approx(22.5));
    CHECK(! lb.error_terms);

    CHECK(lower_bound_fk(ColorDistribution({0.0, 1.0}), fam, 10).value == doctest::Approx(0.0));

    auto k2 = TypeGraph::rtype(2, 2);
    k2.set_self(0, c1);
    k2.set_self(1, c2);
    k2.set_edge(0, 1, c12);
    TypeFamily two{TypeSpace::rtypes(2), 2, {one_vertex(c2), k2}};
    for (double p1 : {0.1, 0.5, 0.9}) {
        const ColorDistribution p({p1, 1.0 - p1});
        auto best = lower_bound_fk(p, two, 20, 0.1);
        CHECK(best.f == doctest::Approx(std::max(f_k(one_vertex(c2), p), f_k(k2, p))));
        CHECK(best.value == doctest::Approx(best.f * 190));
        REQUIRE(best.error_terms);
        CHECK(best.error_terms->total > 0.0);
    }
    CHECK(error_of([] { (void)lower_bound_fk(ColorDistribution({0.5, 0.5}), TypeFamily{TypeSpace::rtypes(2), 1, {}}, 10); })
        == ErrorKind::EmptyFamily);

    SUBCASE("error terms")
    {
        auto e = finite_error_terms(12, 3, 2, 0.1);
        CHECK(e.uneven == doctest::Approx(66 - 4.5 * 16));
        CHECK(e.diagonal == doctest::Approx(1.5 * 16));
        CHECK(e.fluctuation == doctest::Approx(2 * 3 * std::pow(4.0, 5.0 / 3.0)));
        CHECK(e.color_slack == doctest::Approx(0.1 * 2 * 3 * 16));
        CHECK(e.irregular == doctest::Approx(0.1 * 9 * 16));
        CHECK(e.total == doctest::Approx(e.uneven + e.diagonal + e.fluctuation + e.color_slack + e.irregular));
    }
}

TEST_CASE("construct_type_from_partition")
{
    auto range = [](int a, int b) {
        VertexSet v(static_cast<std::size_t>(b - a));
        std::iota(v.begin(), v.end(), a);
        return v;
    };
    const auto e = EFunction::constant(0.25);
    SUBCASE("monochromatic graph")
    {
        auto g = ColoredGraph::constant(12, 2, 2);
        auto out = construct_type_from_partition(g, {range(0, 4), range(4, 8), range(8, 12)}, 0.3, e, std::vector{edge1()});
        REQUIRE(out.type);
        for (int x = 0; x < 3; ++x) {
            CHECK(out.type->label(x, x) == c2);
            for (int y = 0; y < 3; ++y)
                if (x != y)
                    CHECK(out.type->label(x, y) == c2);
        }
        CHECK(out.failure.empty());
    }
    SUBCASE("one-vertex patterns of every color")
    {
        auto g = sample_rgraph(12, ColorDistribution({0.5, 0.5}), 1);
        auto out = construct_type_from_partition(g, {range(0, 6), range(6, 12)}, 0.3, e,
            std::vector{ColoredGraph::constant(1, 2, 1), ColoredGraph::constant(1, 2, 2)});
        CHECK(! out.type);
        CHECK(out.failure == "NoValidVertexLabels");
        CHECK(out.assignments_tried == 4);
    }
    SUBCASE("planted two blocks against the color-1 triangle")
    {
        // Color 1 inside each block, color 2 across.
        auto g = ColoredGraph::constant(16, 2, 2);
        for (Vertex u = 0; u < 16; ++u)
            for (Vertex v = u + 1; v < 16; ++v)
                if ((u < 8) == (v < 8))
                    g.set_color(u, v, 1);
        auto out = construct_type_from_partition(g, {range(0, 4), range(8, 12)}, 0.3, e, std::vector{triangle1()});
        REQUIRE(out.type);
        CHECK(out.type->label(0, 1) == c2);
        CHECK(! naive_embeds(triangle1(), *out.type));
        CHECK_NOTHROW(validate_type(*out.type));
        CHECK(out.irregular_pairs == 0);
        CHECK(out.fallback_labels == 0);
    }
    SUBCASE("digraph and the cap")
    {
        auto g = sample_digraph(20, ArrowDistribution(0.25, 0.25), 2);
        const std::vector<Digraph> bi_triangle{Digraph::constant(3, Arrow::bi)};
        auto out = construct_type_from_partition(g, {range(0, 10), range(10, 20)}, 0.1, e, bi_triangle);
        REQUIRE(out.type);
        CHECK(out.type->label(0, 1) == 0x0f);
        CHECK(! (out.type->label(0, 0) & s_bi));
        CHECK(! naive_embeds(bi_triangle.front(), *out.type));
        // A bi pair across clusters cannot be kept out by self labels.
        auto stuck = construct_type_from_partition(g, {range(0, 10), range(10, 20)}, 0.1, e, std::vector{Digraph::constant(2, Arrow::bi)});
        CHECK(! stuck.type);
        CHECK(stuck.assignments_tried == 14 * 14);
        CHECK(error_of([&] {
            (void)construct_type_from_partition(g, {range(0, 5), range(5, 10), range(10, 15), range(15, 20)}, 0.1, e,
                std::vector{Digraph::constant(2, Arrow::bi)}, {}, 100);
        }) == ErrorKind::SearchSpaceTooLarge);
        CHECK(error_of([&] {
            (void)construct_type_from_partition(g, {range(0, 5), range(4, 10)}, 0.1, e, std::vector{Digraph::constant(2, Arrow::bi)});
        }) == ErrorKind::OverlappingSets);
    }
}

TEST_CASE("type files")
{
    std::mt19937_64 rng(14);
    for (int t = 0; t < 40; ++t) {
        const auto space = t % 2 ? TypeSpace::rtypes(2 + t % 4) : TypeSpace::dirtypes(static_cast<PaletteId>(t % 5));
        auto k = random_type(space, 1 + t % 4, rng);
        const auto text = type_to_text(k);
        CHECK(type_from_text(text) == k);
        CHECK(type_to_text(type_from_text(text)) == text);
    }
    auto k = type_from_text(R"({"kind":"rtype","r":2,"k":2,"self":[[1],[2]],"edges":[{"u":0,"v":1,"labels":[1,2]}]})");
    CHECK(k.label(0, 0) == c1);
    CHECK(k.label(1, 1) == c2);
    CHECK(k.label(1, 0) == c12);
    auto d = type_from_text(R"({"kind":"dirtype","palette":"P0","k":2,"self":[["none"],["fwd"]],"edges":[{"u":0,"v":1,"labels":["fwd","bi"]}]})");
    CHECK(d.label(1, 0) == (s_back | s_bi));
    CHECK_NOTHROW(validate_type(d));
    auto bad = type_from_text(
        R"({"kind":"dirtype","palette":"P0","k":2,"self":[["none"],["fwd"]],"edges":[{"u":0,"v":1,"labels":["fwd"]},{"u":1,"v":0,"labels":["fwd"]}]})");
    CHECK(error_of([&] { validate_type(bad); }) == ErrorKind::ArrowClosureViolation);
    CHECK(type_from_text(type_to_text(bad)) == bad);
    CHECK(error_of([] { (void)type_from_text("{\"kind\":\"rtype\",\"r\":2,\"k\":1,\"self\":[[3]]}"); }) == ErrorKind::LabelOutOfRange);
    CHECK(error_of([] { (void)type_from_text("[1"); }) == ErrorKind::ParseError);

    auto fam = enumerate_types(TypeSpace::rtypes(2), 2, std::vector{triangle1()});
    auto back = family_from_json(family_to_json(fam));
    CHECK(back.types == fam.types);
    CHECK(back.space == fam.space);
    CHECK(back.size_bound == 2);
}
