#include "regracut/types.hpp"

#include "regracut/error.hpp"
#include "regracut/parallel.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>
#include <type_traits>

namespace regracut {

std::string_view to_string(TypeKind kind)
{
    return kind == TypeKind::rtype ? "rtype" : "dirtype";
}

TypeSpace TypeSpace::rtypes(int r)
{
    if (r < 2 || r > max_type_colors)
        fail(ErrorKind::LabelOutOfRange, "types support 2 <= r <= " + std::to_string(max_type_colors));
    return TypeSpace{TypeKind::rtype, r, PaletteId::P0};
}

TypeSpace TypeSpace::dirtypes(PaletteId p)
{
    return TypeSpace{TypeKind::dirtype, arrow_count, p};
}

LabelMask TypeSpace::universe() const
{
    if (kind == TypeKind::dirtype)
        return regracut::palette(this->palette).allowed;
    return static_cast<LabelMask>((1u << static_cast<unsigned>(r)) - 1u);
}

TypeGraph::TypeGraph(TypeSpace space, int k) : space_(space), k_(k)
{
    if (space_.kind == TypeKind::rtype && (space_.r < 2 || space_.r > max_type_colors))
        fail(ErrorKind::LabelOutOfRange, "types support 2 <= r <= " + std::to_string(max_type_colors));
    if (k < 1)
        fail(ErrorKind::BadOrder, "a type needs at least one vertex");
    labels_.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0);
}

void TypeGraph::set_edge(int x, int y, LabelMask mask)
{
    labels_[index(x, y)] = mask;
    labels_[index(y, x)] = mirror(mask, kind());
}

TypeGraph TypeGraph::permuted(const std::vector<int> & perm) const
{
    TypeGraph out(space_, k_);
    for (int x = 0; x < k_; ++x)
        for (int y = 0; y < k_; ++y)
            out.labels_[out.index(perm[static_cast<std::size_t>(x)], perm[static_cast<std::size_t>(y)])] = label(x, y);
    return out;
}

LabelMask mirror(LabelMask mask, TypeKind kind)
{
    if (kind == TypeKind::rtype)
        return mask;
    const LabelMask fixed = mask & static_cast<LabelMask>(~arrow_pair_bits);
    const LabelMask back = (mask & arrow_bit(Arrow::back)) ? arrow_bit(Arrow::fwd) : 0;
    const LabelMask fwd = (mask & arrow_bit(Arrow::fwd)) ? arrow_bit(Arrow::back) : 0;
    return static_cast<LabelMask>(fixed | back | fwd);
}

namespace {

void check_labels(const TypeGraph & k, bool proper_self)
{
    const LabelMask universe = k.space().universe();
    const LabelMask symmetric = k.kind() == TypeKind::rtype ? universe : static_cast<LabelMask>(~arrow_pair_bits);
    auto where = [](int x, int y) { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; };

    for (int x = 0; x < k.k(); ++x)
        for (int y = 0; y < k.k(); ++y) {
            const LabelMask m = k.label(x, y);
            if (m == 0)
                fail(ErrorKind::EmptyLabel, "empty label at " + where(x, y));
            if (m & ~universe)
                fail(ErrorKind::LabelOutOfRange, "label at " + where(x, y) + " leaves the color set");
        }
    for (int x = 0; x < k.k() && proper_self; ++x)
        if (k.label(x, x) == universe)
            fail(ErrorKind::FullSelfLabel, "self label of vertex " + std::to_string(x) + " is the full color set");
    for (int x = 0; x < k.k(); ++x)
        for (int y = x + 1; y < k.k(); ++y) {
            const LabelMask a = k.label(x, y), b = k.label(y, x);
            if ((a & symmetric) != (b & symmetric))
                fail(ErrorKind::SymmetryViolation, "labels at " + where(x, y) + " and " + where(y, x) + " differ");
            if (k.kind() == TypeKind::dirtype && (a & arrow_pair_bits) != (mirror(b, TypeKind::dirtype) & arrow_pair_bits))
                fail(ErrorKind::ArrowClosureViolation, "arrows at " + where(x, y) + " and " + where(y, x) + " do not mirror");
        }
}

} // namespace

void validate_type(const TypeGraph & k)
{
    check_labels(k, true);
}

namespace {

std::vector<std::vector<int>> all_permutations(int k)
{
    std::vector<std::vector<int>> out;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do
        out.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// True when no vertex relabeling yields a lexicographically smaller matrix.
// perm[x] is the old vertex placed at new position x.
bool is_canonical(const std::vector<LabelMask> & m, int k, const std::vector<std::vector<int>> & perms)
{
    for (const auto & perm : perms) {
        for (int x = 0; x < k; ++x)
            for (int y = 0; y < k; ++y) {
                const LabelMask moved = m[static_cast<std::size_t>(perm[static_cast<std::size_t>(x)] * k + perm[static_cast<std::size_t>(y)])];
                const LabelMask here = m[static_cast<std::size_t>(x * k + y)];
                if (moved != here) {
                    if (moved < here)
                        return false;
                    goto next;
                }
            }
    next:;
    }
    return true;
}

template <PairColoring G>
void check_compatible(const G & h, const TypeSpace & space)
{
    if constexpr (std::is_same_v<G, Digraph>) {
        if (space.kind != TypeKind::dirtype)
            fail(ErrorKind::KindMismatch, "digraph pattern against an r-type");
    } else {
        if (space.kind != TypeKind::rtype)
            fail(ErrorKind::KindMismatch, "r-graph pattern against a dir-type");
        if (h.color_count() != space.r)
            fail(ErrorKind::KindMismatch,
                "pattern has r=" + std::to_string(h.color_count()) + " but the type has r=" + std::to_string(space.r));
    }
}

// Depth-first search state for embeds.
template <PairColoring G>
struct EmbedSearch {
    const G & h;
    const TypeGraph & k;
    std::vector<int> map;

    bool fiber_allows(Vertex w, Vertex v, int u) const
    {
        const LabelMask self = k.label(u, u);
        const ColorIndex c = h.ordered_color(w, v);
        if constexpr (std::is_same_v<G, Digraph>) {
            if (c == static_cast<int>(Arrow::back) || c == static_cast<int>(Arrow::fwd))
                return (self & arrow_pair_bits) != 0;
        }
        return (self & label_bit(c)) != 0;
    }

    // With v just added to fiber u: does some cycle of oriented arcs in the
    // fiber pass through v?
    bool closes_cycle(Vertex v, int u) const
    {
        const int n = h.vertex_count();
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<Vertex> stack{v};
        while (! stack.empty()) {
            const Vertex x = stack.back();
            stack.pop_back();
            for (Vertex y = 0; y <= v; ++y) {
                if (y == x || map[static_cast<std::size_t>(y)] != u)
                    continue;
                if (h.ordered_color(x, y) != static_cast<int>(Arrow::fwd))
                    continue;
                if (y == v)
                    return true;
                if (! seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    stack.push_back(y);
                }
            }
        }
        return false;
    }

    bool place(Vertex v)
    {
        if (v == h.vertex_count())
            return true;
        for (int u = 0; u < k.k(); ++u) {
            bool ok = true;
            for (Vertex w = 0; w < v && ok; ++w) {
                const int uw = map[static_cast<std::size_t>(w)];
                ok = uw == u ? fiber_allows(w, v, u) : (k.label(uw, u) & label_bit(h.ordered_color(w, v))) != 0;
            }
            if (! ok)
                continue;
            map[static_cast<std::size_t>(v)] = u;
            if constexpr (std::is_same_v<G, Digraph>) {
                if (std::popcount(static_cast<unsigned>(k.label(u, u) & arrow_pair_bits)) == 1 && closes_cycle(v, u)) {
                    map[static_cast<std::size_t>(v)] = -1;
                    continue;
                }
            }
            if (place(v + 1))
                return true;
            map[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    }
};

std::vector<LabelMask> nonempty_subsets(LabelMask universe, bool proper)
{
    std::vector<LabelMask> out;
    for (unsigned m = 1; m <= universe; ++m)
        if ((m & ~static_cast<unsigned>(universe)) == 0 && (! proper || m != universe))
            out.push_back(static_cast<LabelMask>(m));
    return out;
}

long long saturating_mul(long long a, long long b, long long limit)
{
    if (a > 0 && b > limit / a)
        return limit + 1;
    return std::min(a * b, limit + 1);
}

} // namespace

TypeGraph canonical_form(const TypeGraph & k)
{
    TypeGraph best = k;
    for (const auto & perm : all_permutations(k.k())) {
        // permuted() sends old x to perm[x]; canonical order compares the
        // relabeled matrices directly.
        TypeGraph candidate = k.permuted(perm);
        if (candidate.labels() < best.labels())
            best = std::move(candidate);
    }
    return best;
}

template <PairColoring G>
void validate_family(const ForbiddenFamily<G> & family)
{
    if (family.empty())
        fail(ErrorKind::EmptyFamily, "forbidden family is empty");
    for (const auto & h : family)
        if (h.color_count() != family.front().color_count())
            fail(ErrorKind::KindMismatch, "forbidden patterns use different numbers of colors");
}

template <PairColoring G>
TypeSpace default_space(const G & g)
{
    if constexpr (std::is_same_v<G, Digraph>)
        return TypeSpace::dirtypes(PaletteId::P0);
    else
        return TypeSpace::rtypes(g.color_count());
}

template <PairColoring G>
EmbedResult embeds(const G & h, const TypeGraph & k)
{
    check_compatible(h, k.space());
    EmbedSearch<G> search{h, k, std::vector<int>(static_cast<std::size_t>(h.vertex_count()), -1)};
    EmbedResult result;
    result.embeds = search.place(0);
    if (result.embeds)
        result.map = std::move(search.map);
    return result;
}

template <PairColoring G>
TypeFamily enumerate_types(const TypeSpace & space, int k_max, const ForbiddenFamily<G> & family, long long cap)
{
    validate_family(family);
    for (const auto & h : family)
        check_compatible(h, space);
    if (k_max < 1)
        fail(ErrorKind::BadOrder, "k_max must be at least 1");

    const auto self_options = nonempty_subsets(space.universe(), true);
    const auto edge_options = nonempty_subsets(space.universe(), false);
    std::vector<long long> counts;
    long long total = 0;
    for (int k = 1; k <= k_max; ++k) {
        long long count = 1;
        for (int i = 0; i < k; ++i)
            count = saturating_mul(count, static_cast<long long>(self_options.size()), cap);
        for (int i = 0; i < k * (k - 1) / 2; ++i)
            count = saturating_mul(count, static_cast<long long>(edge_options.size()), cap);
        total += count;
        if (total > cap)
            fail(ErrorKind::SearchSpaceTooLarge,
                "enumerating types up to k=" + std::to_string(k_max) + " exceeds " + std::to_string(cap) + " candidates");
        counts.push_back(count);
    }

    TypeFamily out{space, k_max, {}};
    for (int k = 1; k <= k_max; ++k) {
        const auto perms = all_permutations(k);
        const std::size_t count = static_cast<std::size_t>(counts[static_cast<std::size_t>(k - 1)]);
        auto decode = [&](std::size_t t) {
            TypeGraph type(space, k);
            for (int x = 0; x < k; ++x) {
                type.set_self(x, self_options[t % self_options.size()]);
                t /= self_options.size();
            }
            for (int x = 0; x < k; ++x)
                for (int y = x + 1; y < k; ++y) {
                    type.set_edge(x, y, edge_options[t % edge_options.size()]);
                    t /= edge_options.size();
                }
            return type;
        };
        std::vector<char> keep(count, 0);
        parallel_for(count, [&](std::size_t t) {
            const TypeGraph type = decode(t);
            if (! is_canonical(type.labels(), k, perms))
                return;
            for (const auto & h : family)
                if (embeds(h, type).embeds)
                    return;
            keep[t] = 1;
        });
        for (std::size_t t = 0; t < count; ++t)
            if (keep[t])
                out.types.push_back(decode(t));
    }
    return out;
}

double f_k(const TypeGraph & k, const ColorDistribution & p)
{
    if (k.kind() != TypeKind::rtype)
        fail(ErrorKind::KindMismatch, "color distribution given for a dir-type");
    if (p.r() != k.space().r)
        fail(ErrorKind::DimensionMismatch,
            "distribution has " + std::to_string(p.r()) + " colors, type has r=" + std::to_string(k.space().r));
    check_labels(k, false);
    double total = 0.0;
    for (LabelMask m : k.labels()) {
        double entry = 1.0;
        for (int c = 0; c < p.r(); ++c)
            if (m & label_bit(c))
                entry -= p.values()[static_cast<std::size_t>(c)];
        total += entry;
    }
    return total / (static_cast<double>(k.k()) * k.k());
}

double f_k(const TypeGraph & k, const ArrowDistribution & pq)
{
    if (k.kind() != TypeKind::dirtype)
        fail(ErrorKind::KindMismatch, "arrow distribution given for an r-type");
    check_labels(k, false);
    double total = 0.0;
    for (LabelMask m : k.labels()) {
        double entry = 1.0;
        if (m & arrow_bit(Arrow::none))
            entry -= pq.none();
        if (m & arrow_bit(Arrow::bi))
            entry -= pq.p();
        entry -= pq.q() * std::popcount(static_cast<unsigned>(m & arrow_pair_bits));
        total += entry;
    }
    return total / (static_cast<double>(k.k()) * k.k());
}

#define REGRACUT_INSTANTIATE(G)                                                                                 \
    template void validate_family<G>(const ForbiddenFamily<G> &);                                              \
    template TypeSpace default_space<G>(const G &);                                                             \
    template EmbedResult embeds<G>(const G &, const TypeGraph &);                                              \
    template TypeFamily enumerate_types<G>(const TypeSpace &, int, const ForbiddenFamily<G> &, long long);

REGRACUT_INSTANTIATE(ColoredGraph)
REGRACUT_INSTANTIATE(Digraph)

#undef REGRACUT_INSTANTIATE

} // namespace regracut
