#pragma once

#include "regracut/graph.hpp"
#include "regracut/palette.hpp"
#include "regracut/sampling.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace regracut {

/// Bit c stands for color index c (r-types) or Arrow(c) (dir-types).
using LabelMask = std::uint8_t;

constexpr LabelMask label_bit(ColorIndex c) { return static_cast<LabelMask>(1u << static_cast<unsigned>(c)); }

enum class TypeKind : std::uint8_t { rtype, dirtype };

std::string_view to_string(TypeKind kind);

inline constexpr int max_type_colors = 8;

/// Which types are meant: r-types for a given r, or dir-types over a palette.
struct TypeSpace {
    TypeKind kind = TypeKind::rtype;
    int r = 2;
    PaletteId palette = PaletteId::P0;

    static TypeSpace rtypes(int r);
    static TypeSpace dirtypes(PaletteId p);

    /// All colors 1..r, or the palette's states.
    LabelMask universe() const;
    /// Size of the ordered-color alphabet: r, or 4 for digraphs.
    int color_count() const { return kind == TypeKind::rtype ? r : arrow_count; }

    friend bool operator==(const TypeSpace &, const TypeSpace &) = default;
};

/// A complete graph on k vertices whose vertices and ordered pairs carry
/// sets of colors. phi(x, x) is the self label. Labels start empty, so a
/// fresh type fails validation until every label is set.
class TypeGraph {
public:
    /// Throws LabelOutOfRange unless 2 <= r <= 8, BadOrder unless k >= 1.
    TypeGraph(TypeSpace space, int k);

    static TypeGraph rtype(int r, int k) { return TypeGraph(TypeSpace::rtypes(r), k); }
    static TypeGraph dirtype(PaletteId p, int k) { return TypeGraph(TypeSpace::dirtypes(p), k); }

    const TypeSpace & space() const { return space_; }
    TypeKind kind() const { return space_.kind; }
    int k() const { return k_; }

    LabelMask label(int x, int y) const { return labels_[index(x, y)]; }

    void set_self(int x, LabelMask mask) { labels_[index(x, x)] = mask; }
    /// Sets phi(x, y) = mask and phi(y, x) to its mirror image.
    void set_edge(int x, int y, LabelMask mask);
    /// Sets the single ordered entry phi(x, y).
    void set_raw(int x, int y, LabelMask mask) { labels_[index(x, y)] = mask; }

    /// Label matrix under the relabeling x -> perm[x].
    TypeGraph permuted(const std::vector<int> & perm) const;

    const std::vector<LabelMask> & labels() const { return labels_; }

    friend bool operator==(const TypeGraph &, const TypeGraph &) = default;

private:
    std::size_t index(int x, int y) const
    {
        return static_cast<std::size_t>(x) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(y);
    }

    TypeSpace space_;
    int k_;
    std::vector<LabelMask> labels_;
};

/// The label seen from the other endpoint: unchanged for r-types; for
/// dir-types fwd and back trade places.
LabelMask mirror(LabelMask mask, TypeKind kind);

/// Throws EmptyLabel, FullSelfLabel, SymmetryViolation,
/// ArrowClosureViolation or LabelOutOfRange.
void validate_type(const TypeGraph & k);

/// Lexicographically smallest label matrix over all vertex permutations.
TypeGraph canonical_form(const TypeGraph & k);

/// A finite list of forbidden induced patterns.
template <PairColoring G>
using ForbiddenFamily = std::vector<G>;

/// Throws EmptyFamily or KindMismatch (members on different palettes).
template <PairColoring G>
void validate_family(const ForbiddenFamily<G> & family);

/// The type space matching a pattern kind: r-types for r-graphs, dir-types
/// over P0 for digraphs.
template <PairColoring G>
TypeSpace default_space(const G & g);

struct EmbedResult {
    bool embeds = false;
    /// map[v] is the type vertex receiving v.
    std::vector<int> map;
};

/// Searches for a map V(H) -> U respecting every label; for dir-types each
/// fiber must also meet the self-label conditions (oriented arcs acyclic
/// when exactly one arrow is allowed, none when neither is, no missing
/// none/bi states). Throws KindMismatch when H does not fit the type space.
template <PairColoring G>
EmbedResult embeds(const G & h, const TypeGraph & k);

struct TypeFamily {
    TypeSpace space;
    int size_bound = 0;
    std::vector<TypeGraph> types;
};

inline constexpr long long default_enumeration_cap = 5'000'000;

/// Every type with 1..k_max vertices, one per isomorphism class (canonical
/// form), into which no member of `family` embeds. Throws
/// SearchSpaceTooLarge when more than `cap` label assignments would be
/// visited, EmptyFamily, KindMismatch.
template <PairColoring G>
TypeFamily enumerate_types(
    const TypeSpace & space, int k_max, const ForbiddenFamily<G> & family, long long cap = default_enumeration_cap);

/// (1/k^2) 1^T (J - sum_rho p_rho A_rho) 1 over all k^2 ordered entries,
/// diagonal included. A full self label is accepted here. Throws
/// KindMismatch, DimensionMismatch or the other validate_type errors.
double f_k(const TypeGraph & k, const ColorDistribution & p);

/// Dir-type form with weights (1 - p - 2q) for none, p for bi and q times
/// 0, 1 or 2 for the number of arrow directions in a label.
double f_k(const TypeGraph & k, const ArrowDistribution & pq);

} // namespace regracut
