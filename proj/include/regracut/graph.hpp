#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace regracut {

using Vertex = int;
using VertexSet = std::vector<Vertex>;

/// 1-based color of an r-graph, in {1..r}.
using Color = int;

/// Zero-based index into a density vector. For r-graphs this is color - 1;
/// for digraphs it is the numeric value of an Arrow.
using ColorIndex = int;

/// Arrow states of a digraph, in density-vector order (none, bi, back, fwd).
///
/// As an ordered color c(v,w): `fwd` means the arc v -> w only, `back`
/// means w -> v only. As the stored state of an unordered pair {u,v} with
/// u < v, `fwd` means the arc goes from the lower to the higher index.
enum class Arrow : std::uint8_t { none = 0, bi = 1, back = 2, fwd = 3 };

inline constexpr int arrow_count = 4;

std::string_view to_token(Arrow a);
std::optional<Arrow> arrow_from_token(std::string_view token);

/// The ordered color seen from the other endpoint.
constexpr Arrow reverse(Arrow a)
{
    switch (a) {
    case Arrow::back: return Arrow::fwd;
    case Arrow::fwd: return Arrow::back;
    default: return a;
    }
}

struct ColorAssignment {
    Vertex u;
    Vertex v;
    Color color;
};

struct StateAssignment {
    Vertex u;
    Vertex v;
    Arrow state;
};

/// Complete graph on n labeled vertices with every unordered pair carrying a
/// color in {1..r}.
class ColoredGraph {
public:
    /// Validates completeness; throws MissingPair, DuplicatePair or
    /// ColorOutOfRange.
    static ColoredGraph from_assignments(int n, int r, std::span<const ColorAssignment> assignments);

    /// Every pair gets `color`.
    static ColoredGraph constant(int n, int r, Color color);

    int vertex_count() const { return n_; }
    int r() const { return r_; }
    int color_count() const { return r_; }

    Color color(Vertex u, Vertex v) const { return static_cast<Color>(colors_[index(u, v)]) + 1; }
    ColorIndex ordered_color(Vertex u, Vertex v) const { return colors_[index(u, v)]; }

    /// Returns a copy with the pair {u,v} recolored.
    ColoredGraph with_color(Vertex u, Vertex v, Color color) const;
    void set_color(Vertex u, Vertex v, Color color);

    /// All pairs u < v in lexicographic order.
    std::vector<ColorAssignment> assignments() const;

    /// Induced subgraph on `vertices`, relabeled 0..|vertices|-1 in order.
    ColoredGraph induced(std::span<const Vertex> vertices) const;

    friend bool operator==(const ColoredGraph &, const ColoredGraph &) = default;

private:
    ColoredGraph(int n, int r);
    std::size_t index(Vertex u, Vertex v) const { return static_cast<std::size_t>(u) * n_ + v; }

    int n_ = 0;
    int r_ = 2;
    std::vector<std::uint8_t> colors_; // n x n, symmetric, 0-based, diagonal unused
};

/// Complete graph on n labeled vertices whose unordered pairs carry one of
/// the four arrow states.
class Digraph {
public:
    /// Requires u < v in every assignment; throws MissingPair, DuplicatePair
    /// or BadState.
    static Digraph from_assignments(int n, std::span<const StateAssignment> assignments);

    static Digraph constant(int n, Arrow state);

    int vertex_count() const { return n_; }
    int color_count() const { return arrow_count; }

    /// The stored state of {u,v} relative to (min(u,v), max(u,v)).
    Arrow pair_state(Vertex u, Vertex v) const;

    /// The ordered color c(v,w).
    Arrow arrow(Vertex v, Vertex w) const { return static_cast<Arrow>(arrows_[index(v, w)]); }
    ColorIndex ordered_color(Vertex v, Vertex w) const { return arrows_[index(v, w)]; }

    /// Sets the ordered color c(v,w) (and therefore c(w,v)).
    void set_arrow(Vertex v, Vertex w, Arrow a);
    Digraph with_arrow(Vertex v, Vertex w, Arrow a) const;

    std::vector<StateAssignment> assignments() const;

    Digraph induced(std::span<const Vertex> vertices) const;

    friend bool operator==(const Digraph &, const Digraph &) = default;

private:
    explicit Digraph(int n);
    std::size_t index(Vertex u, Vertex v) const { return static_cast<std::size_t>(u) * n_ + v; }

    int n_ = 0;
    std::vector<std::uint8_t> arrows_; // n x n ordered colors; arrows_[v][w] == reverse(arrows_[w][v])
};

/// Anything with a complete ordered pair coloring: both graph kinds model it.
template <typename G>
concept PairColoring = requires(const G & g, Vertex v, Vertex w) {
    { g.vertex_count() } -> std::convertible_to<int>;
    { g.color_count() } -> std::convertible_to<int>;
    { g.ordered_color(v, w) } -> std::convertible_to<ColorIndex>;
};

/// Number of unordered pairs {u,v} on which the two colorings differ.
template <PairColoring G>
long long differing_pairs(const G & a, const G & b)
{
    long long count = 0;
    for (Vertex u = 0; u < a.vertex_count(); ++u)
        for (Vertex v = u + 1; v < a.vertex_count(); ++v)
            if (a.ordered_color(u, v) != b.ordered_color(u, v))
                ++count;
    return count;
}

} // namespace regracut
