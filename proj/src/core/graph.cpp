#include "regracut/graph.hpp"

#include "regracut/error.hpp"

#include <algorithm>
#include <string>

namespace regracut {

namespace {

    std::string pair_name(Vertex u, Vertex v)
    {
        return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
    }

    void check_vertex_pair(int n, Vertex u, Vertex v)
    {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            fail(ErrorKind::BadState, "invalid vertex pair " + pair_name(u, v) + " for n=" + std::to_string(n));
    }

} // namespace

std::string_view to_token(Arrow a)
{
    switch (a) {
    case Arrow::none: return "none";
    case Arrow::bi: return "bi";
    case Arrow::back: return "back";
    case Arrow::fwd: return "fwd";
    }
    return "?";
}

std::optional<Arrow> arrow_from_token(std::string_view token)
{
    if (token == "none") return Arrow::none;
    if (token == "bi") return Arrow::bi;
    if (token == "back") return Arrow::back;
    if (token == "fwd") return Arrow::fwd;
    return std::nullopt;
}

// ---------------------------------------------------------------- ColoredGraph

ColoredGraph::ColoredGraph(int n, int r) :
    n_(n), r_(r), colors_(static_cast<std::size_t>(n) * n, 0)
{
}

ColoredGraph ColoredGraph::from_assignments(int n, int r, std::span<const ColorAssignment> assignments)
{
    if (n < 1)
        fail(ErrorKind::BadOrder, "r-graph needs n >= 1");
    if (r < 2 || r > 255)
        fail(ErrorKind::ColorOutOfRange, "r must lie in [2,255], got " + std::to_string(r));

    ColoredGraph g(n, r);
    std::vector<bool> seen(static_cast<std::size_t>(n) * n, false);
    for (const auto & a : assignments) {
        if (a.u < 0 || a.v < 0 || a.u >= n || a.v >= n || a.u == a.v)
            fail(ErrorKind::MissingPair, "assignment names invalid pair " + pair_name(a.u, a.v));
        if (a.color < 1 || a.color > r)
            fail(ErrorKind::ColorOutOfRange, "color " + std::to_string(a.color) + " on " + pair_name(a.u, a.v));
        auto key = g.index(std::min(a.u, a.v), std::max(a.u, a.v));
        if (seen[key])
            fail(ErrorKind::DuplicatePair, "pair " + pair_name(a.u, a.v) + " assigned twice");
        seen[key] = true;
        g.set_color(a.u, a.v, a.color);
    }
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (! seen[g.index(u, v)])
                fail(ErrorKind::MissingPair, "pair " + pair_name(u, v) + " has no color");
    return g;
}

ColoredGraph ColoredGraph::constant(int n, int r, Color color)
{
    if (n < 1)
        fail(ErrorKind::BadOrder, "r-graph needs n >= 1");
    if (r < 2 || r > 255 || color < 1 || color > r)
        fail(ErrorKind::ColorOutOfRange, "color " + std::to_string(color) + " with r=" + std::to_string(r));
    ColoredGraph g(n, r);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            g.set_color(u, v, color);
    return g;
}

void ColoredGraph::set_color(Vertex u, Vertex v, Color color)
{
    check_vertex_pair(n_, u, v);
    if (color < 1 || color > r_)
        fail(ErrorKind::ColorOutOfRange, "color " + std::to_string(color));
    colors_[index(u, v)] = colors_[index(v, u)] = static_cast<std::uint8_t>(color - 1);
}

ColoredGraph ColoredGraph::with_color(Vertex u, Vertex v, Color color) const
{
    ColoredGraph copy = *this;
    copy.set_color(u, v, color);
    return copy;
}

std::vector<ColorAssignment> ColoredGraph::assignments() const
{
    std::vector<ColorAssignment> result;
    result.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = u + 1; v < n_; ++v)
            result.push_back({u, v, color(u, v)});
    return result;
}

ColoredGraph ColoredGraph::induced(std::span<const Vertex> vertices) const
{
    ColoredGraph g(static_cast<int>(vertices.size()), r_);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = 0; j < vertices.size(); ++j)
            if (i != j)
                g.colors_[g.index(static_cast<Vertex>(i), static_cast<Vertex>(j))] = colors_[index(vertices[i], vertices[j])];
    return g;
}

// ---------------------------------------------------------------- Digraph

Digraph::Digraph(int n) :
    n_(n), arrows_(static_cast<std::size_t>(n) * n, 0)
{
}

Digraph Digraph::from_assignments(int n, std::span<const StateAssignment> assignments)
{
    if (n < 1)
        fail(ErrorKind::BadOrder, "digraph needs n >= 1");

    Digraph g(n);
    std::vector<bool> seen(static_cast<std::size_t>(n) * n, false);
    for (const auto & a : assignments) {
        if (a.u < 0 || a.v >= n || a.u >= a.v)
            fail(ErrorKind::BadState, "digraph assignments need 0 <= u < v < n, got " + pair_name(a.u, a.v));
        if (static_cast<int>(a.state) >= arrow_count)
            fail(ErrorKind::BadState, "unknown state on " + pair_name(a.u, a.v));
        auto key = g.index(a.u, a.v);
        if (seen[key])
            fail(ErrorKind::DuplicatePair, "pair " + pair_name(a.u, a.v) + " assigned twice");
        seen[key] = true;
        g.set_arrow(a.u, a.v, a.state);
    }
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (! seen[g.index(u, v)])
                fail(ErrorKind::MissingPair, "pair " + pair_name(u, v) + " has no state");
    return g;
}

Digraph Digraph::constant(int n, Arrow state)
{
    if (n < 1)
        fail(ErrorKind::BadOrder, "digraph needs n >= 1");
    Digraph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            g.set_arrow(u, v, state);
    return g;
}

Arrow Digraph::pair_state(Vertex u, Vertex v) const
{
    return u < v ? arrow(u, v) : arrow(v, u);
}

void Digraph::set_arrow(Vertex v, Vertex w, Arrow a)
{
    check_vertex_pair(n_, v, w);
    arrows_[index(v, w)] = static_cast<std::uint8_t>(a);
    arrows_[index(w, v)] = static_cast<std::uint8_t>(reverse(a));
}

Digraph Digraph::with_arrow(Vertex v, Vertex w, Arrow a) const
{
    Digraph copy = *this;
    copy.set_arrow(v, w, a);
    return copy;
}

std::vector<StateAssignment> Digraph::assignments() const
{
    std::vector<StateAssignment> result;
    result.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = u + 1; v < n_; ++v)
            result.push_back({u, v, arrow(u, v)});
    return result;
}

Digraph Digraph::induced(std::span<const Vertex> vertices) const
{
    Digraph g(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = 0; j < vertices.size(); ++j)
            if (i != j)
                g.arrows_[g.index(static_cast<Vertex>(i), static_cast<Vertex>(j))] = arrows_[index(vertices[i], vertices[j])];
    return g;
}

} // namespace regracut
