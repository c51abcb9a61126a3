#include "regracut/palette.hpp"

#include <bit>

namespace regracut {

namespace {

    constexpr ArrowMask bits(std::initializer_list<Arrow> arrows)
    {
        ArrowMask m = 0;
        for (auto a : arrows)
            m |= arrow_bit(a);
        return m;
    }

    constexpr std::array<Palette, 5> palettes{{
        {PaletteId::P0, bits({Arrow::none, Arrow::bi, Arrow::back, Arrow::fwd})},
        {PaletteId::P1, bits({Arrow::bi, Arrow::back, Arrow::fwd})},
        {PaletteId::P2, bits({Arrow::none, Arrow::back, Arrow::fwd})},
        {PaletteId::P3, bits({Arrow::none, Arrow::bi})},
        {PaletteId::P4, bits({Arrow::back, Arrow::fwd})},
    }};

} // namespace

int Palette::size() const
{
    return std::popcount(static_cast<unsigned>(allowed));
}

Palette palette(PaletteId id)
{
    return palettes[static_cast<std::size_t>(id)];
}

const std::array<Palette, 5> & all_palettes()
{
    return palettes;
}

std::string_view to_string(PaletteId id)
{
    static constexpr std::array<std::string_view, 5> names{"P0", "P1", "P2", "P3", "P4"};
    return names[static_cast<std::size_t>(id)];
}

std::optional<PaletteId> palette_from_name(std::string_view name)
{
    for (const auto & p : palettes)
        if (to_string(p.id) == name)
            return p.id;
    return std::nullopt;
}

Palette smallest_palette_containing(ArrowMask used)
{
    if (used & arrow_pair_bits)
        used |= arrow_pair_bits;

    const Palette * best = nullptr;
    for (const auto & p : palettes)
        if (p.contains(used) && (best == nullptr || p.size() < best->size()))
            best = &p;
    // P0 contains everything, so best is always set.
    return *best;
}

Palette palette_of(const Digraph & g)
{
    ArrowMask used = 0;
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v = u + 1; v < g.vertex_count(); ++v)
            used |= arrow_bit(g.arrow(u, v));
    return smallest_palette_containing(used);
}

} // namespace regracut
