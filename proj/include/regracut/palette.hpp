#pragma once

#include "regracut/graph.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace regracut {

/// Bit set over the four arrow states, bit i <=> Arrow(i).
using ArrowMask = std::uint8_t;

constexpr ArrowMask arrow_bit(Arrow a) { return static_cast<ArrowMask>(1u << static_cast<unsigned>(a)); }

inline constexpr ArrowMask arrow_pair_bits = arrow_bit(Arrow::back) | arrow_bit(Arrow::fwd);
inline constexpr ArrowMask all_arrow_bits = 0x0f;

enum class PaletteId : std::uint8_t { P0 = 0, P1, P2, P3, P4 };

/// One of the five nontrivial digraph palettes:
///   P0 = {none, bi, back, fwd}   general
///   P1 = {bi, back, fwd}         every pair has at least one arc
///   P2 = {none, back, fwd}       oriented graphs
///   P3 = {none, bi}              undirected graphs
///   P4 = {back, fwd}             tournaments
struct Palette {
    PaletteId id;
    ArrowMask allowed;

    bool contains(Arrow a) const { return (allowed & arrow_bit(a)) != 0; }
    bool contains(ArrowMask mask) const { return (mask & ~allowed) == 0; }
    int size() const;

    friend bool operator==(const Palette &, const Palette &) = default;
};

Palette palette(PaletteId id);
const std::array<Palette, 5> & all_palettes();

std::string_view to_string(PaletteId id);
std::optional<PaletteId> palette_from_name(std::string_view name);

/// The smallest listed palette whose allowed set contains every state used
/// by `g`, with arrows closed under reversal. Ties go to the lowest id.
Palette palette_of(const Digraph & g);

/// Same rule applied to an explicit state mask.
Palette smallest_palette_containing(ArrowMask used);

} // namespace regracut
