#pragma once

#include "regracut/density.hpp"
#include "regracut/graph.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace regracut {

enum class Verdict { regular, irregular, unknown };

std::string_view to_string(Verdict v);

/// Subsets A' of A, B' of B with |A'| >= gamma|A|, |B'| >= gamma|B| and
/// |d_color(A',B') - d_color(A,B)| = deviation > gamma.
struct IrregularityWitness {
    VertexSet a_prime;
    VertexSet b_prime;
    ColorIndex color;
    double deviation;
};

struct RegularityReport {
    double gamma = 0.0;
    Verdict verdict = Verdict::unknown;
    std::optional<IrregularityWitness> witness;
};

inline constexpr int default_exhaustive_cap = 12;

/// Smallest subset size s >= 1 with s >= gamma * total, compared as reals.
int min_subset_size(int total, double gamma);

/// Decides gamma-regularity of (A, B) over every qualifying subset pair.
/// The smaller side is enumerated exhaustively; for a fixed subset of it
/// the extreme color-rho densities over the other side are attained by
/// taking the subset's highest (or lowest) color-rho degrees, so the search
/// is exact. Returns the witness of largest deviation (ties prefer larger
/// subsets). gamma >= 1 is reported regular without search.
/// Throws TooLargeForExhaustive when |A| or |B| exceeds `cap`, plus the
/// density_vector errors.
template <PairColoring G>
RegularityReport is_regular_exact(const G & g, std::span<const Vertex> a, std::span<const Vertex> b, double gamma,
    int cap = default_exhaustive_cap);

/// Best-effort certificate search. For every color and both degree tails,
/// seeds A' with the most extreme color degrees into B, then alternates two
/// rounds of re-picking B' against A' and A' against B'. Every candidate is
/// re-evaluated by direct density computation. Returns irregular with a
/// valid witness or unknown; never regular.
template <PairColoring G>
RegularityReport irregularity_witness_heuristic(
    const G & g, std::span<const Vertex> a, std::span<const Vertex> b, double gamma);

enum class CertifierMode { exact, heuristic, automatic };

std::string_view to_string(CertifierMode m);
std::optional<CertifierMode> certifier_from_name(std::string_view name);

/// How pairs are certified inside the decomposition loop. `automatic` runs
/// the exact checker when both sides have at most `exact_cap` vertices and
/// the heuristic otherwise; `exact` does the same with `exact_cap` raised to
/// default_exhaustive_cap.
struct Certifier {
    CertifierMode mode = CertifierMode::automatic;
    int exact_cap = 8;

    template <PairColoring G>
    RegularityReport certify(const G & g, std::span<const Vertex> a, std::span<const Vertex> b, double gamma) const;
};

/// True when the witness meets the size thresholds and its deviation,
/// recomputed from scratch, exceeds gamma.
template <PairColoring G>
bool witness_is_valid(const G & g, std::span<const Vertex> a, std::span<const Vertex> b, double gamma,
    const IrregularityWitness & w);

} // namespace regracut
