#pragma once

#include "regracut/graph.hpp"
#include "regracut/partition.hpp"
#include "regracut/regularity.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace regracut {

/// A map k -> eps(k) in (0,1). Uncovered k fall back to a constant or to
/// a / (k + 1). Lookups return the running minimum over 0..k, so the
/// function is nonincreasing by construction.
class EFunction {
public:
    static EFunction constant(double value);
    static EFunction reciprocal(double a);

    /// Accepts "0.25" or "0.3/(k+1)". Throws BadEFunction.
    static EFunction parse(std::string_view text);

    /// Copy with eps(k) pinned to `value`.
    EFunction with(int k, double value) const;

    double operator()(int k) const;

    std::string describe() const;

private:
    EFunction(double a, bool reciprocal) : a_(a), reciprocal_(reciprocal) { }
    double raw(int k) const;

    double a_;
    bool reciprocal_;
    std::map<int, double> table_;
};

inline constexpr int default_order_cap = 256;

struct RegularizeOptions {
    int cap = default_order_cap;
    Certifier certifier{};
    std::uint64_t seed = 0;
    /// Starting partition; a seeded order-m equipartition when absent.
    std::optional<Equipartition> initial = std::nullopt;
};

struct RegularizeResult {
    /// Carries parent indices into the starting partition whenever at least
    /// one refinement happened.
    Equipartition partition;
    std::vector<double> index_trace;
    int sweeps = 0;
    int irregular_pairs = 0;
    int unknown_pairs = 0;
    bool cap_reached = false;
};

/// Refines until at most eps * k^2 pairs have a certified witness, the
/// index gain of a step is at most r eps^4 / 64, or the order cap blocks
/// further refinement (flagged by cap_reached). Each step intersects every
/// block with the witness sets touching it and rebalances the cells to an
/// equipartition. Throws BadOrder, GraphTooSmall or BadEFunction on bad
/// arguments.
template <PairColoring G>
RegularizeResult regularize(const G & g, int m, double eps, const RegularizeOptions & options = {});

struct PairStats {
    int a_pairs = 0;
    int a_irregular = 0;
    int a_unknown = 0;

    /// Sub-pairs (V_ij, V_i'j') with i < i'.
    int b_pairs = 0;
    int b_irregular = 0;
    int b_unknown = 0;
    int b_irregular_max_per_pair = 0;

    /// Per pair i < i' in row-major order: sub-pairs with some color
    /// deviating from the parent density by at least eps(0).
    std::vector<int> deviating_subpairs;
    /// Pairs whose deviating_subpairs exceeds eps(0) l^2.
    int deviating_pairs = 0;

    bool bullet_ii = false;
    bool bullet_iii = false;
    bool bullet_iv = false;
};

struct DecompositionResult {
    Equipartition a;
    /// Blocks in parent-major order: block i * ell + j is V_ij.
    Equipartition b;
    int k = 0;
    int ell = 0;
    int iterations = 0;
    int iteration_cap = 0;
    std::vector<double> index_trace;
    PairStats pair_stats;
};

struct DecomposeOptions {
    int cap = default_order_cap;
    Certifier certifier{};
    std::uint64_t seed = 0;
};

/// floor(64 / (r eps^4)) + 1.
int decomposition_iteration_cap(int r, double eps);

/// Builds A_1, A_2, ... where A_i refines A_{i-1} by regularize at
/// parameter E(|A_{i-1}|), stopping at the first gain of at most
/// r E(0)^4 / 64. Returns A = A_{i-1} and B = A_i. m = 1 is treated as 2
/// and the cap is clamped to n. Throws GraphTooSmall when n < m and
/// CapExceeded when the cap is below m.
template <PairColoring G>
DecompositionResult decompose(const G & g, int m, const EFunction & e, const DecomposeOptions & options = {});

/// Recounts level-A certification, level-B certification at E(k) and the
/// exact density deviation counts for a given pair of partitions.
template <PairColoring G>
PairStats compute_pair_stats(const G & g, const Equipartition & a, const Equipartition & b, const EFunction & e,
    const Certifier & certifier = {});

struct SubclusterSelection {
    /// chosen[i] is the index j of the sub-block taken from block i.
    std::vector<int> chosen;
    std::vector<VertexSet> a_prime;
    int irregular = 0;
    int deviating = 0;
    int draws = 0;
    bool exhaustive = false;
    /// min |V_i'| / n.
    double min_fraction = 0.0;
};

/// Picks one sub-block per block minimizing (irregular pairs at E(k),
/// pairs deviating by at least E(0)) lexicographically. Evaluates all l^k
/// draws when l^k <= trials, otherwise `trials` seeded uniform draws.
template <PairColoring G>
SubclusterSelection select_subclusters(const G & g, const DecompositionResult & d, const EFunction & e, int trials,
    std::uint64_t seed, const Certifier & certifier = {});

struct SlicingReport {
    double eps = 0.0;
    double eta = 0.0;
    double deviation = 0.0;
    Verdict verdict = Verdict::unknown;
    /// deviation <= gamma and the slice was not found eta-irregular.
    bool holds = false;
    /// True when holds rests on an unknown verdict.
    bool caveat = false;
};

/// Checks the conclusion of the slicing lemma on one slice. Throws
/// SliceTooSmall when min(|A_sub|/|A|, |B_sub|/|B|) < gamma and
/// BadPartition when a slice leaves its set.
template <PairColoring G>
SlicingReport verify_slicing(const G & g, std::span<const Vertex> a, std::span<const Vertex> b,
    std::span<const Vertex> a_sub, std::span<const Vertex> b_sub, double gamma);

} // namespace regracut
