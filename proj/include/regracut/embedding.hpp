#pragma once

#include "regracut/graph.hpp"
#include "regracut/regularity.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace regracut {

struct EmbeddingConstants {
    double eta = 0.0;
    int k = 0;
    double gamma = 0.0;
    double delta = 0.0;
};

/// gamma(eta, k) = min((eta/2)^(k-1), (1/6)^(k-1)); no range checks.
double embedding_gamma(double eta, int k);

/// gamma as above and delta(eta, 1) = 1,
/// delta(eta, k) = delta(eta - gamma, k - 1) (eta - gamma)^(k-1) (1 - (k-1) gamma)
/// with gamma taken at (eta, k) on every level.
/// Throws BadEta unless 0 < eta < 1, ArityMismatch unless k >= 1.
EmbeddingConstants embedding_constants(double eta, int k);

/// Both sides of the induction step's requirement
/// max(2, 1/(eta - gamma)) gamma <= gamma(eta - gamma, k - 1), for k >= 2.
struct GammaChain {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};
GammaChain gamma_chain(double eta, int k);

struct CopyCount {
    std::uint64_t count = 0;
    std::uint64_t total = 0;
    /// delta(eta, k) * total when eta was given, else 0.
    double bound = 0.0;
    bool satisfied = true;
};

/// Number of tuples (w_1..w_k) in V_1 x ... x V_k with
/// color(w_i, w_i') = color_H(v_i, v_i') for all i < i' (ordered states for
/// digraphs). Throws ArityMismatch when H and the part list disagree in size
/// or H has a different palette size, OverlappingSets when parts meet.
template <PairColoring G>
CopyCount count_spanning_copies(
    const G & g, const G & h, const std::vector<VertexSet> & parts, std::optional<double> eta = std::nullopt);

/// Vertices of V_k with fewer than (eta - gamma)|V_i| color-rho pairs into V_i.
template <PairColoring G>
VertexSet bad_vertices(
    const G & g, std::span<const Vertex> vk, std::span<const Vertex> vi, ColorIndex rho, double eta, double gamma);

struct EmbeddingPairCheck {
    int i = 0;
    int j = 0;
    ColorIndex required = 0;
    double density = 0.0;
    bool density_ok = false;
    Verdict verdict = Verdict::unknown;
    std::optional<IrregularityWitness> witness;
};

struct EmbeddingReport {
    EmbeddingConstants constants;
    std::vector<EmbeddingPairCheck> pairs;
    bool densities_ok = false;
    /// Every pair certified gamma-regular.
    bool regularity_certified = false;
    /// No pair found gamma-irregular (unknown allowed).
    bool no_irregular_pair = false;
    CopyCount copies;
};

/// Pairs are checked exactly when the smaller side has at most
/// `exact_limit` vertices, otherwise by the heuristic. Violations are
/// reported, not thrown.
template <PairColoring G>
EmbeddingReport check_embedding_lemma(
    const G & g, const G & h, const std::vector<VertexSet> & parts, double eta, int exact_limit = 16);

} // namespace regracut
