#pragma once

#include "regracut/graph.hpp"
#include "regracut/palette.hpp"

#include <cstdint>
#include <vector>

namespace regracut {

inline constexpr double probability_tolerance = 1e-12;

/// Color distribution (p_1..p_r) for r-graphs: nonnegative, summing to 1.
class ColorDistribution {
public:
    /// Throws BadDistribution.
    explicit ColorDistribution(std::vector<double> p);

    int r() const { return static_cast<int>(p_.size()); }
    double operator[](Color c) const { return p_[static_cast<std::size_t>(c - 1)]; }
    const std::vector<double> & values() const { return p_; }

private:
    std::vector<double> p_;
};

/// Digraph distribution: a pair is bi with probability p, each single arc
/// direction with probability q, and empty with probability 1 - p - 2q.
class ArrowDistribution {
public:
    /// Throws BadDistribution unless p, q >= 0 and p + 2q <= 1.
    ArrowDistribution(double p, double q);

    double p() const { return p_; }
    double q() const { return q_; }
    double none() const { return 1.0 - p_ - 2.0 * q_; }

    /// The extra restrictions each palette puts on (p, q):
    /// P1: p + 2q = 1; P2: p = 0, q <= 1/2; P3: q = 0; P4: p = 0, q = 1/2.
    bool fits(const Palette & palette) const;

private:
    double p_;
    double q_;
};

/// Each pair independently gets color c with probability p_c.
ColoredGraph sample_rgraph(int n, const ColorDistribution & p, std::uint64_t seed);

/// Each pair independently: bi with prob p, fwd with prob q, back with prob
/// q, none otherwise.
Digraph sample_digraph(int n, const ArrowDistribution & pq, std::uint64_t seed);

} // namespace regracut
