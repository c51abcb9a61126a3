#pragma once

#include "regracut/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace regracut {

/// A partition of {0..n-1} into blocks whose sizes differ by at most one.
///
/// When the partition was produced by refining another one, `parent(i)`
/// names the block of the coarser partition that contains block i.
class Equipartition {
public:
    /// Validates cover, disjointness and the size condition; throws
    /// BadPartition. Each block is stored sorted.
    Equipartition(int n, std::vector<VertexSet> blocks, std::optional<std::vector<int>> parent = std::nullopt);

    int vertex_count() const { return n_; }
    int order() const { return static_cast<int>(blocks_.size()); }

    const VertexSet & block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
    const std::vector<VertexSet> & blocks() const { return blocks_; }

    bool has_parent() const { return parent_.has_value(); }
    int parent(int i) const { return (*parent_)[static_cast<std::size_t>(i)]; }
    const std::optional<std::vector<int>> & parents() const { return parent_; }

    /// block_of()[v] is the index of the block containing v.
    std::vector<int> block_of() const;

    int min_block_size() const;
    int max_block_size() const;

    friend bool operator==(const Equipartition &, const Equipartition &) = default;

private:
    int n_;
    std::vector<VertexSet> blocks_;
    std::optional<std::vector<int>> parent_;
};

/// k blocks of sizes ceil(n/k) and floor(n/k); vertices are placed by a
/// seeded uniform shuffle. Throws BadOrder unless 1 <= k <= n.
Equipartition equipartition(int n, int k, std::uint64_t seed);

/// Splits every block of `a` into `ell` parts so the result is again an
/// equipartition, with parent indices recorded. Output blocks are grouped
/// by parent in parent order; within a parent the first (size mod ell)
/// parts get the extra vertex. Throws RefinementTooFine when ell exceeds a
/// block size.
Equipartition refine_equipartition(const Equipartition & a, int ell, std::uint64_t seed);

/// True when every block of `fine` lies inside block fine.parent(i) of
/// `coarse` (or, without parent indices, inside some block of `coarse`).
bool refines(const Equipartition & fine, const Equipartition & coarse);

} // namespace regracut
