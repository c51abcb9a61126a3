#include "regracut/partition.hpp"

#include "regracut/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace regracut {

Equipartition::Equipartition(int n, std::vector<VertexSet> blocks, std::optional<std::vector<int>> parent) :
    n_(n), blocks_(std::move(blocks)), parent_(std::move(parent))
{
    if (n_ < 1)
        fail(ErrorKind::BadPartition, "partition of an empty vertex set");
    if (blocks_.empty())
        fail(ErrorKind::BadPartition, "partition has no blocks");
    if (parent_ && parent_->size() != blocks_.size())
        fail(ErrorKind::BadPartition, "parent list length differs from block count");

    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    int covered = 0;
    for (auto & b : blocks_) {
        if (b.empty())
            fail(ErrorKind::BadPartition, "empty block");
        std::sort(b.begin(), b.end());
        for (Vertex v : b) {
            if (v < 0 || v >= n_)
                fail(ErrorKind::BadPartition, "vertex " + std::to_string(v) + " out of range");
            if (seen[static_cast<std::size_t>(v)])
                fail(ErrorKind::BadPartition, "vertex " + std::to_string(v) + " in two blocks");
            seen[static_cast<std::size_t>(v)] = true;
            ++covered;
        }
    }
    if (covered != n_)
        fail(ErrorKind::BadPartition, "blocks cover " + std::to_string(covered) + " of " + std::to_string(n_) + " vertices");
    if (max_block_size() - min_block_size() > 1)
        fail(ErrorKind::BadPartition, "block sizes differ by more than one");
}

std::vector<int> Equipartition::block_of() const
{
    std::vector<int> result(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        for (Vertex v : blocks_[i])
            result[static_cast<std::size_t>(v)] = static_cast<int>(i);
    return result;
}

int Equipartition::min_block_size() const
{
    std::size_t m = blocks_.front().size();
    for (const auto & b : blocks_)
        m = std::min(m, b.size());
    return static_cast<int>(m);
}

int Equipartition::max_block_size() const
{
    std::size_t m = 0;
    for (const auto & b : blocks_)
        m = std::max(m, b.size());
    return static_cast<int>(m);
}

Equipartition equipartition(int n, int k, std::uint64_t seed)
{
    if (k < 1 || k > n)
        fail(ErrorKind::BadOrder, "need 1 <= k <= n, got k=" + std::to_string(k) + ", n=" + std::to_string(n));

    VertexSet order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<VertexSet> blocks(static_cast<std::size_t>(k));
    const int base = n / k, extra = n % k;
    std::size_t next = 0;
    for (int i = 0; i < k; ++i) {
        const int size = base + (i < extra ? 1 : 0);
        blocks[static_cast<std::size_t>(i)].assign(order.begin() + static_cast<std::ptrdiff_t>(next),
            order.begin() + static_cast<std::ptrdiff_t>(next + static_cast<std::size_t>(size)));
        next += static_cast<std::size_t>(size);
    }
    return Equipartition(n, std::move(blocks));
}

Equipartition refine_equipartition(const Equipartition & a, int ell, std::uint64_t seed)
{
    if (ell < 1 || ell > a.min_block_size())
        fail(ErrorKind::RefinementTooFine,
            "ell=" + std::to_string(ell) + " exceeds smallest block size " + std::to_string(a.min_block_size()));

    std::mt19937_64 rng(seed);
    std::vector<VertexSet> blocks;
    std::vector<int> parent;
    blocks.reserve(static_cast<std::size_t>(a.order() * ell));
    for (int i = 0; i < a.order(); ++i) {
        VertexSet members = a.block(i);
        std::shuffle(members.begin(), members.end(), rng);
        const int s = static_cast<int>(members.size());
        const int base = s / ell, extra = s % ell;
        std::size_t next = 0;
        for (int j = 0; j < ell; ++j) {
            const int size = base + (j < extra ? 1 : 0);
            blocks.emplace_back(members.begin() + static_cast<std::ptrdiff_t>(next),
                members.begin() + static_cast<std::ptrdiff_t>(next + static_cast<std::size_t>(size)));
            parent.push_back(i);
            next += static_cast<std::size_t>(size);
        }
    }
    return Equipartition(a.vertex_count(), std::move(blocks), std::move(parent));
}

bool refines(const Equipartition & fine, const Equipartition & coarse)
{
    if (fine.vertex_count() != coarse.vertex_count())
        return false;
    const auto owner = coarse.block_of();
    for (int i = 0; i < fine.order(); ++i) {
        const auto & b = fine.block(i);
        const int expected = fine.has_parent() ? fine.parent(i) : owner[static_cast<std::size_t>(b.front())];
        if (expected < 0 || expected >= coarse.order())
            return false;
        for (Vertex v : b)
            if (owner[static_cast<std::size_t>(v)] != expected)
                return false;
    }
    return true;
}

} // namespace regracut
