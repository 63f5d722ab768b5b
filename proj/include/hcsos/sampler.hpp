#pragma once

#include "hcsos/chain.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hcsos {

/// Finite Cayley subtree of the given depth.  The root has k + 1 children,
/// every other internal vertex k.  Vertices are numbered in level order.
struct TreeConfig {
    int k = 2;
    int depth = 0;
    std::uint64_t seed = 0;

    void validate() const;
    std::size_t level_size(int level) const;
    std::size_t level_offset(int level) const;
    std::size_t vertex_count() const;
    int level_of(std::size_t v) const;
    std::size_t parent_of(std::size_t v) const;  ///< v >= 1
};

struct Configuration {
    TreeConfig tree;
    std::vector<std::uint8_t> spins;  ///< indexed by vertex id
};

/// Root from the stationary law, each child from its parent's row.  Every
/// draw is keyed by (seed, stream, vertex id), so the result does not depend
/// on traversal order.
Configuration sample(const TransitionKernel& kern, const TreeConfig& cfg, std::uint64_t stream = 0);

/// Parent-child pairs that are not wand-admissible.
std::size_t count_violations(const Configuration& c);

struct EmpiricalStats {
    std::int64_t samples = 0;
    std::vector<Row3> level_freq;  ///< per level, sums to 1
    Matrix3 pair_freq{};           ///< (parent spin, child spin), sums to 1 (zero when depth = 0)
    std::int64_t violations = 0;
};

/// Sample s uses stream s, so any subset of samples is reproducible alone.
EmpiricalStats estimate_marginals(const TransitionKernel& kern, const TreeConfig& cfg, std::int64_t n_samples);

/// Counter-based uniform draw in [0, 1) with 53 random bits.
double keyed_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// Smallest i with u < cumulative(row)[i]; zero-probability states are never returned.
int inverse_cdf(const Row3& row, double u);

}  // namespace hcsos
