#include "hcsos/sampler.hpp"

#include "hcsos/errors.hpp"
#include "hcsos/model.hpp"

#include <string>

namespace hcsos {

void TreeConfig::validate() const
{
    require_order(k);
    if (depth < 0)
        throw DomainError("tree depth must be >= 0");
    // keep the vertex count comfortably inside size_t
    double count = 1.0, level = 1.0;
    for (int l = 1; l <= depth; ++l) {
        level *= (l == 1 ? k + 1 : k);
        count += level;
    }
    if (count > 1e9)
        throw DomainError("tree too large: " + std::to_string(count) + " vertices");
}

std::size_t TreeConfig::level_size(int level) const
{
    if (level == 0)
        return 1;
    std::size_t n = static_cast<std::size_t>(k) + 1;
    for (int l = 2; l <= level; ++l)
        n *= static_cast<std::size_t>(k);
    return n;
}

std::size_t TreeConfig::level_offset(int level) const
{
    std::size_t off = 0;
    for (int l = 0; l < level; ++l)
        off += level_size(l);
    return off;
}

std::size_t TreeConfig::vertex_count() const { return level_offset(depth + 1); }

int TreeConfig::level_of(std::size_t v) const
{
    int level = 0;
    std::size_t end = 1;
    while (v >= end)
        end += level_size(++level);
    return level;
}

std::size_t TreeConfig::parent_of(std::size_t v) const
{
    const int level = level_of(v);
    if (level == 0)
        throw DomainError("root has no parent");
    if (level == 1)
        return 0;
    const std::size_t j = v - level_offset(level);
    return level_offset(level - 1) + j / static_cast<std::size_t>(k);
}

namespace {

std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

double keyed_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
{
    const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

int inverse_cdf(const Row3& row, double u)
{
    double cum = 0.0;
    int last_positive = -1;
    for (int i = 0; i < 3; ++i) {
        if (row[i] <= 0.0)
            continue;
        cum += row[i];
        last_positive = i;
        if (u < cum)
            return i;
    }
    if (last_positive < 0)
        throw InternalError("inverse_cdf on an all-zero row");
    return last_positive;  // u beyond the rounded total
}

Configuration sample(const TransitionKernel& kern, const TreeConfig& cfg, std::uint64_t stream)
{
    cfg.validate();
    Configuration c{cfg, std::vector<std::uint8_t>(cfg.vertex_count())};
    const Row3 pi = stationary(kern);
    c.spins[0] = static_cast<std::uint8_t>(inverse_cdf(pi, keyed_uniform(cfg.seed, stream, 0)));

    // Level-order sweep: a vertex's parent always precedes it.
    for (int level = 1; level <= cfg.depth; ++level) {
        const std::size_t begin = cfg.level_offset(level);
        const std::size_t end = begin + cfg.level_size(level);
        const std::size_t parent_begin = cfg.level_offset(level - 1);
        const std::size_t fan = level == 1 ? cfg.level_size(1) : static_cast<std::size_t>(cfg.k);
        for (std::size_t v = begin; v < end; ++v) {
            const std::size_t parent = parent_begin + (v - begin) / fan;
            const auto& row = kern.p()[c.spins[parent]];
            c.spins[v] = static_cast<std::uint8_t>(inverse_cdf(row, keyed_uniform(cfg.seed, stream, v)));
        }
    }
    return c;
}

std::size_t count_violations(const Configuration& c)
{
    const WandAdmissibility wand(2);
    std::size_t bad = 0;
    for (std::size_t v = 1; v < c.spins.size(); ++v)
        if (!wand.admits(c.spins[c.tree.parent_of(v)], c.spins[v]))
            ++bad;
    return bad;
}

EmpiricalStats estimate_marginals(const TransitionKernel& kern, const TreeConfig& cfg, std::int64_t n_samples)
{
    if (n_samples < 1)
        throw DomainError("n_samples must be >= 1");
    cfg.validate();

    const int levels = cfg.depth + 1;
    std::vector<std::array<std::int64_t, 3>> counts(static_cast<std::size_t>(levels), {0, 0, 0});
    std::array<std::array<std::int64_t, 3>, 3> pairs{};
    std::vector<int> level_of(cfg.vertex_count());
    std::vector<std::size_t> parent_of(cfg.vertex_count(), 0);
    for (std::size_t v = 0; v < level_of.size(); ++v) {
        level_of[v] = cfg.level_of(v);
        if (v > 0)
            parent_of[v] = cfg.parent_of(v);
    }

    const WandAdmissibility wand(2);
    EmpiricalStats st;
    st.samples = n_samples;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        const auto c = sample(kern, cfg, static_cast<std::uint64_t>(s));
        for (std::size_t v = 0; v < c.spins.size(); ++v) {
            ++counts[static_cast<std::size_t>(level_of[v])][c.spins[v]];
            if (v == 0)
                continue;
            const auto ps = c.spins[parent_of[v]];
            ++pairs[ps][c.spins[v]];
            if (!wand.admits(ps, c.spins[v]))
                ++st.violations;
        }
    }

    st.level_freq.resize(static_cast<std::size_t>(levels));
    for (int l = 0; l < levels; ++l) {
        const auto& n = counts[static_cast<std::size_t>(l)];
        const double total = static_cast<double>(n[0] + n[1] + n[2]);
        for (int i = 0; i < 3; ++i)
            st.level_freq[static_cast<std::size_t>(l)][i] = n[i] / total;
    }
    std::int64_t edge_total = 0;
    for (const auto& r : pairs)
        for (auto v : r)
            edge_total += v;
    if (edge_total > 0)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                st.pair_freq[i][j] = static_cast<double>(pairs[i][j]) / static_cast<double>(edge_total);
    return st;
}

}  // namespace hcsos
