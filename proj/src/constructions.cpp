#include "gridjunta/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gridjunta/errors.hpp"
#include "gridjunta/rng.hpp"

namespace gridjunta {

TribesResult tribes_grid(std::uint32_t k, std::uint32_t s, std::uint32_t t,
                         std::size_t max_points) {
    if (k % 2 != 0) throw std::invalid_argument("tribes_grid: k must be even");
    if (s < 1 || t < 1) throw std::invalid_argument("tribes_grid: s and t must be >= 1");
    TribesSpec spec;
    spec.k = k;
    spec.s = s;
    spec.t = t;
    const std::uint64_t tribes_count = std::uint64_t{1} << t;
    spec.n = 1 + s + static_cast<std::uint32_t>(t * tribes_count);
    spec.eps = std::ldexp(1.0, -int(s)) / 6.0;
    spec.boundary_scale = 1.0 + 6.0 * spec.eps * double(t) / std::exp(1.0);

    auto points = checked_pow(k, spec.n);
    if (!points || *points > max_points)
        throw BudgetExceeded("tribes_grid: k^n exceeds the point budget");

    // measure = (1 - 2^{-s} (1 - 2^{-t})^{2^t}) / 2 as a dyadic rational
    const std::uint32_t log_den = s + t * static_cast<std::uint32_t>(tribes_count) + 1;
    unsigned __int128 miss = 1; // (2^t - 1)^{2^t}
    for (std::uint64_t i = 0; i < tribes_count; ++i) miss *= (std::uint64_t{1} << t) - 1;
    const unsigned __int128 den_half = (unsigned __int128)1 << (log_den - 1);
    spec.measure_num = static_cast<std::uint64_t>(den_half - miss);
    spec.measure_log_den = log_den;

    // consecutive tribes over coordinates s+1 .. s+t*2^t (0-based)
    for (std::uint64_t i = 0; i < tribes_count; ++i) {
        std::vector<std::uint32_t> tribe;
        for (std::uint32_t q = 0; q < t; ++q)
            tribe.push_back(1 + s + static_cast<std::uint32_t>(i * t) + q);
        spec.tribes.push_back(std::move(tribe));
    }

    GridShape shape(k, spec.n, 2);
    GridFunction f(shape);
    const std::uint32_t half = k / 2; // x <= k/2 (1-based) <=> x0 < k/2 (0-based)
    std::vector<std::uint32_t> x(spec.n, 0);
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        bool in_set = x[0] < half;
        if (in_set) {
            bool second = false;
            for (std::uint32_t j = 1; j <= s && !second; ++j) second = x[j] < half;
            for (const auto& tribe : spec.tribes) {
                if (second) break;
                bool all = true;
                for (std::uint32_t c : tribe)
                    if (x[c] >= half) { all = false; break; }
                second = all;
            }
            in_set = second;
        }
        if (in_set) f.set(idx, 1);
        for (std::uint32_t j = 0; j < spec.n; ++j) {
            if (++x[j] < k) break;
            x[j] = 0;
        }
    }
    return {std::move(f), std::move(spec)};
}

DecisionTreeResult decision_tree_function(std::uint32_t k, std::uint32_t d,
                                          std::uint64_t seed, std::size_t max_points) {
    if (k % 2 != 0) throw std::invalid_argument("decision_tree_function: k must be even");
    if (d < 1) throw std::invalid_argument("decision_tree_function: d must be >= 1");
    DecisionTreeSpec spec;
    spec.k = k;
    spec.d = d;
    spec.seed = seed;
    std::uint64_t internal = 0, level = 1;
    for (std::uint32_t s = 0; s < d; ++s) {
        internal += level;
        level *= k;
    }
    spec.n = static_cast<std::uint32_t>(internal);

    auto points = checked_pow(k, spec.n);
    if (!points || *points > max_points)
        throw BudgetExceeded("decision_tree_function: k^n exceeds the point budget");

    // leaf-parents are the last k^(d-1) internal nodes in breadth-first order
    std::uint64_t lp_count = 1;
    for (std::uint32_t s = 0; s + 1 < d; ++s) lp_count *= k;

    SplitMix64 rng(seed);
    spec.chosen.reserve(lp_count);
    for (std::uint64_t v = 0; v < lp_count; ++v) {
        // uniform (k/2)-subset via partial Fisher-Yates
        std::vector<std::uint32_t> labels(k);
        std::iota(labels.begin(), labels.end(), 0);
        for (std::uint32_t i = 0; i < k / 2; ++i) {
            const std::uint64_t j = i + rng.below(k - i);
            std::swap(labels[i], labels[j]);
        }
        std::vector<std::uint32_t> subset(labels.begin(), labels.begin() + k / 2);
        std::sort(subset.begin(), subset.end());
        spec.chosen.push_back(std::move(subset));
    }

    GridShape shape(k, spec.n, 2);
    GridFunction f(shape);
    std::vector<std::uint32_t> x(spec.n, 0);
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        // walk from the root; node ids are breadth-first, root = 0,
        // children of node v are v*k + 1 + label (within the full tree)
        std::uint64_t node = 0;
        for (std::uint32_t depth = 0; depth + 1 < d; ++depth)
            node = node * k + 1 + x[node];
        // node is now a leaf-parent; its breadth-first leaf-parent rank:
        const std::uint64_t first_lp = (internal - lp_count);
        const std::uint64_t rank = node - first_lp;
        const std::uint32_t edge = x[node];
        const auto& subset = spec.chosen[rank];
        if (std::binary_search(subset.begin(), subset.end(), edge)) f.set(idx, 1);
        for (std::uint32_t j = 0; j < spec.n; ++j) {
            if (++x[j] < k) break;
            x[j] = 0;
        }
    }
    return {std::move(f), std::move(spec)};
}

GridFunction cuboid(std::uint32_t a, std::uint32_t s, std::uint32_t k, std::uint32_t n) {
    if (a < 1 || a > k - 1) throw std::out_of_range("cuboid: need 1 <= a <= k-1");
    if (s < 1 || s > n) throw std::out_of_range("cuboid: need 1 <= s <= n");
    GridShape shape(k, n, 2);
    GridFunction f(shape);
    std::vector<std::uint32_t> x(n, 0);
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        bool in = true;
        for (std::uint32_t j = 0; j < s; ++j)
            if (x[j] >= a) { in = false; break; }
        if (in) f.set(idx, 1);
        for (std::uint32_t j = 0; j < n; ++j) {
            if (++x[j] < k) break;
            x[j] = 0;
        }
    }
    return f;
}

GridFunction slab(std::uint32_t k, std::uint32_t n, std::uint32_t a) {
    return cuboid(a, 1, k, n);
}

GridFunction random_set(std::uint32_t k, std::uint32_t n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::out_of_range("random_set: p must be in [0,1]");
    GridShape shape(k, n, 2);
    GridFunction f(shape);
    SplitMix64 rng(seed);
    for (std::size_t idx = 0; idx < f.size(); ++idx)
        if (rng.bernoulli(p)) f.set(idx, 1);
    return f;
}

GridFunction parity_set(std::uint32_t k, std::uint32_t n) {
    GridShape shape(k, n, 2);
    GridFunction f(shape);
    std::vector<std::uint32_t> x(n, 0);
    std::uint32_t sum = 0;
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        f.set(idx, sum & 1u);
        for (std::uint32_t j = 0; j < n; ++j) {
            if (++x[j] < k) {
                ++sum;
                break;
            }
            x[j] = 0;
            sum -= k - 1;
        }
    }
    return f;
}

GridFunction random_function(std::uint32_t k, std::uint32_t n, std::uint32_t l,
                             std::uint64_t seed) {
    GridShape shape(k, n, l);
    GridFunction f(shape);
    SplitMix64 rng(seed);
    for (std::size_t idx = 0; idx < f.size(); ++idx)
        f.set(idx, static_cast<std::uint16_t>(rng.below(l)));
    return f;
}

TorusMap random_map(std::uint32_t k, std::uint32_t n, std::uint32_t l, std::uint32_t m,
                    std::uint64_t seed) {
    TorusMap map;
    for (std::uint32_t i = 0; i < m; ++i)
        map.components.push_back(random_function(k, n, l, SplitMix64::derive(seed, i)));
    return map;
}

} // namespace gridjunta
