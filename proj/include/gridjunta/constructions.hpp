#pragma once

// Generators for the extremal and sharpness constructions, plus seeded corpus
// fillers. Each generator is a pure function of its parameters and seed, so
// recorded provenance reproduces tables byte-for-byte.

#include <cstdint>
#include <vector>

#include "gridjunta/grid.hpp"
#include "gridjunta/lipschitz.hpp"

namespace gridjunta {

struct TribesSpec {
    std::uint32_t k = 0;
    std::uint32_t s = 0;
    std::uint32_t t = 0;
    std::uint32_t n = 0;     // 1 + s + t 2^t
    double eps = 0.0;        // 2^{-s} / 6
    double boundary_scale = 0.0; // L = 1 + 6 eps t / e
    // exact measure as a dyadic rational: |A| = measure_num / 2^measure_log_den
    // of the whole grid; the set size is k^n * measure_num >> measure_log_den.
    std::uint64_t measure_num = 0;
    std::uint32_t measure_log_den = 0;
    std::vector<std::vector<std::uint32_t>> tribes; // 0-based coordinate blocks
};

struct TribesResult {
    GridFunction f;
    TribesSpec spec;
};

// Indicator of {x_1 <= k/2} intersected with ({some x_j <= k/2, j in 2..s+1}
// union {some tribe entirely <= k/2}). Requires k even.
TribesResult tribes_grid(std::uint32_t k, std::uint32_t s, std::uint32_t t,
                         std::size_t max_points = std::size_t{1} << 24);

struct DecisionTreeSpec {
    std::uint32_t k = 0;
    std::uint32_t d = 0;
    std::uint32_t n = 0; // number of internal nodes = sum_{s<d} k^s
    std::uint64_t seed = 0;
    // chosen (k/2)-subsets of child-edge labels (0-based) per leaf-parent,
    // in breadth-first leaf-parent order
    std::vector<std::vector<std::uint32_t>> chosen;
};

struct DecisionTreeResult {
    GridFunction f;
    DecisionTreeSpec spec;
};

// Random decision-tree function: complete k-ary tree of depth d, internal
// nodes labelled with distinct coordinates in breadth-first order, each
// leaf-parent assigning value 1 to a uniformly chosen half of its children.
DecisionTreeResult decision_tree_function(std::uint32_t k, std::uint32_t d,
                                          std::uint64_t seed,
                                          std::size_t max_points = std::size_t{1} << 24);

// Indicator of [a]^s x [k]^(n-s); boundary s a^(s-1) k^(n-s).
GridFunction cuboid(std::uint32_t a, std::uint32_t s, std::uint32_t k, std::uint32_t n);

// cuboid with s = 1: the slab {x_1 <= a}.
GridFunction slab(std::uint32_t k, std::uint32_t n, std::uint32_t a);

// i.i.d. Bernoulli(p) indicator.
GridFunction random_set(std::uint32_t k, std::uint32_t n, double p, std::uint64_t seed);

// 1{sum of 0-based coordinates is odd}: alternating on every fibre.
GridFunction parity_set(std::uint32_t k, std::uint32_t n);

// Map generators for the Lipschitz pipelines.
GridFunction random_function(std::uint32_t k, std::uint32_t n, std::uint32_t l,
                             std::uint64_t seed);
TorusMap random_map(std::uint32_t k, std::uint32_t n, std::uint32_t l, std::uint32_t m,
                    std::uint64_t seed);

} // namespace gridjunta
