#pragma once

// Boolean functions on the discrete cube {0,1}^N, bit-packed, with exact
// influence counting. Influences stay integers (boundary-pair counts) until
// the final division by 2^N.

#include <cstdint>
#include <span>
#include <vector>

#include "gridjunta/grid.hpp"

namespace gridjunta {

class CubeFunction {
public:
    explicit CubeFunction(std::uint32_t n, bool fill = false);

    std::uint32_t n() const { return n_; }
    std::size_t size() const { return std::size_t{1} << n_; }

    bool operator[](std::size_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1u; }
    void set(std::size_t idx, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (idx & 63);
        if (v) bits_[idx >> 6] |= mask;
        else bits_[idx >> 6] &= ~mask;
    }

    std::uint64_t ones() const;
    std::span<const std::uint64_t> words() const { return bits_; }

    // View as a GridFunction on [2]^N (same table, same index order).
    GridFunction to_grid() const;
    // Requires k == 2, l == 2.
    static CubeFunction from_grid(const GridFunction& f);

    bool operator==(const CubeFunction& o) const { return n_ == o.n_ && bits_ == o.bits_; }

private:
    std::uint32_t n_;
    std::vector<std::uint64_t> bits_;
};

// Number of direction-i boundary pairs {x, x ^ e_i} with f(x) != f(x ^ e_i).
std::uint64_t influence_pair_count(const CubeFunction& f, std::uint32_t i);

// Pr_x { f(x) != f(x ^ e_i) } = 2 * pair_count / 2^N.
double influence(const CubeFunction& f, std::uint32_t i);

// Sum over directions of the pair counts (= cube edge boundary of {f = 1}).
std::uint64_t total_boundary_pairs(const CubeFunction& f);
double total_influence(const CubeFunction& f);

} // namespace gridjunta
