#pragma once

// Functions on the l1-grid [k]^n and the torus Z_k^n: dense value tables,
// edge boundaries, the Bollobas-Leader lower bound, L1 distances and fibres.
//
// Points are stored 0-based internally; a point x in [k]^n (1-based in the
// usual notation) lives at index sum_j (x_j - 1) * k^(j-1), so direction-j
// fibres are strided slices. Boolean tables (l == 2) are bit-packed; general
// alphabets use 16-bit entries.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gridjunta/errors.hpp"

namespace gridjunta {

struct GridShape {
    std::uint32_t k = 2; // side length, >= 2
    std::uint32_t n = 1; // dimension, >= 1
    std::uint32_t l = 2; // value-alphabet size, >= 2

    GridShape() = default;
    GridShape(std::uint32_t k_, std::uint32_t n_, std::uint32_t l_ = 2);

    std::size_t point_count() const { return points_; }
    std::size_t base_count(std::uint32_t /*dir*/) const { return points_ / k; }
    // k^e, valid for e <= n.
    std::size_t pow(std::uint32_t e) const;

    bool operator==(const GridShape& o) const {
        return k == o.k && n == o.n && l == o.l;
    }

private:
    std::size_t points_ = 2;
};

// k^n with overflow detection; nullopt if it does not fit std::size_t.
std::optional<std::size_t> checked_pow(std::uint64_t base, std::uint32_t exp);

class GridFunction {
public:
    explicit GridFunction(GridShape shape, std::uint16_t fill = 0);

    const GridShape& shape() const { return shape_; }
    std::size_t size() const { return shape_.point_count(); }

    std::uint16_t operator[](std::size_t idx) const {
        if (packed_) return (bits_[idx >> 6] >> (idx & 63)) & 1u;
        return words_[idx];
    }
    void set(std::size_t idx, std::uint16_t v);

    bool packed() const { return packed_; }
    // Word view of a bit-packed (l == 2) table; unused high bits are zero.
    std::span<const std::uint64_t> bit_words() const { return bits_; }

    // Number of points with value 1 (l == 2 only).
    std::uint64_t ones() const;
    std::uint64_t count_value(std::uint16_t v) const;

    bool operator==(const GridFunction& o) const;

private:
    GridShape shape_;
    bool packed_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint16_t> words_;
};

enum class GraphMode { grid, torus };
enum class Metric { absolute, cyclic };

// ---- point/index helpers ----------------------------------------------------

// Digits of idx in base k (0-based coordinates, least significant first).
std::vector<std::uint32_t> point_of_index(const GridShape& shape, std::size_t idx);
std::size_t index_of_point(const GridShape& shape, std::span<const std::uint32_t> x0);

// ---- boundaries and the isoperimetric bound ---------------------------------

// Edge boundary of A = {x : f(x) = 1} in the grid or torus; optional
// restriction to direction j (0-based). Requires l == 2.
// For k == 2 the torus equals the grid (the wrap pair is the same edge).
std::uint64_t edge_boundary(const GridFunction& f, GraphMode mode,
                            std::optional<std::uint32_t> direction = std::nullopt);

// Self-test identity |dA| == |d(A^c)|.
bool complement_boundary_check(const GridFunction& f);

// One term |A|^(1-1/r) * r * k^(n/r - 1) of the Bollobas-Leader minimum.
// Exact (the returned double holds an integer) whenever t^(r-1) * k^(n-r)
// is a perfect r-th power, which covers every sharpness case we assert.
double bollobas_leader_term(std::uint64_t t, std::uint32_t k, std::uint32_t n,
                            std::uint32_t r);

// min over r in {1..n}; evaluates at k^n - t when t > k^n/2; 0 at t in {0, k^n}.
double bollobas_leader_bound(std::uint64_t t, std::uint32_t k, std::uint32_t n);

// ---- distances ---------------------------------------------------------------

std::uint32_t cyclic_distance(std::uint32_t a, std::uint32_t b, std::uint32_t modulus);

// Integer numerator of the normalized L1 distance: sum_x d(f(x), g(x)).
std::uint64_t l1_numerator(const GridFunction& f, const GridFunction& g, Metric metric);
double l1_distance(const GridFunction& f, const GridFunction& g, Metric metric);

// ---- fibres ------------------------------------------------------------------

// The k points agreeing with a base point off coordinate `dir`. The base is
// indexed 0 .. k^(n-1)-1 in the mixed-radix order of the remaining coordinates.
class FibreView {
public:
    FibreView(const GridFunction& f, std::uint32_t dir, std::size_t base_index);

    std::uint32_t k() const { return f_->shape().k; }
    std::uint32_t direction() const { return dir_; }
    std::uint16_t operator[](std::uint32_t z0) const { return (*f_)[lo_ + z0 * stride_]; }
    std::size_t point_index(std::uint32_t z0) const { return lo_ + z0 * stride_; }

private:
    const GridFunction* f_;
    std::uint32_t dir_;
    std::size_t lo_;
    std::size_t stride_;
};

// Summary of a Boolean fibre restriction F : [k] -> {0,1}. The h-functionals
// of the junta machinery are all functions of (k, ell, m).
struct FibreStats {
    std::uint32_t k = 0;
    std::uint32_t ell = 0; // |A  restricted to the fibre|
    std::uint32_t m = 0;   // 1-dimensional grid boundary |dF|

    bool constant() const { return ell == 0 || ell == k; }
    double var() const {
        const double p = double(ell) / double(k);
        return p * (1.0 - p);
    }
};

FibreView fibre(const GridFunction& f, std::uint32_t dir, std::size_t base_index);
FibreStats fibre_stats(const GridFunction& f, std::uint32_t dir, std::size_t base_index);
FibreStats fibre_stats(std::span<const std::uint8_t> values);

} // namespace gridjunta
