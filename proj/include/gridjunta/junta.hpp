#pragma once

// Juntas (functions depending on few coordinates), the L1-optimal plurality
// junta for a fixed coordinate set, the exhaustive brute-force junta oracle,
// and the influence-threshold junta extractor for the cube.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gridjunta/cube.hpp"
#include "gridjunta/grid.hpp"
#include "gridjunta/report.hpp"

namespace gridjunta {

struct Junta {
    GridShape shape;                    // ambient shape (cube: k = 2)
    std::vector<std::uint32_t> coords;  // 0-based, strictly increasing
    std::vector<std::uint16_t> table;   // k^|coords| values in index order

    std::size_t size() const { return coords.size(); }

    std::uint16_t eval_index(std::size_t ambient_idx) const;
    GridFunction materialize() const;

    static Junta constant(GridShape shape, std::uint16_t value);
};

std::uint64_t l1_numerator(const GridFunction& f, const Junta& g, Metric metric);
double l1_distance(const GridFunction& f, const Junta& g, Metric metric);

// The J-junta closest to f in L1: each J-cell takes the most frequent value
// of f over the cell, ties resolved toward the smaller value.
Junta plurality_junta(const GridFunction& f, std::span<const std::uint32_t> coords);
Junta plurality_junta(const CubeFunction& f, std::span<const std::uint32_t> coords);

struct JuntaSearchResult {
    std::optional<Junta> junta; // first hit: smallest size, lexicographic J
    // best_distance[r] = min over |J| = r of the plurality distance, r = 0..M.
    std::vector<double> best_distance;
    std::vector<std::uint64_t> best_numerator;
    std::uint64_t subsets_tried = 0;

    // Smallest r with best_distance[r] <= eps, if any.
    std::optional<std::size_t> minimal_size(double eps) const;
};

// Exhaustive oracle: tries every J with |J| <= max_size via plurality_junta.
// Throws BudgetExceeded if the subset count would exceed max_subsets.
JuntaSearchResult best_junta_search(const GridFunction& f, std::uint32_t max_size,
                                    double eps, std::uint64_t max_subsets = 1u << 20);

struct CubeExtractResult {
    Junta junta;       // ambient shape [2]^N
    double distance;   // recomputed exactly
    std::uint64_t distance_numerator;
    double total_inf;
    BoundReport report; // |J| vs exp(C0 * Inf / eps)
};

// Influence-threshold extraction: sweeps J = {} then the coordinate sets
// {i : Inf_i >= tau} for tau descending over the distinct positive influence
// values, returning the first plurality junta within eps. The closeness
// contract is hard; the size bound is recorded in the report.
CubeExtractResult friedgut_extract(const CubeFunction& f, double eps);

} // namespace gridjunta
