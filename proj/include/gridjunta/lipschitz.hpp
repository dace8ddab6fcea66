#pragma once

// Structure analysis of maps between discrete tori / grids: per-edge Lipschitz
// constants, per-coordinate displacement budgets, Markov coordinate selection,
// cyclic and threshold level-set decompositions, per-level epsilon allocation,
// and the minimizing-slice junta merge.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridjunta/extract.hpp"
#include "gridjunta/grid.hpp"
#include "gridjunta/junta.hpp"
#include "gridjunta/report.hpp"

namespace gridjunta {

// f = (f_1, ..., f_m) : [k]^n -> [l]^m (or Z_k^n -> Z_l^m in torus mode).
struct TorusMap {
    std::vector<GridFunction> components; // shared shape (k, n, l)

    const GridShape& domain() const { return components.at(0).shape(); }
    std::size_t arity() const { return components.size(); }

    static TorusMap identity(std::uint32_t k, std::uint32_t n);
    // f_i(x) = x_(i mod n): every component is a dictator of one input; l == k.
    static TorusMap dictator_tuple(std::uint32_t k, std::uint32_t n, std::uint32_t m);
};

// Exact rational Lipschitz constant: alpha = n/m * max over edges of the
// summed per-component output step. Torus mode uses cyclic output distance
// and torus edges; grid mode absolute distance and grid edges.
struct LipschitzConstant {
    std::uint64_t max_edge_sum = 0; // max over edges of sum_i d(f_i(x), f_i(y))
    std::uint32_t n = 0, m = 0;

    double alpha() const { return double(n) * double(max_edge_sum) / double(m); }
};

LipschitzConstant lipschitz_constant(const TorusMap& f, GraphMode mode);

// Displacement budget of one component:
//   torus: B = sum_j E_x |f(x) - f(x + e_j)|'          (denominator k^n)
//   grid:  B = sum_j E_{dir-j edges} |f(x) - f(y)|     (denominator k^(n-1)(k-1))
struct Displacement {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 1;

    double value() const { return double(numerator) / double(denominator); }
};

Displacement displacement_sum(const GridFunction& component, GraphMode mode);

// {i : D_i <= alpha/delta}; Markov guarantees at least ceil((1-delta) m).
std::vector<std::size_t> select_good_coordinates(const TorusMap& f, double delta,
                                                 GraphMode mode);

// Level sets of one component.
//   torus: l cyclic half-window indicators f^(t), t in Z_l
//   grid:  l-1 threshold indicators f^(>t), t = 1..l-1, with f = 1 + sum f^(>t)
struct LevelSetFamily {
    GraphMode mode = GraphMode::torus;
    std::uint32_t l = 0;
    std::vector<GridFunction> indicators;
    std::vector<std::uint64_t> boundaries; // |d'A^(t)| or |dA^(>t)| per level
};

LevelSetFamily level_sets(const GridFunction& component, GraphMode mode);

// eps_t = eps b_t / (4 k^n B)  (torus)  or  eps b_t / (2 k^n B)  (grid).
// Rejects B below the level-set sum bound (the caller computed B wrong).
std::vector<double> allocate_eps(double eps, const std::vector<std::uint64_t>& boundaries,
                                 double B, GraphMode mode, const GridShape& domain);

// J-junta h(y, z) = f(y0, z) for the slice y0 minimizing the summed level-set
// disagreement with the g_t (ties: lexicographically smallest y0). If the
// slice count exceeds max_slices, scans a seeded sample instead and then
// re-verifies the guarantee |f - h|_1 <= sum_t |f^(t) - g_t|_1, throwing
// ContractViolation if it fails.
struct MergeResult {
    Junta junta;
    std::vector<std::uint32_t> slice_point; // chosen y0 (0-based, off-J coords)
    std::uint64_t lhs_numerator = 0;        // sum_x |f - h|'
    std::uint64_t rhs_numerator = 0;        // sum_t sum_x |f^(t) - g_t|
    bool sampled = false;
};

MergeResult merge_torus_juntas(const GridFunction& f, const LevelSetFamily& levels,
                               const std::vector<Junta>& level_juntas,
                               std::uint64_t max_slices = std::uint64_t{1} << 20,
                               std::uint64_t sample_seed = 0);

struct CoordinateAnalysis {
    std::size_t index = 0;
    bool selected = false;
    Displacement displacement;
    std::vector<double> eps_alloc;
    std::vector<std::optional<ExtractResult>> level_results; // per level, if extracted
    Junta junta;            // Z_l / [l]-valued J-junta approximating f_i
    double distance = 0.0;  // recomputed |f_i - junta|_1 (cyclic / absolute)
    std::uint64_t distance_numerator = 0;
    double eps_spent = 0.0;
    BoundReport report; // |J| vs l exp(4 C1 B k / eps) or (l-1) exp(2 C1 B k / eps)
    std::vector<std::string> flags;
};

struct MapAnalysis {
    GraphMode mode = GraphMode::torus;
    LipschitzConstant alpha;
    std::vector<CoordinateAnalysis> coordinates;

    std::size_t selected_count() const;
};

struct AnalyzeOptions {
    std::size_t max_points = std::size_t{1} << 24;
    std::uint64_t max_slices = std::uint64_t{1} << 20;
    std::uint64_t seed = 0;
};

MapAnalysis analyze_torus_map(const TorusMap& f, double delta, double eps,
                              const AnalyzeOptions& opts = {});
MapAnalysis analyze_grid_map(const TorusMap& f, double delta, double eps,
                             const AnalyzeOptions& opts = {});

} // namespace gridjunta
