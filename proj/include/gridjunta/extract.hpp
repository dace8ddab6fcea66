#pragma once

// End-to-end junta extraction for indicator functions on [k]^n / Z_k^n:
// power-of-two side lengths go through the binary lift and the cube
// extractor; general side lengths go through the block embedding with an
// eps/2 split and project back. The eps contract is re-verified on every
// return; report bounds use the main-boundary or refined fibre-cost formulas.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridjunta/encode.hpp"
#include "gridjunta/grid.hpp"
#include "gridjunta/hstar.hpp"
#include "gridjunta/junta.hpp"
#include "gridjunta/report.hpp"

namespace gridjunta {

enum class ExtractMethod { main, refined };

struct ExtractResult {
    Junta junta;
    double eps = 0.0;
    double distance = 0.0; // independently recomputed
    std::uint64_t distance_numerator = 0;
    std::uint64_t boundary = 0; // |dA| (grid) or |d'A| (torus) used in the report
    double cost = 0.0;          // exponent numerator: |dA|/k^(n-1) or refined h* cost
    BoundReport report;         // |J| vs the method's bound
    std::vector<std::string> flags;
};

// Requires l == 2, eps > 0. mode selects the boundary used for the report
// (the torus pipeline delegates to the grid one). Throws BudgetExceeded if a
// required embedding would exceed max_points; throws ContractViolation if the
// recomputed distance exceeds eps (an implementation bug).
ExtractResult grid_junta_extract(const GridFunction& f, double eps,
                                 ExtractMethod method = ExtractMethod::main,
                                 GraphMode mode = GraphMode::grid,
                                 std::size_t max_points = std::size_t{1} << 24);

ExtractResult torus_junta_extract(const GridFunction& f, double eps,
                                  ExtractMethod method = ExtractMethod::main,
                                  std::size_t max_points = std::size_t{1} << 24);

// Vacuousness diagnostic: flags eps >= |A|/k^n (the constant-0 junta already
// meets the contract) and reports the lower bound e (|A|/k) ln(k^n/|A|)
// against the measured boundary.
struct IsoLowerDiag {
    bool trivial_regime = false; // eps >= measure
    double measure = 0.0;
    BoundReport report; // measured = |dA|, bound = the lower-bound formula
};

IsoLowerDiag iso_lower_diag(const GridFunction& f, double eps);

// Fibre-cost transfer check for the block embedding: pointwise
// h*(embedded fibre) <= 9/4 h*(fibre) and averaged-per-direction 9/2.
struct Claim45Result {
    bool holds = true;
    std::uint32_t worst_direction = 0;
    double worst_ratio = 0.0; // max of avg(embedded) / ((9/2) avg(original))
};

Claim45Result claim45_check(const GridFunction& f, const BlockEmbedding& emb,
                            std::size_t max_points = std::size_t{1} << 24);

} // namespace gridjunta
