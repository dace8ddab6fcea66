#pragma once

// Per-fibre cost functionals: the six previously studied h-variants and the
// refined h*, the interval decomposition of a fibre set with its lifted
// boundary bounds, and the fibre-averaged cost sums that drive the junta-size
// reports. All functionals depend on a fibre only through (k, ell, m).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gridjunta/grid.hpp"

namespace gridjunta {

enum class HVariant {
    df_monotone,   // 1 on non-constant fibres
    df_general,    // log2(k) on non-constant fibres
    hatami,        // log2(k) * Var
    keller_ent,    // binary entropy of the fibre measure
    st,            // k * |dF|
    main_boundary, // |dF|
    h_star,        // Var * log2(|dF| / Var)
};

inline constexpr HVariant kAllVariants[] = {
    HVariant::df_monotone, HVariant::df_general, HVariant::hatami,
    HVariant::keller_ent,  HVariant::st,         HVariant::main_boundary,
    HVariant::h_star,
};

std::string variant_name(HVariant v);

// Binary entropy with the 0 log(1/0) = 0 convention.
double binary_entropy(double p);

double h_eval(const FibreStats& stats, HVariant variant);

// h* domination: h* <= 3 Var log2(k), h* <= |dF|, h* <= k |dF|, and
// h* <= Ent(p) when |dF| == 1.
bool claim42_check(const FibreStats& stats);

struct Interval {
    std::uint32_t lo = 0, hi = 0; // 1-based, inclusive
    std::uint32_t length() const { return hi - lo + 1; }
};

struct IntervalDecomposition {
    std::vector<Interval> intervals; // disjoint, maximal, sorted
    std::uint32_t m = 0;             // boundary of the fibre set in G_{k,1}
};

IntervalDecomposition interval_decompose(std::span<const std::uint8_t> F);

// |~d(I)| <= 6 |I| log2(k / |I|) for an interval I in [k] = 2^s, 0 < |I| <= k/2.
bool interval_tilde_bound_check(std::uint32_t lo, std::uint32_t hi, std::uint32_t k);

// |~d(F)| <= 6 ell log2(m k / ell) for F on [k] = 2^s with 0 < ell <= k/2.
bool fibre_tilde_bound_check(std::span<const std::uint8_t> F);

// sum over directions of the fibre-average of h_eval. Requires l == 2.
double refined_cost(const GridFunction& f, HVariant variant);

// Exact numerator for the rational variants (main_boundary, st, df_monotone):
// sum over all fibres of all directions of the integer h value; the cost is
// this over k^(n-1).
std::uint64_t refined_cost_numerator(const GridFunction& f, HVariant variant);

} // namespace gridjunta
