#include "gridjunta/hstar.hpp"

#include <cmath>
#include <stdexcept>

#include "gridjunta/encode.hpp"

namespace gridjunta {

std::string variant_name(HVariant v) {
    switch (v) {
        case HVariant::df_monotone: return "df-monotone";
        case HVariant::df_general: return "df-general";
        case HVariant::hatami: return "hatami";
        case HVariant::keller_ent: return "keller-ent";
        case HVariant::st: return "st";
        case HVariant::main_boundary: return "main-boundary";
        case HVariant::h_star: return "h-star";
    }
    return "?";
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double h_eval(const FibreStats& s, HVariant variant) {
    if (s.constant()) return 0.0;
    const double log2k = std::log2(double(s.k));
    switch (variant) {
        case HVariant::df_monotone: return 1.0;
        case HVariant::df_general: return log2k;
        case HVariant::hatami: return log2k * s.var();
        case HVariant::keller_ent: return binary_entropy(double(s.ell) / double(s.k));
        case HVariant::st: return double(s.k) * double(s.m);
        case HVariant::main_boundary: return double(s.m);
        case HVariant::h_star: return s.var() * std::log2(double(s.m) / s.var());
    }
    return 0.0;
}

bool claim42_check(const FibreStats& s) {
    const double hs = h_eval(s, HVariant::h_star);
    if (!(hs <= 3.0 * s.var() * std::log2(double(s.k)))) return false;
    if (!(hs <= double(s.m))) return false;
    if (!(hs <= double(s.k) * double(s.m))) return false;
    if (s.m == 1 && !(hs <= binary_entropy(double(s.ell) / double(s.k)))) return false;
    return true;
}

IntervalDecomposition interval_decompose(std::span<const std::uint8_t> F) {
    IntervalDecomposition d;
    const std::uint32_t k = static_cast<std::uint32_t>(F.size());
    for (std::uint32_t z = 0; z < k; ++z) {
        if (z + 1 < k && (F[z] != 0) != (F[z + 1] != 0)) ++d.m;
        if (!F[z]) continue;
        const std::uint32_t one_based = z + 1;
        if (!d.intervals.empty() && d.intervals.back().hi + 1 == one_based)
            d.intervals.back().hi = one_based;
        else
            d.intervals.push_back({one_based, one_based});
    }
    return d;
}

bool interval_tilde_bound_check(std::uint32_t lo, std::uint32_t hi, std::uint32_t k) {
    if (lo < 1 || hi > k || lo > hi) throw std::out_of_range("interval out of range");
    const std::uint32_t len = hi - lo + 1;
    if (2 * len > k) throw std::invalid_argument("interval_tilde_bound_check: |I| must be <= k/2");
    std::vector<std::uint8_t> F(k, 0);
    for (std::uint32_t z = lo; z <= hi; ++z) F[z - 1] = 1;
    const std::uint64_t tilde = tilde_fibre_boundary(F);
    return double(tilde) <= 6.0 * double(len) * std::log2(double(k) / double(len));
}

bool fibre_tilde_bound_check(std::span<const std::uint8_t> F) {
    const FibreStats s = fibre_stats(F);
    if (s.ell == 0 || 2 * s.ell > s.k)
        throw std::invalid_argument("fibre_tilde_bound_check: requires 0 < ell <= k/2");
    const std::uint64_t tilde = tilde_fibre_boundary(F);
    return double(tilde) <=
           6.0 * double(s.ell) * std::log2(double(s.m) * double(s.k) / double(s.ell));
}

double refined_cost(const GridFunction& f, HVariant variant) {
    if (f.shape().l != 2) throw std::invalid_argument("refined_cost: requires l == 2");
    const GridShape& shape = f.shape();
    const double bases = double(shape.pow(shape.n - 1));
    double total = 0.0;
    for (std::uint32_t j = 0; j < shape.n; ++j) {
        double dir_sum = 0.0;
        for (std::size_t b = 0; b < shape.base_count(j); ++b)
            dir_sum += h_eval(fibre_stats(f, j, b), variant);
        total += dir_sum / bases;
    }
    return total;
}

std::uint64_t refined_cost_numerator(const GridFunction& f, HVariant variant) {
    if (f.shape().l != 2) throw std::invalid_argument("refined_cost: requires l == 2");
    if (variant != HVariant::main_boundary && variant != HVariant::st &&
        variant != HVariant::df_monotone)
        throw std::invalid_argument("refined_cost_numerator: variant is not integer-valued");
    const GridShape& shape = f.shape();
    std::uint64_t total = 0;
    for (std::uint32_t j = 0; j < shape.n; ++j)
        for (std::size_t b = 0; b < shape.base_count(j); ++b) {
            const FibreStats s = fibre_stats(f, j, b);
            if (s.constant()) continue;
            switch (variant) {
                case HVariant::main_boundary: total += s.m; break;
                case HVariant::st: total += std::uint64_t(s.k) * s.m; break;
                default: total += 1; break;
            }
        }
    return total;
}

} // namespace gridjunta
