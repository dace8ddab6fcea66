#include "gridjunta/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gridjunta {

std::optional<std::size_t> checked_pow(std::uint64_t base, std::uint32_t exp) {
    std::size_t r = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base)
            return std::nullopt;
        r *= base;
    }
    return r;
}

GridShape::GridShape(std::uint32_t k_, std::uint32_t n_, std::uint32_t l_)
    : k(k_), n(n_), l(l_) {
    if (k < 2) throw std::invalid_argument("GridShape: k must be >= 2");
    if (n < 1) throw std::invalid_argument("GridShape: n must be >= 1");
    if (l < 2) throw std::invalid_argument("GridShape: l must be >= 2");
    auto pc = checked_pow(k, n);
    if (!pc) throw std::invalid_argument("GridShape: k^n does not fit the address space");
    points_ = *pc;
}

std::size_t GridShape::pow(std::uint32_t e) const {
    std::size_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) r *= k;
    return r;
}

GridFunction::GridFunction(GridShape shape, std::uint16_t fill)
    : shape_(shape), packed_(shape.l == 2) {
    if (fill >= shape_.l) throw std::invalid_argument("GridFunction: fill value out of range");
    const std::size_t pc = shape_.point_count();
    if (packed_) {
        bits_.assign((pc + 63) / 64, fill ? ~std::uint64_t{0} : 0);
        if (fill && pc % 64 != 0) bits_.back() &= (std::uint64_t{1} << (pc % 64)) - 1;
    } else {
        words_.assign(pc, fill);
    }
}

void GridFunction::set(std::size_t idx, std::uint16_t v) {
    if (v >= shape_.l) throw std::invalid_argument("GridFunction::set: value out of range");
    if (packed_) {
        const std::uint64_t mask = std::uint64_t{1} << (idx & 63);
        if (v) bits_[idx >> 6] |= mask;
        else bits_[idx >> 6] &= ~mask;
    } else {
        words_[idx] = v;
    }
}

std::uint64_t GridFunction::ones() const {
    if (!packed_) throw std::invalid_argument("GridFunction::ones: requires l == 2");
    std::uint64_t c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c;
}

std::uint64_t GridFunction::count_value(std::uint16_t v) const {
    if (packed_) {
        const std::uint64_t one = ones();
        return v == 1 ? one : (v == 0 ? size() - one : 0);
    }
    return static_cast<std::uint64_t>(std::count(words_.begin(), words_.end(), v));
}

bool GridFunction::operator==(const GridFunction& o) const {
    return shape_ == o.shape_ && bits_ == o.bits_ && words_ == o.words_;
}

std::vector<std::uint32_t> point_of_index(const GridShape& shape, std::size_t idx) {
    std::vector<std::uint32_t> x(shape.n);
    for (std::uint32_t j = 0; j < shape.n; ++j) {
        x[j] = static_cast<std::uint32_t>(idx % shape.k);
        idx /= shape.k;
    }
    return x;
}

std::size_t index_of_point(const GridShape& shape, std::span<const std::uint32_t> x0) {
    std::size_t idx = 0;
    for (std::uint32_t j = shape.n; j-- > 0;) idx = idx * shape.k + x0[j];
    return idx;
}

namespace {

// Applies fn(lo, stride) for every direction-dir fibre line of the shape:
// the line's points are lo, lo + stride, ..., lo + (k-1) * stride.
template <class Fn>
void for_each_line(const GridShape& shape, std::uint32_t dir, Fn&& fn) {
    const std::size_t stride = shape.pow(dir);
    const std::size_t outer = shape.point_count() / (stride * shape.k);
    for (std::size_t hi = 0; hi < outer; ++hi)
        for (std::size_t lo = 0; lo < stride; ++lo)
            fn(hi * stride * shape.k + lo, stride);
}

std::uint64_t boundary_in_direction(const GridFunction& f, GraphMode mode, std::uint32_t dir) {
    const GridShape& shape = f.shape();
    const std::uint32_t k = shape.k;
    std::uint64_t count = 0;
    for_each_line(shape, dir, [&](std::size_t lo, std::size_t stride) {
        for (std::uint32_t z = 0; z + 1 < k; ++z)
            count += f[lo + z * stride] != f[lo + (z + 1) * stride];
        // k == 2: the wrap pair is the same edge as the grid edge.
        if (mode == GraphMode::torus && k >= 3)
            count += f[lo + std::size_t(k - 1) * stride] != f[lo];
    });
    return count;
}

} // namespace

std::uint64_t edge_boundary(const GridFunction& f, GraphMode mode,
                            std::optional<std::uint32_t> direction) {
    if (f.shape().l != 2) throw std::invalid_argument("edge_boundary: requires l == 2");
    if (direction) {
        if (*direction >= f.shape().n) throw std::out_of_range("edge_boundary: bad direction");
        return boundary_in_direction(f, mode, *direction);
    }
    std::uint64_t total = 0;
    for (std::uint32_t j = 0; j < f.shape().n; ++j) total += boundary_in_direction(f, mode, j);
    return total;
}

bool complement_boundary_check(const GridFunction& f) {
    GridFunction comp(f.shape());
    for (std::size_t i = 0; i < f.size(); ++i) comp.set(i, f[i] ? 0 : 1);
    return edge_boundary(f, GraphMode::grid) == edge_boundary(comp, GraphMode::grid) &&
           edge_boundary(f, GraphMode::torus) == edge_boundary(comp, GraphMode::torus);
}

namespace {

// Multiplicity of prime p in v.
std::uint32_t ord(std::uint64_t& v, std::uint64_t p) {
    std::uint32_t e = 0;
    while (v % p == 0) { v /= p; ++e; }
    return e;
}

// Exact integer r-th root of t^(r-1) * k^(n-r) via prime factorization,
// if the product is a perfect r-th power.
std::optional<std::uint64_t> exact_root(std::uint64_t t, std::uint32_t k, std::uint32_t n,
                                        std::uint32_t r) {
    std::uint64_t root = 1;
    std::uint64_t tv = t, kv = k;
    auto absorb = [&](std::uint64_t p) -> bool {
        const std::uint64_t e = std::uint64_t(ord(tv, p)) * (r - 1) + std::uint64_t(ord(kv, p)) * (n - r);
        if (e % r != 0) return false;
        for (std::uint64_t i = 0; i < e / r; ++i) {
            if (root > std::numeric_limits<std::uint64_t>::max() / p) return false;
            root *= p;
        }
        return true;
    };
    for (std::uint64_t p = 2; p * p <= std::max(tv, kv); ++p)
        if ((tv % p == 0 || kv % p == 0) && !absorb(p)) return std::nullopt;
    // leftover primes
    if (tv > 1 && kv == tv) {
        if (!absorb(tv)) return std::nullopt;
    } else {
        if (tv > 1 && !absorb(tv)) return std::nullopt;
        if (kv > 1 && !absorb(kv)) return std::nullopt;
    }
    return root;
}

} // namespace

double bollobas_leader_term(std::uint64_t t, std::uint32_t k, std::uint32_t n, std::uint32_t r) {
    if (r < 1 || r > n) throw std::out_of_range("bollobas_leader_term: r out of range");
    if (t == 0) return 0.0;
    if (auto root = exact_root(t, k, n, r))
        return double(r) * double(*root);
    const double log_val = (double(r - 1) * std::log2(double(t)) +
                            double(n - r) * std::log2(double(k))) / double(r);
    return double(r) * std::exp2(log_val);
}

double bollobas_leader_bound(std::uint64_t t, std::uint32_t k, std::uint32_t n) {
    const std::size_t total = GridShape(k, n).point_count();
    if (t > total) throw std::out_of_range("bollobas_leader_bound: t exceeds k^n");
    if (t == 0 || t == total) return 0.0;
    if (2 * t > total) t = total - t; // d(A^c) = dA
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t r = 1; r <= n; ++r)
        best = std::min(best, bollobas_leader_term(t, k, n, r));
    return best;
}

std::uint32_t cyclic_distance(std::uint32_t a, std::uint32_t b, std::uint32_t modulus) {
    if (a >= modulus || b >= modulus)
        throw std::out_of_range("cyclic_distance: value out of range");
    const std::uint32_t d = a > b ? a - b : b - a;
    return std::min(d, modulus - d);
}

std::uint64_t l1_numerator(const GridFunction& f, const GridFunction& g, Metric metric) {
    if (!(f.shape() == g.shape()))
        throw std::invalid_argument("l1_distance: shape mismatch");
    const std::uint32_t l = f.shape().l;
    std::uint64_t sum = 0;
    if (metric == Metric::absolute && f.packed() && g.packed()) {
        auto fw = f.bit_words(), gw = g.bit_words();
        for (std::size_t i = 0; i < fw.size(); ++i) sum += std::popcount(fw[i] ^ gw[i]);
        return sum;
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::uint16_t a = f[i], b = g[i];
        sum += metric == Metric::cyclic ? cyclic_distance(a, b, l)
                                        : (a > b ? a - b : b - a);
    }
    return sum;
}

double l1_distance(const GridFunction& f, const GridFunction& g, Metric metric) {
    return double(l1_numerator(f, g, metric)) / double(f.size());
}

FibreView::FibreView(const GridFunction& f, std::uint32_t dir, std::size_t base_index)
    : f_(&f), dir_(dir) {
    const GridShape& shape = f.shape();
    if (dir >= shape.n) throw std::out_of_range("fibre: bad direction");
    if (base_index >= shape.base_count(dir)) throw std::out_of_range("fibre: bad base index");
    stride_ = shape.pow(dir);
    const std::size_t lo_part = base_index % stride_;
    const std::size_t hi_part = base_index / stride_;
    lo_ = hi_part * stride_ * shape.k + lo_part;
}

FibreView fibre(const GridFunction& f, std::uint32_t dir, std::size_t base_index) {
    return FibreView(f, dir, base_index);
}

FibreStats fibre_stats(const GridFunction& f, std::uint32_t dir, std::size_t base_index) {
    if (f.shape().l != 2) throw std::invalid_argument("fibre_stats: requires l == 2");
    FibreView v(f, dir, base_index);
    FibreStats s;
    s.k = v.k();
    for (std::uint32_t z = 0; z < s.k; ++z) {
        s.ell += v[z];
        if (z + 1 < s.k) s.m += v[z] != v[z + 1];
    }
    return s;
}

FibreStats fibre_stats(std::span<const std::uint8_t> values) {
    FibreStats s;
    s.k = static_cast<std::uint32_t>(values.size());
    for (std::uint32_t z = 0; z < s.k; ++z) {
        s.ell += values[z] ? 1 : 0;
        if (z + 1 < s.k) s.m += (values[z] != 0) != (values[z + 1] != 0);
    }
    return s;
}

} // namespace gridjunta
