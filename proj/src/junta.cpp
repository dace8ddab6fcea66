#include "gridjunta/junta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gridjunta/errors.hpp"

namespace gridjunta {

std::uint16_t Junta::eval_index(std::size_t ambient_idx) const {
    const std::uint32_t k = shape.k;
    std::size_t j_idx = 0, scale = 1;
    for (std::uint32_t c : coords) {
        const std::size_t digit = (ambient_idx / shape.pow(c)) % k;
        j_idx += digit * scale;
        scale *= k;
    }
    return table[j_idx];
}

GridFunction Junta::materialize() const {
    GridFunction g(shape);
    // odometer over ambient points; tracks the junta-table index incrementally
    std::vector<std::uint32_t> digits(shape.n, 0);
    std::vector<std::size_t> coord_scale(shape.n, 0);
    std::size_t scale = 1;
    for (std::uint32_t c : coords) {
        coord_scale[c] = scale;
        scale *= shape.k;
    }
    std::size_t j_idx = 0;
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        g.set(idx, table[j_idx]);
        for (std::uint32_t j = 0; j < shape.n; ++j) {
            if (++digits[j] < shape.k) {
                j_idx += coord_scale[j];
                break;
            }
            digits[j] = 0;
            j_idx -= coord_scale[j] * (shape.k - 1);
        }
    }
    return g;
}

Junta Junta::constant(GridShape shape, std::uint16_t value) {
    return Junta{shape, {}, {value}};
}

std::uint64_t l1_numerator(const GridFunction& f, const Junta& g, Metric metric) {
    if (!(f.shape() == g.shape))
        throw std::invalid_argument("l1_distance: junta shape mismatch");
    return l1_numerator(f, g.materialize(), metric);
}

double l1_distance(const GridFunction& f, const Junta& g, Metric metric) {
    return double(l1_numerator(f, g, metric)) / double(f.size());
}

Junta plurality_junta(const GridFunction& f, std::span<const std::uint32_t> coords) {
    const GridShape& shape = f.shape();
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] >= shape.n) throw std::out_of_range("plurality_junta: bad coordinate");
        if (i > 0 && coords[i] <= coords[i - 1])
            throw std::invalid_argument("plurality_junta: coords must be strictly increasing");
    }
    std::size_t cells = 1;
    for (std::size_t i = 0; i < coords.size(); ++i) cells *= shape.k;

    // counts[cell * l + value]
    std::vector<std::uint32_t> counts(cells * shape.l, 0);
    std::vector<std::uint32_t> digits(shape.n, 0);
    std::vector<std::size_t> coord_scale(shape.n, 0);
    std::size_t scale = 1;
    for (std::uint32_t c : coords) {
        coord_scale[c] = scale;
        scale *= shape.k;
    }
    std::size_t cell = 0;
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        ++counts[cell * shape.l + f[idx]];
        for (std::uint32_t j = 0; j < shape.n; ++j) {
            if (++digits[j] < shape.k) {
                cell += coord_scale[j];
                break;
            }
            digits[j] = 0;
            cell -= coord_scale[j] * (shape.k - 1);
        }
    }

    Junta g{shape, {coords.begin(), coords.end()}, std::vector<std::uint16_t>(cells, 0)};
    for (std::size_t c = 0; c < cells; ++c) {
        std::uint32_t best_count = 0;
        std::uint16_t best_value = 0;
        for (std::uint32_t v = 0; v < shape.l; ++v) {
            const std::uint32_t cnt = counts[c * shape.l + v];
            if (cnt > best_count) { // ties stay with the smaller value
                best_count = cnt;
                best_value = static_cast<std::uint16_t>(v);
            }
        }
        g.table[c] = best_value;
    }
    return g;
}

Junta plurality_junta(const CubeFunction& f, std::span<const std::uint32_t> coords) {
    return plurality_junta(f.to_grid(), coords);
}

std::optional<std::size_t> JuntaSearchResult::minimal_size(double eps) const {
    for (std::size_t r = 0; r < best_distance.size(); ++r)
        if (best_distance[r] <= eps) return r;
    return std::nullopt;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
    return v;
}

// All r-subsets of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::uint32_t n, std::uint32_t r, Fn&& fn) {
    std::vector<std::uint32_t> c(r);
    std::iota(c.begin(), c.end(), 0);
    if (r > n) return;
    while (true) {
        fn(std::span<const std::uint32_t>(c));
        std::uint32_t i = r;
        while (i > 0 && c[i - 1] == n - r + i - 1) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::uint32_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
    }
}

} // namespace

JuntaSearchResult best_junta_search(const GridFunction& f, std::uint32_t max_size,
                                    double eps, std::uint64_t max_subsets) {
    const std::uint32_t n = f.shape().n;
    max_size = std::min(max_size, n);
    std::uint64_t total_subsets = 0;
    for (std::uint32_t r = 0; r <= max_size; ++r) total_subsets += binomial(n, r);
    if (total_subsets > max_subsets)
        throw BudgetExceeded("best_junta_search: " + std::to_string(total_subsets) +
                             " subsets exceed the budget of " + std::to_string(max_subsets));

    JuntaSearchResult res;
    res.best_distance.assign(max_size + 1, std::numeric_limits<double>::infinity());
    res.best_numerator.assign(max_size + 1, ~std::uint64_t{0});
    const double points = double(f.size());
    for (std::uint32_t r = 0; r <= max_size; ++r) {
        for_each_subset(n, r, [&](std::span<const std::uint32_t> coords) {
            ++res.subsets_tried;
            Junta g = plurality_junta(f, coords);
            const std::uint64_t num = l1_numerator(f, g, Metric::absolute);
            if (num < res.best_numerator[r]) {
                res.best_numerator[r] = num;
                res.best_distance[r] = double(num) / points;
            }
            if (!res.junta && double(num) / points <= eps) res.junta = std::move(g);
        });
    }
    return res;
}

CubeExtractResult friedgut_extract(const CubeFunction& f, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("friedgut_extract: eps must be > 0");
    const std::uint32_t n = f.n();
    std::vector<std::uint64_t> pairs(n);
    std::uint64_t total_pairs = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        pairs[i] = influence_pair_count(f, i);
        total_pairs += pairs[i];
    }
    const double total_inf = std::ldexp(double(total_pairs), 1 - int(n));

    // Coordinates sorted by influence descending, index ascending on ties;
    // candidates are the cumulative groups of equal influence (positive only).
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return pairs[a] > pairs[b]; });

    const GridFunction grid = f.to_grid();
    const double points = double(f.size());

    auto finish = [&](Junta g, std::uint64_t num) {
        CubeExtractResult res{std::move(g), double(num) / points, num, total_inf, {}};
        res.report.label = "friedgut";
        res.report.measured = double(res.junta.size());
        res.report.bound = std::exp(constants::C0 * total_inf / eps);
        res.report.constants = {{"C0", constants::C0}, {"Inf", total_inf}, {"eps", eps}};
        return res;
    };

    std::vector<std::uint32_t> coords;
    std::size_t taken = 0;
    while (true) {
        // candidate J: all coordinates taken so far (initially empty)
        std::vector<std::uint32_t> sorted_coords(coords);
        std::sort(sorted_coords.begin(), sorted_coords.end());
        Junta g = plurality_junta(grid, sorted_coords);
        const std::uint64_t num = l1_numerator(grid, g, Metric::absolute);
        if (double(num) / points <= eps) return finish(std::move(g), num);
        // extend by the next group of tied positive influences
        if (taken >= n || pairs[order[taken]] == 0) break;
        const std::uint64_t level = pairs[order[taken]];
        while (taken < n && pairs[order[taken]] == level) coords.push_back(order[taken++]);
    }

    // Terminal fallback: all coordinates (the junta is f itself, distance 0).
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    Junta g = plurality_junta(grid, all);
    return finish(std::move(g), l1_numerator(grid, g, Metric::absolute));
}

} // namespace gridjunta
