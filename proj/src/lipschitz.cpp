#include "gridjunta/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gridjunta/errors.hpp"
#include "gridjunta/rng.hpp"

namespace gridjunta {

TorusMap TorusMap::identity(std::uint32_t k, std::uint32_t n) {
    return dictator_tuple(k, n, n);
}

TorusMap TorusMap::dictator_tuple(std::uint32_t k, std::uint32_t n, std::uint32_t m) {
    TorusMap f;
    GridShape shape(k, n, k);
    for (std::uint32_t i = 0; i < m; ++i) {
        GridFunction c(shape);
        const std::uint32_t coord = i % n;
        for (std::size_t idx = 0; idx < c.size(); ++idx)
            c.set(idx, static_cast<std::uint16_t>((idx / shape.pow(coord)) % k));
        f.components.push_back(std::move(c));
    }
    return f;
}

namespace {

std::uint32_t out_dist(std::uint16_t a, std::uint16_t b, std::uint32_t l, GraphMode mode) {
    return mode == GraphMode::torus ? cyclic_distance(a, b, l)
                                    : (a > b ? a - b : b - a);
}

// Applies fn(p, q) over every edge {p, q} of the domain graph (indices).
template <class Fn>
void for_each_edge(const GridShape& shape, GraphMode mode, Fn&& fn) {
    for (std::uint32_t j = 0; j < shape.n; ++j) {
        const std::size_t stride = shape.pow(j);
        const std::size_t outer = shape.point_count() / (stride * shape.k);
        for (std::size_t hi = 0; hi < outer; ++hi)
            for (std::size_t lo = 0; lo < stride; ++lo) {
                const std::size_t base = hi * stride * shape.k + lo;
                for (std::uint32_t z = 0; z + 1 < shape.k; ++z)
                    fn(base + z * stride, base + (z + 1) * stride);
                if (mode == GraphMode::torus && shape.k >= 3)
                    fn(base + std::size_t(shape.k - 1) * stride, base);
            }
    }
}

} // namespace

LipschitzConstant lipschitz_constant(const TorusMap& f, GraphMode mode) {
    const GridShape& shape = f.domain();
    LipschitzConstant lc;
    lc.n = shape.n;
    lc.m = static_cast<std::uint32_t>(f.arity());
    for_each_edge(shape, mode, [&](std::size_t p, std::size_t q) {
        std::uint64_t sum = 0;
        for (const GridFunction& c : f.components)
            sum += out_dist(c[p], c[q], shape.l, mode);
        lc.max_edge_sum = std::max(lc.max_edge_sum, sum);
    });
    return lc;
}

Displacement displacement_sum(const GridFunction& component, GraphMode mode) {
    const GridShape& shape = component.shape();
    Displacement d;
    if (mode == GraphMode::torus) {
        // sum over all x and j of the cyclic step to x + e_j
        d.denominator = shape.point_count();
        for (std::uint32_t j = 0; j < shape.n; ++j) {
            const std::size_t stride = shape.pow(j);
            const std::size_t outer = shape.point_count() / (stride * shape.k);
            for (std::size_t hi = 0; hi < outer; ++hi)
                for (std::size_t lo = 0; lo < stride; ++lo) {
                    const std::size_t base = hi * stride * shape.k + lo;
                    for (std::uint32_t z = 0; z < shape.k; ++z) {
                        const std::uint32_t znext = z + 1 == shape.k ? 0 : z + 1;
                        d.numerator += cyclic_distance(component[base + z * stride],
                                                       component[base + znext * stride],
                                                       shape.l);
                    }
                }
        }
    } else {
        // average over direction-j grid edges, summed over j
        d.denominator = std::uint64_t(shape.point_count() / shape.k) * (shape.k - 1);
        for_each_edge(shape, GraphMode::grid, [&](std::size_t p, std::size_t q) {
            d.numerator += out_dist(component[p], component[q], shape.l, GraphMode::grid);
        });
    }
    return d;
}

std::vector<std::size_t> select_good_coordinates(const TorusMap& f, double delta,
                                                 GraphMode mode) {
    if (!(delta > 0.0)) throw std::invalid_argument("select_good_coordinates: delta must be > 0");
    const LipschitzConstant lc = lipschitz_constant(f, mode);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.arity(); ++i) {
        const Displacement d = displacement_sum(f.components[i], mode);
        if (delta * d.value() <= lc.alpha()) out.push_back(i);
    }
    return out;
}

LevelSetFamily level_sets(const GridFunction& component, GraphMode mode) {
    const GridShape& shape = component.shape();
    LevelSetFamily fam;
    fam.mode = mode;
    fam.l = shape.l;
    const GridShape ind_shape(shape.k, shape.n, 2);
    if (mode == GraphMode::torus) {
        const std::uint32_t window = shape.l / 2; // floor(l/2)
        for (std::uint32_t t = 0; t < shape.l; ++t) {
            GridFunction ind(ind_shape);
            for (std::size_t idx = 0; idx < component.size(); ++idx) {
                // v in {t, t+1, ..., t + window - 1} mod l
                const std::uint32_t offset = (component[idx] + shape.l - t) % shape.l;
                if (offset < window) ind.set(idx, 1);
            }
            fam.boundaries.push_back(edge_boundary(ind, GraphMode::torus));
            fam.indicators.push_back(std::move(ind));
        }
    } else {
        for (std::uint32_t t = 1; t < shape.l; ++t) {
            GridFunction ind(ind_shape);
            for (std::size_t idx = 0; idx < component.size(); ++idx)
                if (component[idx] >= t) ind.set(idx, 1); // 0-based v >= t <=> 1-based v > t
            fam.boundaries.push_back(edge_boundary(ind, GraphMode::grid));
            fam.indicators.push_back(std::move(ind));
        }
    }
    return fam;
}

std::vector<double> allocate_eps(double eps, const std::vector<std::uint64_t>& boundaries,
                                 double B, GraphMode mode, const GridShape& domain) {
    const double points = double(domain.point_count());
    const double scale = mode == GraphMode::torus ? 4.0 : 2.0;
    double sum_bound = 0.0;
    for (std::uint64_t b : boundaries) sum_bound += double(b);
    sum_bound /= scale * points;
    if (B < sum_bound)
        throw std::invalid_argument("allocate_eps: B is below the level-set sum bound");
    std::vector<double> out(boundaries.size(), 0.0);
    if (B <= 0.0) return out; // all levels constant
    for (std::size_t t = 0; t < boundaries.size(); ++t)
        out[t] = eps * double(boundaries[t]) / (scale * points * B);
    return out;
}

namespace {

// Splits the domain into the J-subgrid and its complement; computes mixed
// radix strides so that ambient = combine(slice over R, cell over J).
struct SliceDecomposition {
    std::vector<std::uint32_t> j_coords;  // sorted
    std::vector<std::uint32_t> r_coords;  // the rest, sorted
    std::vector<std::size_t> j_strides;
    std::vector<std::size_t> r_strides;
    std::uint32_t k = 0;
    std::size_t j_cells = 1;
    std::size_t r_slices = 1;

    SliceDecomposition(const GridShape& shape, const std::vector<std::uint32_t>& J) {
        k = shape.k;
        j_coords = J;
        std::size_t pos = 0;
        for (std::uint32_t c = 0; c < shape.n; ++c) {
            if (pos < J.size() && J[pos] == c) {
                j_strides.push_back(shape.pow(c));
                j_cells *= k;
                ++pos;
            } else {
                r_coords.push_back(c);
                r_strides.push_back(shape.pow(c));
                r_slices *= k;
            }
        }
    }

    std::size_t ambient(std::size_t slice_idx, std::size_t cell_idx) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < r_strides.size(); ++i) {
            idx += (slice_idx % k) * r_strides[i];
            slice_idx /= k;
        }
        for (std::size_t i = 0; i < j_strides.size(); ++i) {
            idx += (cell_idx % k) * j_strides[i];
            cell_idx /= k;
        }
        return idx;
    }

    std::vector<std::uint32_t> digits(std::size_t slice_idx) const {
        std::vector<std::uint32_t> d(r_coords.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            d[i] = static_cast<std::uint32_t>(slice_idx % k);
            slice_idx /= k;
        }
        return d;
    }
};

// True if digits(a) < digits(b) comparing coordinates in increasing position.
bool lex_less(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

MergeResult merge_torus_juntas(const GridFunction& f, const LevelSetFamily& levels,
                               const std::vector<Junta>& level_juntas,
                               std::uint64_t max_slices, std::uint64_t sample_seed) {
    if (levels.indicators.size() != level_juntas.size())
        throw std::invalid_argument("merge_torus_juntas: level/junta count mismatch");
    const GridShape& shape = f.shape();

    // J = union of the level-junta coordinate sets
    std::vector<std::uint32_t> J;
    for (const Junta& g : level_juntas) J.insert(J.end(), g.coords.begin(), g.coords.end());
    std::sort(J.begin(), J.end());
    J.erase(std::unique(J.begin(), J.end()), J.end());

    const SliceDecomposition dec(shape, J);
    const std::size_t levels_n = level_juntas.size();

    auto slice_cost = [&](std::size_t slice) {
        std::uint64_t cost = 0;
        for (std::size_t cell = 0; cell < dec.j_cells; ++cell) {
            const std::size_t idx = dec.ambient(slice, cell);
            for (std::size_t t = 0; t < levels_n; ++t)
                cost += levels.indicators[t][idx] != level_juntas[t].eval_index(idx);
        }
        return cost;
    };

    MergeResult res;
    std::uint64_t best_cost = ~std::uint64_t{0};
    std::size_t best_slice = 0;
    std::vector<std::uint32_t> best_digits;

    auto consider = [&](std::size_t slice) {
        const std::uint64_t c = slice_cost(slice);
        std::vector<std::uint32_t> d = dec.digits(slice);
        if (c < best_cost || (c == best_cost && lex_less(d, best_digits))) {
            best_cost = c;
            best_slice = slice;
            best_digits = std::move(d);
        }
    };

    if (dec.r_slices <= max_slices) {
        for (std::size_t s = 0; s < dec.r_slices; ++s) consider(s);
    } else {
        res.sampled = true;
        SplitMix64 rng(sample_seed);
        for (std::uint64_t i = 0; i < max_slices; ++i)
            consider(static_cast<std::size_t>(rng.below(dec.r_slices)));
    }

    // h(y, z) = f(y0, z)
    res.junta.shape = shape;
    res.junta.coords = J;
    res.junta.table.assign(dec.j_cells, 0);
    for (std::size_t cell = 0; cell < dec.j_cells; ++cell)
        res.junta.table[cell] = f[dec.ambient(best_slice, cell)];
    res.slice_point = best_digits;

    // Guarantee |f - h|_1 <= sum_t |f^(t) - g_t|_1, exact numerators.
    res.lhs_numerator = l1_numerator(f, res.junta, Metric::cyclic);
    for (std::size_t t = 0; t < levels_n; ++t)
        res.rhs_numerator +=
            l1_numerator(levels.indicators[t], level_juntas[t], Metric::absolute);
    if (res.lhs_numerator > res.rhs_numerator)
        throw ContractViolation("merge_torus_juntas: slice guarantee failed (sampled=" +
                                std::to_string(res.sampled) + ")");
    return res;
}

namespace {

MapAnalysis analyze_impl(const TorusMap& f, double delta, double eps, GraphMode mode,
                         const AnalyzeOptions& opts) {
    if (!(delta > 0.0) || !(eps > 0.0))
        throw std::invalid_argument("analyze: delta and eps must be > 0");
    const GridShape& shape = f.domain();
    MapAnalysis out;
    out.mode = mode;
    out.alpha = lipschitz_constant(f, mode);

    for (std::size_t i = 0; i < f.arity(); ++i) {
        CoordinateAnalysis ca;
        ca.index = i;
        ca.displacement = displacement_sum(f.components[i], mode);
        ca.selected = delta * ca.displacement.value() <= out.alpha.alpha();
        if (!ca.selected) {
            ca.flags.push_back("excluded:displacement");
            out.coordinates.push_back(std::move(ca));
            continue;
        }

        const GridFunction& comp = f.components[i];
        LevelSetFamily levels = level_sets(comp, mode);

        // eps_t = eps b_t / (scale k^n B) with B = S / denom, computed as
        // eps b_t * denom / (scale k^n S) to keep the exact sum property.
        const double scale = mode == GraphMode::torus ? 4.0 : 2.0;
        const std::uint64_t S = ca.displacement.numerator;
        const std::uint64_t denom = ca.displacement.denominator;
        std::uint64_t boundary_sum = 0;
        for (std::uint64_t b : levels.boundaries) boundary_sum += b;

        // Exact level-set sum bound: scale * S * k^n >= denom * sum_t b_t.
        const bool sum_bound_ok =
            (unsigned __int128)scale * S * shape.point_count() >=
            (unsigned __int128)denom * boundary_sum;
        if (!sum_bound_ok)
            throw ContractViolation("analyze: displacement sum bound failed");

        std::vector<Junta> level_juntas;
        for (std::size_t t = 0; t < levels.indicators.size(); ++t) {
            if (levels.boundaries[t] == 0) {
                // constant level set: the constant junta is exact
                ca.eps_alloc.push_back(0.0);
                ca.level_results.push_back(std::nullopt);
                level_juntas.push_back(
                    Junta::constant(levels.indicators[t].shape(),
                                    levels.indicators[t][0]));
                continue;
            }
            const double eps_t = S == 0 ? eps
                                        : eps * double(levels.boundaries[t]) * double(denom) /
                                              (scale * double(shape.point_count()) * double(S));
            ca.eps_alloc.push_back(eps_t);
            ca.eps_spent += eps_t;
            ExtractResult er = grid_junta_extract(
                levels.indicators[t], eps_t, ExtractMethod::main,
                mode == GraphMode::torus ? GraphMode::torus : GraphMode::grid,
                opts.max_points);
            level_juntas.push_back(er.junta);
            ca.level_results.push_back(std::move(er));
        }

        if (mode == GraphMode::torus) {
            MergeResult mr = merge_torus_juntas(comp, levels, level_juntas, opts.max_slices,
                                                SplitMix64::derive(opts.seed, i));
            ca.junta = std::move(mr.junta);
            if (mr.sampled) ca.flags.push_back("merge:sampled");
            ca.distance_numerator = mr.lhs_numerator;
        } else {
            // g = 1 + sum_t g_t: a union-junta with values in [l]
            std::vector<std::uint32_t> J;
            for (const Junta& g : level_juntas) J.insert(J.end(), g.coords.begin(), g.coords.end());
            std::sort(J.begin(), J.end());
            J.erase(std::unique(J.begin(), J.end()), J.end());
            Junta g;
            g.shape = shape;
            g.coords = J;
            std::size_t cells = 1;
            for (std::size_t q = 0; q < J.size(); ++q) cells *= shape.k;
            g.table.assign(cells, 0);
            const SliceDecomposition dec(shape, J);
            for (std::size_t cell = 0; cell < cells; ++cell) {
                const std::size_t idx = dec.ambient(0, cell);
                std::uint32_t v = 0;
                for (const Junta& gt : level_juntas) v += gt.eval_index(idx);
                g.table[cell] = static_cast<std::uint16_t>(v);
            }
            ca.junta = std::move(g);
            ca.distance_numerator = l1_numerator(comp, ca.junta, Metric::absolute);
            // triangle inequality; equality requires nested level juntas
            std::uint64_t rhs = 0;
            for (std::size_t t = 0; t < levels.indicators.size(); ++t)
                rhs += l1_numerator(levels.indicators[t], level_juntas[t], Metric::absolute);
            if (ca.distance_numerator > rhs)
                throw ContractViolation("analyze_grid_map: level-set triangle bound failed");
            if (ca.distance_numerator < rhs) ca.flags.push_back("levels:strict-inequality");
        }

        ca.distance = double(ca.distance_numerator) / double(shape.point_count());
        if (ca.distance > eps)
            throw ContractViolation("analyze: coordinate " + std::to_string(i) +
                                    " missed its eps contract");

        ca.report.label = mode == GraphMode::torus ? "lipschitz-torus" : "lipschitz-grid";
        ca.report.measured = double(ca.junta.size());
        const double B = ca.displacement.value();
        if (mode == GraphMode::torus) {
            ca.report.bound = double(shape.l) *
                              std::exp(4.0 * constants::C1 * B * double(shape.k) / eps);
            ca.report.constants = {{"C1", constants::C1}, {"B", B}};
            ca.flags.push_back("bound=l*exp(4*C1*B*k/eps)");
        } else {
            ca.report.bound = double(shape.l - 1) *
                              std::exp(2.0 * constants::C1 * B * double(shape.k) / eps);
            ca.report.constants = {{"C1", constants::C1}, {"B", B}};
            ca.flags.push_back("bound=(l-1)*exp(2*C1*B*k/eps)");
        }
        out.coordinates.push_back(std::move(ca));
    }
    return out;
}

} // namespace

std::size_t MapAnalysis::selected_count() const {
    std::size_t c = 0;
    for (const auto& ca : coordinates) c += ca.selected;
    return c;
}

MapAnalysis analyze_torus_map(const TorusMap& f, double delta, double eps,
                              const AnalyzeOptions& opts) {
    return analyze_impl(f, delta, eps, GraphMode::torus, opts);
}

MapAnalysis analyze_grid_map(const TorusMap& f, double delta, double eps,
                             const AnalyzeOptions& opts) {
    return analyze_impl(f, delta, eps, GraphMode::grid, opts);
}

} // namespace gridjunta
