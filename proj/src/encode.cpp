#include "gridjunta/encode.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "gridjunta/errors.hpp"

namespace gridjunta {

std::optional<std::uint32_t> log2_exact(std::uint64_t k) {
    if (k == 0 || (k & (k - 1)) != 0) return std::nullopt;
    return static_cast<std::uint32_t>(std::countr_zero(k));
}

std::uint32_t phi_decode(std::span<const std::uint8_t> bits) {
    std::uint32_t z = 1;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) z += std::uint32_t{1} << i;
    return z;
}

std::vector<std::uint8_t> phi_encode(std::uint32_t z_one_based, std::uint32_t s) {
    if (z_one_based < 1 || z_one_based > (std::uint32_t{1} << s))
        throw std::out_of_range("phi_encode: z out of [k]");
    std::vector<std::uint8_t> bits(s);
    const std::uint32_t z0 = z_one_based - 1;
    for (std::uint32_t i = 0; i < s; ++i) bits[i] = (z0 >> i) & 1u;
    return bits;
}

Encoding Encoding::make(std::uint32_t k, std::uint32_t n) {
    auto s = log2_exact(k);
    if (!s || *s == 0) throw std::invalid_argument("Encoding: k must be a power of 2, >= 2");
    return Encoding{k, *s, n};
}

CubeFunction lift_to_cube(const GridFunction& f) {
    const GridShape& shape = f.shape();
    if (shape.l != 2) throw std::invalid_argument("lift_to_cube: requires l == 2");
    const Encoding enc = Encoding::make(shape.k, shape.n);
    // With little-endian indices on both sides, phi_(n) is the identity on
    // table positions (k^(j-1) = 2^(s(j-1))); copy bit-for-bit.
    CubeFunction c(enc.cube_dim());
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i]) c.set(i, true);
    return c;
}

std::uint64_t tilde_fibre_boundary(std::span<const std::uint8_t> F) {
    const auto s = log2_exact(F.size());
    if (!s) throw std::invalid_argument("tilde_fibre_boundary: fibre length must be a power of 2");
    std::uint64_t count = 0;
    for (std::uint32_t i = 0; i < *s; ++i) {
        const std::size_t step = std::size_t{1} << i;
        for (std::size_t z0 = 0; z0 < F.size(); ++z0)
            if ((z0 & step) == 0 && (F[z0] != 0) != (F[z0 + step] != 0)) ++count;
    }
    return count;
}

TransferReport influence_transfer_report(const GridFunction& f) {
    const GridShape& shape = f.shape();
    TransferReport tr;
    const CubeFunction lifted = lift_to_cube(f);
    tr.cube_pairs = total_boundary_pairs(lifted);
    tr.grid_boundary = edge_boundary(f, GraphMode::grid);
    tr.holds_exact = tr.cube_pairs <= std::uint64_t(shape.k) * tr.grid_boundary;
    tr.report.label = "influence-transfer";
    tr.report.measured = total_influence(lifted);
    tr.report.bound = 2.0 * double(tr.grid_boundary) / double(shape.pow(shape.n - 1));
    tr.report.constants = {{"k", double(shape.k)}, {"n", double(shape.n)}};
    return tr;
}

std::uint32_t BlockEmbedding::block_width(std::uint32_t x0) const {
    // |{y0 : block_of(y0) == x0}| = floor((x0+1) l / k) - floor(x0 l / k)
    return static_cast<std::uint32_t>((std::uint64_t(x0 + 1) * l) / k -
                                      (std::uint64_t(x0) * l) / k);
}

double BlockEmbedding::expansion_factor() const {
    return std::pow(1.0 + double(k) / double(l - k), double(n));
}

namespace {

// (l / (l-k))^n <= 2, decided exactly in 128-bit arithmetic when it fits,
// else by a logarithm test whose rounding can only postpone acceptance to
// the next (still valid) power of two.
bool size_condition_holds(std::uint64_t l, std::uint64_t k, std::uint32_t n) {
    if (n == 1) return l >= 2 * k;
    if (double(n) * std::log2(double(l)) < 126.0) {
        unsigned __int128 lhs = 1, rhs = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            lhs *= l;
            rhs *= (l - k);
        }
        return lhs <= 2 * rhs;
    }
    return double(n) * std::log2(double(l) / double(l - k)) <= 1.0 - 1e-12;
}

} // namespace

std::uint32_t choose_embedding_side(std::uint32_t k, std::uint32_t n) {
    if (k < 3) throw std::invalid_argument("choose_embedding_side: requires k >= 3");
    std::uint64_t l = std::uint64_t{1} << std::bit_width(std::uint64_t{k});
    while (!size_condition_holds(l, k, n)) l <<= 1;
    if (l > 0xFFFFFFFFULL) throw std::overflow_error("choose_embedding_side: l too large");
    return static_cast<std::uint32_t>(l);
}

BlockEmbedding make_embedding(std::uint32_t k, std::uint32_t n) {
    return BlockEmbedding{k, n, choose_embedding_side(k, n)};
}

GridFunction block_embed(const GridFunction& f, const BlockEmbedding& emb,
                         std::size_t max_points) {
    const GridShape& shape = f.shape();
    if (shape.k != emb.k || shape.n != emb.n)
        throw std::invalid_argument("block_embed: embedding mismatch");
    auto target_points = checked_pow(emb.l, emb.n);
    if (!target_points || *target_points > max_points)
        throw BudgetExceeded("block_embed: l^n exceeds the point budget");
    GridShape target(emb.l, emb.n, shape.l);
    GridFunction out(target);
    std::vector<std::uint32_t> y(emb.n, 0);
    std::vector<std::uint32_t> x(emb.n, 0);
    std::size_t src = 0; // index of the block point, maintained incrementally
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        out.set(idx, f[src]);
        for (std::uint32_t j = 0; j < emb.n; ++j) {
            if (++y[j] < emb.l) {
                const std::uint32_t bx = emb.block_of(y[j]);
                if (bx != x[j]) {
                    src += shape.pow(j) * (bx - x[j]);
                    x[j] = bx;
                }
                break;
            }
            y[j] = 0;
            src -= shape.pow(j) * x[j];
            x[j] = 0;
        }
    }
    return out;
}

std::uint64_t block_boundary_exact(const GridFunction& f, const BlockEmbedding& emb) {
    const GridShape& shape = f.shape();
    if (shape.l != 2) throw std::invalid_argument("block_boundary_exact: requires l == 2");
    if (shape.k != emb.k || shape.n != emb.n)
        throw std::invalid_argument("block_boundary_exact: embedding mismatch");
    // Each boundary edge {x, x + e_j} contributes prod_{i != j} width(x_i)
    // edges of the embedded boundary.
    std::uint64_t total = 0;
    for (std::uint32_t j = 0; j < shape.n; ++j) {
        const std::size_t stride = shape.pow(j);
        const std::size_t bases = shape.base_count(j);
        for (std::size_t b = 0; b < bases; ++b) {
            const FibreView line = fibre(f, j, b);
            bool crossing = false;
            for (std::uint32_t z = 0; z + 1 < shape.k; ++z)
                if (line[z] != line[z + 1]) { crossing = true; break; }
            if (!crossing) continue;
            // multiplicity of this line's edges
            std::uint64_t mult = 1;
            const std::size_t base_point = line.point_index(0);
            for (std::uint32_t i = 0; i < shape.n; ++i) {
                if (i == j) continue;
                const std::uint32_t digit =
                    static_cast<std::uint32_t>((base_point / shape.pow(i)) % shape.k);
                mult *= emb.block_width(digit);
            }
            std::uint64_t crossings = 0;
            for (std::uint32_t z = 0; z + 1 < shape.k; ++z)
                crossings += line[z] != line[z + 1];
            total += crossings * mult;
            (void)stride;
        }
    }
    return total;
}

Junta project_block_junta(const Junta& g_breve, const BlockEmbedding& emb) {
    if (g_breve.shape.k != emb.l || g_breve.shape.n != emb.n)
        throw std::invalid_argument("project_block_junta: junta not over [l]^n");
    const std::uint32_t k = emb.k;
    const std::uint32_t l_side = emb.l;
    const std::uint32_t alphabet = g_breve.shape.l;

    Junta g;
    g.shape = GridShape(k, emb.n, alphabet);
    g.coords = g_breve.coords;
    std::size_t cells = 1;
    for (std::size_t i = 0; i < g.coords.size(); ++i) cells *= k;
    g.table.assign(cells, 0);

    const std::size_t r = g.coords.size();
    std::vector<std::uint32_t> u(r, 0); // grid-digit assignment to the junta coords
    for (std::size_t cell = 0; cell < cells; ++cell) {
        // plurality of g_breve over the product of blocks (unweighted: the
        // off-J coordinates contribute a constant multiplicity per point)
        std::vector<std::uint64_t> counts(alphabet, 0);
        std::vector<std::uint32_t> z(r, 0), zlo(r, 0), zhi(r, 0);
        for (std::size_t i = 0; i < r; ++i) {
            // block u covers y0 in [floor(u l / k), floor((u+1) l / k))
            zlo[i] = static_cast<std::uint32_t>(std::uint64_t(u[i]) * l_side / k);
            zhi[i] = static_cast<std::uint32_t>(std::uint64_t(u[i] + 1) * l_side / k) - 1;
            z[i] = zlo[i];
        }
        while (true) {
            std::size_t tbl = 0, scale = 1;
            for (std::size_t i = 0; i < r; ++i) {
                tbl += z[i] * scale;
                scale *= l_side;
            }
            ++counts[g_breve.table[tbl]];
            std::size_t i = 0;
            while (i < r && z[i] == zhi[i]) {
                z[i] = zlo[i];
                ++i;
            }
            if (i == r) break;
            ++z[i];
        }
        std::uint16_t best_value = 0;
        std::uint64_t best_count = 0;
        for (std::uint32_t v = 0; v < alphabet; ++v)
            if (counts[v] > best_count) {
                best_count = counts[v];
                best_value = static_cast<std::uint16_t>(v);
            }
        if (r == 0) {
            // constant junta: single cell, value = its only table entry
            best_value = g_breve.table[0];
        }
        g.table[cell] = best_value;

        std::size_t i = 0;
        while (i < r && u[i] == k - 1u) {
            u[i] = 0;
            ++i;
        }
        if (i == r) break;
        ++u[i];
    }
    return g;
}

} // namespace gridjunta
