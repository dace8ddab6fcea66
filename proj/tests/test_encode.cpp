#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gridjunta/constructions.hpp"
#include "gridjunta/encode.hpp"
#include "gridjunta/errors.hpp"
#include "gridjunta/rng.hpp"

using namespace gridjunta;

namespace {

// Oracle: lift by evaluating phi_(n) pointwise instead of the table identity.
CubeFunction lift_oracle(const GridFunction& f) {
    const GridShape& shape = f.shape();
    const Encoding enc = Encoding::make(shape.k, shape.n);
    CubeFunction c(enc.cube_dim());
    for (std::size_t y = 0; y < c.size(); ++y) {
        std::vector<std::uint32_t> x(shape.n);
        for (std::uint32_t j = 0; j < shape.n; ++j) {
            std::vector<std::uint8_t> bits(enc.s);
            for (std::uint32_t i = 0; i < enc.s; ++i)
                bits[i] = (y >> (j * enc.s + i)) & 1;
            x[j] = phi_decode(bits) - 1;
        }
        c.set(y, f[index_of_point(shape, x)] != 0);
    }
    return c;
}

std::vector<std::uint8_t> fibre_from_mask(std::uint32_t k, std::uint64_t mask) {
    std::vector<std::uint8_t> F(k);
    for (std::uint32_t z = 0; z < k; ++z) F[z] = (mask >> z) & 1;
    return F;
}

} // namespace

TEST_CASE("phi bijection") {
    // s = 2: (0,0)->1, (1,0)->2, (0,1)->3, (1,1)->4
    const std::uint8_t b00[] = {0, 0}, b10[] = {1, 0}, b01[] = {0, 1}, b11[] = {1, 1};
    CHECK(phi_decode(std::span<const std::uint8_t>(b00, 2)) == 1);
    CHECK(phi_decode(std::span<const std::uint8_t>(b10, 2)) == 2);
    CHECK(phi_decode(std::span<const std::uint8_t>(b01, 2)) == 3);
    CHECK(phi_decode(std::span<const std::uint8_t>(b11, 2)) == 4);

    // s = 3: (1,1,1) -> 8
    const std::uint8_t b111[] = {1, 1, 1};
    CHECK(phi_decode(std::span<const std::uint8_t>(b111, 3)) == 8);

    for (std::uint32_t s : {1u, 2u, 3u, 4u}) {
        for (std::uint32_t z = 1; z <= (1u << s); ++z)
            CHECK(phi_decode(phi_encode(z, s)) == z);
    }
    CHECK_THROWS_AS(phi_encode(5, 2), std::out_of_range);
    CHECK_THROWS_AS(Encoding::make(3, 2), std::invalid_argument);
}

TEST_CASE("lift_to_cube equals the pointwise-phi oracle") {
    SplitMix64 seeds(41);
    for (auto [k, n] : {std::pair{2u, 3u}, {4u, 2u}, {8u, 2u}, {4u, 3u}}) {
        GridFunction f = random_set(k, n, 0.5, seeds.next());
        CHECK(lift_to_cube(f) == lift_oracle(f));
    }
    // k=4, n=1, f = 1_{{1,2}}: dictator in the high bit
    GridFunction f(GridShape(4, 1, 2));
    f.set(0, 1);
    f.set(1, 1);
    CubeFunction c = lift_to_cube(f);
    CHECK(influence(c, 1) == 1.0);
    CHECK(influence(c, 0) == 0.0);
    CHECK_THROWS_AS(lift_to_cube(random_set(3, 2, 0.5, 1)), std::invalid_argument);
}

TEST_CASE("lift preserves L1 distances exactly") {
    SplitMix64 seeds(43);
    for (int trial = 0; trial < 20; ++trial) {
        GridFunction f = random_set(4, 3, 0.5, seeds.next());
        GridFunction g = random_set(4, 3, 0.5, seeds.next());
        CHECK(l1_numerator(f, g, Metric::absolute) ==
              l1_numerator(lift_to_cube(f).to_grid(), lift_to_cube(g).to_grid(),
                           Metric::absolute));
    }
}

TEST_CASE("tilde_fibre_boundary examples") {
    // F = 1_{{1,2}} in [4] -> 2
    CHECK(tilde_fibre_boundary(fibre_from_mask(4, 0b0011)) == 2);
    // constant
    CHECK(tilde_fibre_boundary(fibre_from_mask(4, 0)) == 0);
    CHECK(tilde_fibre_boundary(fibre_from_mask(4, 0b1111)) == 0);
    // F = 1_{{1,3}} in [4] -> 2
    CHECK(tilde_fibre_boundary(fibre_from_mask(4, 0b0101)) == 2);
    // singleton in [2^s] has tilde boundary s
    for (std::uint32_t s : {1u, 2u, 3u, 4u})
        CHECK(tilde_fibre_boundary(fibre_from_mask(1u << s, 1)) == s);
}

TEST_CASE("tilde boundary equals the cube boundary of the lifted fibre") {
    SplitMix64 seeds(47);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t k = 1u << (1 + seeds.below(3));
        const std::uint64_t mask = seeds.below(std::uint64_t{1} << k);
        auto F = fibre_from_mask(k, mask);
        GridFunction f(GridShape(k, 1, 2));
        for (std::uint32_t z = 0; z < k; ++z)
            if (F[z]) f.set(z, 1);
        CHECK(tilde_fibre_boundary(F) == total_boundary_pairs(lift_to_cube(f)));
    }
}

TEST_CASE("Claim 2.1: tilde count <= (k-1) m, exhaustive over [8]") {
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        auto F = fibre_from_mask(8, mask);
        const FibreStats s = fibre_stats(F);
        CHECK(tilde_fibre_boundary(F) <= std::uint64_t(7) * s.m);
    }
}

TEST_CASE("influence transfer") {
    // A = dictator slab {x1 <= 2} on [4]^2
    GridFunction f = slab(4, 2, 2);
    TransferReport tr = influence_transfer_report(f);
    CHECK(tr.report.measured == 1.0); // one high-bit dictator
    CHECK(tr.report.bound == 2.0);    // 2*4/4
    CHECK(tr.holds_exact);

    // empty set
    TransferReport tz = influence_transfer_report(GridFunction(GridShape(4, 2, 2)));
    CHECK(tz.report.measured == 0.0);
    CHECK(tz.report.bound == 0.0);
    CHECK(tz.holds_exact);
}

TEST_CASE("influence transfer, exhaustive over all subsets of [4]^2") {
    const GridShape shape(4, 2, 2);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << 16); ++mask) {
        GridFunction f(shape);
        for (std::size_t i = 0; i < 16; ++i)
            if ((mask >> i) & 1) f.set(i, 1);
        const CubeFunction lifted = lift_to_cube(f);
        // exact rational comparison: cube pairs <= k * grid boundary
        CHECK(total_boundary_pairs(lifted) <= 4 * edge_boundary(f, GraphMode::grid));
    }
}

TEST_CASE("choose_embedding_side") {
    CHECK(choose_embedding_side(3, 2) == 16);
    CHECK(choose_embedding_side(3, 3) == 16);
    CHECK(choose_embedding_side(5, 4) == 32);
    CHECK(choose_embedding_side(3, 1) == 8); // n=1 needs l >= 2k
    CHECK_THROWS_AS(choose_embedding_side(2, 2), std::invalid_argument);
    // condition holds at the chosen l and fails at l/2
    for (std::uint32_t k : {3u, 5u, 6u, 7u, 11u})
        for (std::uint32_t n : {1u, 2u, 3u, 5u}) {
            const std::uint32_t l = choose_embedding_side(k, n);
            CHECK(std::pow(1.0 + double(k) / double(l - k), double(n)) <= 2.0 + 1e-12);
            if (l / 2 > k)
                CHECK(std::pow(1.0 + double(k) / double(l / 2 - k), double(n)) > 2.0);
        }
}

TEST_CASE("block embedding") {
    const BlockEmbedding emb = make_embedding(3, 2);
    CHECK(emb.l == 16);
    // widths partition [l]
    std::uint32_t total = 0;
    for (std::uint32_t x = 0; x < 3; ++x) total += emb.block_width(x);
    CHECK(total == 16);
    for (std::uint32_t y = 0; y < 16; ++y) {
        const std::uint32_t x = emb.block_of(y);
        CHECK(x < 3);
        // y lies inside its block's range
        CHECK(std::uint64_t(x) * 16 / 3 <= y);
        CHECK(y < std::uint64_t(x + 1) * 16 / 3);
    }

    // empty set embeds to empty
    GridFunction empty(GridShape(3, 2, 2));
    CHECK(block_embed(empty, emb).ones() == 0);

    // column A = {x1 = 1}: embedded boundary equals the multiplicity sum
    GridFunction col = slab(3, 2, 1);
    GridFunction emb_col = block_embed(col, emb);
    CHECK(edge_boundary(emb_col, GraphMode::grid) == block_boundary_exact(col, emb));

    // measure window: floor(l/k)^n |A| <= |A-breve| <= ceil(l/k)^n |A|
    SplitMix64 seeds(53);
    for (int trial = 0; trial < 100; ++trial) {
        GridFunction f = random_set(3, 2, 0.5, seeds.next());
        GridFunction g = block_embed(f, emb);
        CHECK(g.ones() >= 25 * f.ones());
        CHECK(g.ones() <= 36 * f.ones());
        // boundary ratio |dA-breve|/l^(n-1) <= 2 |dA|/k^(n-1), integer form
        const std::uint64_t lhs = edge_boundary(g, GraphMode::grid) * 3;
        const std::uint64_t rhs = 2 * edge_boundary(f, GraphMode::grid) * 16;
        CHECK(lhs <= rhs);
        CHECK(edge_boundary(g, GraphMode::grid) == block_boundary_exact(f, emb));
    }

    // budget refusal
    CHECK_THROWS_AS(block_embed(empty, emb, 10), BudgetExceeded);
}

TEST_CASE("project_block_junta") {
    const BlockEmbedding emb = make_embedding(3, 2);

    // block-constant junta projects to the block values
    GridFunction a = slab(3, 2, 1);
    GridFunction a_breve = block_embed(a, emb);
    const std::uint32_t coords0[] = {0};
    Junta g_breve = plurality_junta(a_breve, coords0);
    Junta g = project_block_junta(g_breve, emb);
    CHECK(l1_numerator(a, g, Metric::absolute) == 0);

    // constant junta projects to a constant
    Junta c = project_block_junta(Junta::constant(GridShape(16, 2, 2), 1), emb);
    CHECK(c.coords.empty());
    CHECK(c.table == std::vector<std::uint16_t>{1});

    // distance amplification <= (1 + k/(l-k))^n on random sets and juntas
    SplitMix64 seeds(59);
    const double factor = emb.expansion_factor();
    for (int trial = 0; trial < 100; ++trial) {
        GridFunction f = random_set(3, 2, 0.5, seeds.next());
        GridFunction fb = block_embed(f, emb);
        // random junta over [16]^2 on a random coordinate subset
        std::vector<std::uint32_t> coords;
        for (std::uint32_t cidx = 0; cidx < 2; ++cidx)
            if (seeds.bernoulli(0.5)) coords.push_back(cidx);
        std::size_t cells = 1;
        for (std::size_t q = 0; q < coords.size(); ++q) cells *= 16;
        Junta gb{GridShape(16, 2, 2), coords, {}};
        gb.table.resize(cells);
        for (auto& v : gb.table) v = seeds.bernoulli(0.5);
        Junta proj = project_block_junta(gb, emb);
        const double d_grid = l1_distance(f, proj, Metric::absolute);
        const double d_breve = l1_distance(fb, gb, Metric::absolute);
        CHECK(d_grid <= factor * d_breve + 1e-12);
    }
}
