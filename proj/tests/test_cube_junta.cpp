#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "gridjunta/constructions.hpp"
#include "gridjunta/cube.hpp"
#include "gridjunta/errors.hpp"
#include "gridjunta/junta.hpp"
#include "gridjunta/report.hpp"
#include "gridjunta/rng.hpp"

using namespace gridjunta;

namespace {

CubeFunction cube_from_mask(std::uint32_t n, std::uint64_t mask) {
    CubeFunction f(n);
    for (std::size_t i = 0; i < f.size(); ++i)
        if ((mask >> i) & 1) f.set(i, true);
    return f;
}

// Oracle: influence by scanning every point.
std::uint64_t pair_count_oracle(const CubeFunction& f, std::uint32_t i) {
    std::uint64_t c = 0;
    for (std::size_t x = 0; x < f.size(); ++x)
        if ((x >> i & 1) == 0 && f[x] != f[x ^ (std::size_t{1} << i)]) ++c;
    return c;
}

} // namespace

TEST_CASE("influence examples") {
    // dictator f = x_1 on {0,1}^3
    CubeFunction dict(3);
    for (std::size_t x = 0; x < 8; ++x)
        if (x & 1) dict.set(x, true);
    CHECK(influence(dict, 0) == 1.0);
    CHECK(influence(dict, 1) == 0.0);
    CHECK(influence(dict, 2) == 0.0);
    CHECK(total_influence(dict) == 1.0);

    // parity: every influence is 1
    for (std::uint32_t n : {3u, 7u}) {
        CubeFunction par(n);
        for (std::size_t x = 0; x < par.size(); ++x)
            if (std::popcount(x) & 1u) par.set(x, true);
        for (std::uint32_t i = 0; i < n; ++i) CHECK(influence(par, i) == 1.0);
        CHECK(total_influence(par) == double(n));
    }

    // AND of two variables
    CubeFunction andf(2);
    andf.set(3, true);
    CHECK(influence(andf, 0) == 0.5);
    CHECK(influence(andf, 1) == 0.5);
    CHECK(total_influence(andf) == 1.0);
}

TEST_CASE("influence matches the point-scan oracle, including wide tables") {
    SplitMix64 seeds(3);
    for (std::uint32_t n : {1u, 4u, 6u, 7u, 8u}) {
        CubeFunction f(n);
        for (std::size_t x = 0; x < f.size(); ++x)
            if (seeds.bernoulli(0.5)) f.set(x, true);
        for (std::uint32_t i = 0; i < n; ++i)
            CHECK(influence_pair_count(f, i) == pair_count_oracle(f, i));
    }
}

TEST_CASE("total influence equals boundary over 2^(N-1), exhaustive on {0,1}^4") {
    for (std::uint64_t mask = 0; mask < (1u << 16); ++mask) {
        CubeFunction f = cube_from_mask(4, mask);
        const std::uint64_t pairs = total_boundary_pairs(f);
        const std::uint64_t grid_boundary = edge_boundary(f.to_grid(), GraphMode::grid);
        CHECK(pairs == grid_boundary); // cube pairs are exactly the grid edges
    }
}

TEST_CASE("plurality junta examples") {
    // f already a J-junta: returned unchanged
    GridFunction f = slab(4, 2, 2);
    const std::uint32_t coords0[] = {0};
    Junta j0 = plurality_junta(f, coords0);
    CHECK(l1_numerator(f, j0, Metric::absolute) == 0);

    // parity with J strictly smaller: every cell balanced, distance 1/2
    GridFunction par = parity_set(2, 3);
    const std::uint32_t coords01[] = {0, 1};
    Junta jp = plurality_junta(par, coords01);
    CHECK(l1_distance(par, jp, Metric::absolute) == 0.5);
    // ties break to 0
    for (std::uint16_t v : jp.table) CHECK(v == 0);

    // dictator x_1 with J = {2}: constant-0 junta, distance 1/2
    GridFunction dict = slab(2, 2, 1);
    const std::uint32_t coords1[] = {1};
    Junta jd = plurality_junta(dict, coords1);
    for (std::uint16_t v : jd.table) CHECK(v == 0);
    CHECK(l1_distance(dict, jd, Metric::absolute) == 0.5);
}

TEST_CASE("plurality junta is L1-optimal, exhaustive on {0,1}^3") {
    const GridShape shape(2, 3, 2);
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        GridFunction f(shape);
        for (std::size_t i = 0; i < 8; ++i)
            if ((mask >> i) & 1) f.set(i, 1);
        for (std::uint32_t jset = 0; jset < 8; ++jset) {
            std::vector<std::uint32_t> coords;
            for (std::uint32_t c = 0; c < 3; ++c)
                if ((jset >> c) & 1) coords.push_back(c);
            Junta plur = plurality_junta(f, coords);
            const std::uint64_t plur_num = l1_numerator(f, plur, Metric::absolute);
            // enumerate every J-junta table
            const std::size_t cells = std::size_t{1} << coords.size();
            for (std::uint64_t table = 0; table < (std::uint64_t{1} << cells); ++table) {
                Junta cand{shape, coords, std::vector<std::uint16_t>(cells)};
                for (std::size_t c = 0; c < cells; ++c)
                    cand.table[c] = (table >> c) & 1;
                CHECK(plur_num <= l1_numerator(f, cand, Metric::absolute));
            }
        }
    }
}

TEST_CASE("best_junta_search") {
    // dictator, M=1, eps=0: finds J={1}
    GridFunction dict = slab(2, 3, 1);
    auto r = best_junta_search(dict, 1, 0.0);
    REQUIRE(r.junta.has_value());
    CHECK(r.junta->coords == std::vector<std::uint32_t>{0});
    CHECK(r.best_distance[1] == 0.0);
    CHECK(r.minimal_size(0.0) == 1);

    // parity on {0,1}^3 with M=2: nothing within 1/4 (best distance 1/2)
    GridFunction par = parity_set(2, 3);
    auto rp = best_junta_search(par, 2, 0.25);
    CHECK(!rp.junta.has_value());
    CHECK(rp.best_distance[0] == 0.5);
    CHECK(rp.best_distance[1] == 0.5);
    CHECK(rp.best_distance[2] == 0.5);

    // full size with eps=0 always finds f itself
    GridFunction f = random_set(3, 2, 0.5, 8);
    auto rf = best_junta_search(f, 2, 0.0);
    REQUIRE(rf.junta.has_value());
    CHECK(l1_numerator(f, *rf.junta, Metric::absolute) == 0);

    // budget refusal is explicit
    CHECK_THROWS_AS(best_junta_search(parity_set(2, 10), 5, 0.1, 10), BudgetExceeded);
}

TEST_CASE("friedgut_extract") {
    // dictator, eps = 0.1: J = {1}, distance 0
    CubeFunction dict(5);
    for (std::size_t x = 0; x < 32; ++x)
        if (x & 1) dict.set(x, true);
    auto r = friedgut_extract(dict, 0.1);
    CHECK(r.junta.coords == std::vector<std::uint32_t>{0});
    CHECK(r.distance == 0.0);
    CHECK(r.report.measured == 1.0);
    CHECK(r.report.bound == doctest::Approx(std::exp(constants::C0 / 0.1)));
    CHECK(r.report.holds());

    // constant: J is empty
    CubeFunction zero(4);
    auto rz = friedgut_extract(zero, 0.05);
    CHECK(rz.junta.coords.empty());
    CHECK(rz.distance == 0.0);

    // random functions: contract plus size bound on a small corpus
    SplitMix64 seeds(17);
    for (int trial = 0; trial < 20; ++trial) {
        CubeFunction f(6);
        for (std::size_t x = 0; x < f.size(); ++x)
            if (seeds.bernoulli(0.3)) f.set(x, true);
        for (double eps : {0.05, 0.1, 0.25}) {
            auto res = friedgut_extract(f, eps);
            CHECK(res.distance <= eps);
            // independent recomputation of the closeness
            CHECK(l1_distance(f.to_grid(), res.junta, Metric::absolute) == res.distance);
            CHECK(double(res.junta.size()) <= std::exp(constants::C0 * res.total_inf / eps));
        }
    }
}

TEST_CASE("best_junta_search never beats friedgut_extract's achieved size downward") {
    SplitMix64 seeds(23);
    for (int trial = 0; trial < 10; ++trial) {
        CubeFunction f(5);
        for (std::size_t x = 0; x < f.size(); ++x)
            if (seeds.bernoulli(0.5)) f.set(x, true);
        const double eps = 0.2;
        auto pipeline = friedgut_extract(f, eps);
        auto oracle = best_junta_search(f.to_grid(), 5, eps);
        REQUIRE(oracle.minimal_size(eps).has_value());
        CHECK(*oracle.minimal_size(eps) <= pipeline.junta.size());
    }
}

TEST_CASE("junta materialize and eval agree") {
    SplitMix64 seeds(31);
    GridFunction f = random_function(4, 3, 3, seeds.next());
    const std::uint32_t coords[] = {0, 2};
    Junta g = plurality_junta(f, coords);
    GridFunction mat = g.materialize();
    for (std::size_t i = 0; i < mat.size(); ++i) CHECK(mat[i] == g.eval_index(i));
}
