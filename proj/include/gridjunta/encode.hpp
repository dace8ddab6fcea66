#pragma once

// The two reductions from [k]^n to power-of-two structures: the binary
// expansion bijection phi lifting [k]^n (k = 2^s) to {0,1}^(sn), and the
// rectangular block embedding of [k]^n into [l]^n for general k.
//
// Bit i of block j is cube coordinate (j-1)s + i, matching phi's little-endian
// 2^(i-1) weights; with the little-endian grid index convention the lift is
// the identity on table indices.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gridjunta/cube.hpp"
#include "gridjunta/grid.hpp"
#include "gridjunta/junta.hpp"
#include "gridjunta/report.hpp"

namespace gridjunta {

// log2(k) if k is a power of two.
std::optional<std::uint32_t> log2_exact(std::uint64_t k);

// phi: {0,1}^s -> [k], (x_1..x_s) -> 1 + sum x_i 2^(i-1). Values 1-based.
std::uint32_t phi_decode(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> phi_encode(std::uint32_t z_one_based, std::uint32_t s);

struct Encoding {
    std::uint32_t k; // = 2^s
    std::uint32_t s;
    std::uint32_t n;

    static Encoding make(std::uint32_t k, std::uint32_t n);
    std::uint32_t cube_dim() const { return s * n; }
    // grid coordinate (0-based) owning cube coordinate i (0-based)
    std::uint32_t block_of(std::uint32_t cube_coord) const { return cube_coord / s; }
};

// f~ = f o phi_(n) : {0,1}^(sn) -> {0,1}. Requires l == 2, k a power of 2.
CubeFunction lift_to_cube(const GridFunction& f);

// #{(z,i) : z_i = 0, F(z) != F(z + 2^(i-1))} for F : [k] -> {0,1}, k = 2^s.
// Equals the cube edge boundary of phi^{-1}({F = 1}).
std::uint64_t tilde_fibre_boundary(std::span<const std::uint8_t> F);

struct TransferReport {
    std::uint64_t cube_pairs = 0;   // edge boundary of the lifted set
    std::uint64_t grid_boundary = 0;
    BoundReport report;             // total influence vs 2|dA|/k^(n-1)
    // Exact form of the inequality: cube_pairs <= k * grid_boundary.
    bool holds_exact = false;
};

TransferReport influence_transfer_report(const GridFunction& f);

// ---- block embedding for general k -------------------------------------------

struct BlockEmbedding {
    std::uint32_t k = 0;
    std::uint32_t n = 0;
    std::uint32_t l = 0; // power of two, > k, with (1 + k/(l-k))^n <= 2

    // 0-based block index of a 0-based [l] coordinate value.
    std::uint32_t block_of(std::uint32_t y0) const {
        return static_cast<std::uint32_t>((std::uint64_t(y0 + 1) * k + l - 1) / l) - 1;
    }
    std::uint32_t block_width(std::uint32_t x0) const;
    double expansion_factor() const; // (1 + k/(l-k))^n
};

// Smallest power of two l > k with (1 + k/(l-k))^n <= 2. Requires k >= 3.
std::uint32_t choose_embedding_side(std::uint32_t k, std::uint32_t n);

BlockEmbedding make_embedding(std::uint32_t k, std::uint32_t n);

// A-breve(y) = A(ceil(y_1 k / l), ...). Throws BudgetExceeded if l^n exceeds
// max_points; use block_boundary_exact for boundary-only reports in that case.
GridFunction block_embed(const GridFunction& f, const BlockEmbedding& emb,
                         std::size_t max_points = std::size_t{1} << 24);

// |d A-breve| from the per-edge multiplicity sum, without materializing [l]^n.
std::uint64_t block_boundary_exact(const GridFunction& f, const BlockEmbedding& emb);

// Projects a junta on [l]^n back to [k]^n: first makes it block-constant by
// unweighted plurality over each block cell (cannot increase the distance to
// a block-constant target), then reads off the value per block.
Junta project_block_junta(const Junta& g_breve, const BlockEmbedding& emb);

} // namespace gridjunta
