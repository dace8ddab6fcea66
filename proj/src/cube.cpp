#include "gridjunta/cube.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace gridjunta {

namespace {

// Bits whose coordinate i equals 0, for i < 6 (pattern repeats within a word).
constexpr std::uint64_t kZeroMask[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

} // namespace

CubeFunction::CubeFunction(std::uint32_t n, bool fill) : n_(n) {
    if (n >= 48) throw std::invalid_argument("CubeFunction: dimension too large");
    const std::size_t pc = size();
    bits_.assign((pc + 63) / 64, fill ? ~std::uint64_t{0} : 0);
    if (fill && pc < 64) bits_.back() &= (std::uint64_t{1} << pc) - 1;
}

std::uint64_t CubeFunction::ones() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c;
}

GridFunction CubeFunction::to_grid() const {
    GridFunction g(GridShape(2, n_, 2));
    for (std::size_t i = 0; i < size(); ++i)
        if ((*this)[i]) g.set(i, 1);
    return g;
}

CubeFunction CubeFunction::from_grid(const GridFunction& f) {
    if (f.shape().k != 2 || f.shape().l != 2)
        throw std::invalid_argument("CubeFunction::from_grid: requires k == 2, l == 2");
    CubeFunction c(f.shape().n);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i]) c.set(i, true);
    return c;
}

std::uint64_t influence_pair_count(const CubeFunction& f, std::uint32_t i) {
    if (i >= f.n()) throw std::out_of_range("influence: bad coordinate");
    auto words = f.words();
    std::uint64_t count = 0;
    if (f.n() <= 6 || i < 6) {
        const std::uint32_t shift = 1u << i;
        std::uint64_t zero_mask = kZeroMask[i];
        if (f.size() < 64) zero_mask &= (std::uint64_t{1} << f.size()) - 1;
        for (std::uint64_t w : words) count += std::popcount((w ^ (w >> shift)) & zero_mask);
        return count;
    }
    const std::size_t word_stride = std::size_t{1} << (i - 6);
    for (std::size_t w = 0; w < words.size(); ++w)
        if ((w & word_stride) == 0)
            count += std::popcount(words[w] ^ words[w + word_stride]);
    return count;
}

double influence(const CubeFunction& f, std::uint32_t i) {
    return std::ldexp(double(influence_pair_count(f, i)), 1 - int(f.n()));
}

std::uint64_t total_boundary_pairs(const CubeFunction& f) {
    std::uint64_t c = 0;
    for (std::uint32_t i = 0; i < f.n(); ++i) c += influence_pair_count(f, i);
    return c;
}

double total_influence(const CubeFunction& f) {
    return std::ldexp(double(total_boundary_pairs(f)), 1 - int(f.n()));
}

} // namespace gridjunta
