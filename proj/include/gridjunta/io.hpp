#pragma once

// Binary table formats, all little-endian:
//   .gjt  magic "GJT1"; u32 k, n, l; k^n u16 values in index order
//   .gjm  magic "GJM1"; u32 k, n, l, m; m concatenated k^n u16 tables
//   .gjj  magic "GJJ1"; u32 k, n, |J|; |J| u32 1-based sorted coordinates;
//         k^|J| u16 values in the mixed-radix order restricted to J
// A .json sidecar with the same stem records provenance for generated tables.

#include <filesystem>
#include <string>

#include "gridjunta/grid.hpp"
#include "gridjunta/junta.hpp"
#include "gridjunta/lipschitz.hpp"

#include <json.hpp>

namespace gridjunta {

void save_gjt(const GridFunction& f, const std::filesystem::path& path);
GridFunction load_gjt(const std::filesystem::path& path);

void save_gjm(const TorusMap& map, const std::filesystem::path& path);
TorusMap load_gjm(const std::filesystem::path& path);

void save_gjj(const Junta& junta, const std::filesystem::path& path);
// The format does not record the value alphabet; pass `alphabet` to pin it
// (values are validated against it), else the smallest valid one is used.
Junta load_gjj(const std::filesystem::path& path,
               std::optional<std::uint32_t> alphabet = std::nullopt);

// Provenance sidecar at the same stem with extension .json.
void save_sidecar(const std::filesystem::path& table_path, const std::string& generator,
                  const nlohmann::json& parameters, std::uint64_t seed);

} // namespace gridjunta
