#include "gridjunta/io.hpp"

#include <fstream>

#include "gridjunta/errors.hpp"
#include "gridjunta/rng.hpp"

namespace gridjunta {

namespace {

void put_u16(std::ostream& os, std::uint16_t v) {
    const char b[2] = {char(v & 0xFF), char((v >> 8) & 0xFF)};
    os.write(b, 2);
}

void put_u32(std::ostream& os, std::uint32_t v) {
    const char b[4] = {char(v & 0xFF), char((v >> 8) & 0xFF), char((v >> 16) & 0xFF),
                       char((v >> 24) & 0xFF)};
    os.write(b, 4);
}

std::uint16_t get_u16(std::istream& is, const std::string& what) {
    unsigned char b[2];
    if (!is.read(reinterpret_cast<char*>(b), 2))
        throw FormatError("truncated " + what);
    return std::uint16_t(b[0]) | (std::uint16_t(b[1]) << 8);
}

std::uint32_t get_u32(std::istream& is, const std::string& what) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4))
        throw FormatError("truncated " + what);
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}

void expect_magic(std::istream& is, const char* magic, const std::string& path) {
    char buf[4];
    if (!is.read(buf, 4) || std::string(buf, 4) != magic)
        throw FormatError(path + ": bad magic (expected " + magic + ")");
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("cannot write " + path.string());
    return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot read " + path.string());
    return is;
}

void write_table(std::ostream& os, const GridFunction& f) {
    for (std::size_t i = 0; i < f.size(); ++i) put_u16(os, f[i]);
}

GridFunction read_table(std::istream& is, const GridShape& shape, const std::string& path) {
    GridFunction f(shape);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::uint16_t v = get_u16(is, path);
        if (v >= shape.l)
            throw FormatError(path + ": value " + std::to_string(v) + " out of range at index " +
                              std::to_string(i));
        f.set(i, v);
    }
    return f;
}

void expect_eof(std::istream& is, const std::string& path) {
    char c;
    if (is.read(&c, 1)) throw FormatError(path + ": trailing bytes");
}

} // namespace

void save_gjt(const GridFunction& f, const std::filesystem::path& path) {
    auto os = open_out(path);
    os.write("GJT1", 4);
    put_u32(os, f.shape().k);
    put_u32(os, f.shape().n);
    put_u32(os, f.shape().l);
    write_table(os, f);
    if (!os) throw FormatError("write failed: " + path.string());
}

GridFunction load_gjt(const std::filesystem::path& path) {
    auto is = open_in(path);
    expect_magic(is, "GJT1", path.string());
    const std::uint32_t k = get_u32(is, path.string());
    const std::uint32_t n = get_u32(is, path.string());
    const std::uint32_t l = get_u32(is, path.string());
    GridShape shape;
    try {
        shape = GridShape(k, n, l);
    } catch (const std::invalid_argument& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    GridFunction f = read_table(is, shape, path.string());
    expect_eof(is, path.string());
    return f;
}

void save_gjm(const TorusMap& map, const std::filesystem::path& path) {
    if (map.components.empty()) throw std::invalid_argument("save_gjm: empty map");
    auto os = open_out(path);
    os.write("GJM1", 4);
    put_u32(os, map.domain().k);
    put_u32(os, map.domain().n);
    put_u32(os, map.domain().l);
    put_u32(os, static_cast<std::uint32_t>(map.arity()));
    for (const GridFunction& c : map.components) write_table(os, c);
    if (!os) throw FormatError("write failed: " + path.string());
}

TorusMap load_gjm(const std::filesystem::path& path) {
    auto is = open_in(path);
    expect_magic(is, "GJM1", path.string());
    const std::uint32_t k = get_u32(is, path.string());
    const std::uint32_t n = get_u32(is, path.string());
    const std::uint32_t l = get_u32(is, path.string());
    const std::uint32_t m = get_u32(is, path.string());
    if (m == 0) throw FormatError(path.string() + ": empty map");
    GridShape shape;
    try {
        shape = GridShape(k, n, l);
    } catch (const std::invalid_argument& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    TorusMap map;
    for (std::uint32_t i = 0; i < m; ++i)
        map.components.push_back(read_table(is, shape, path.string()));
    expect_eof(is, path.string());
    return map;
}

void save_gjj(const Junta& junta, const std::filesystem::path& path) {
    auto os = open_out(path);
    os.write("GJJ1", 4);
    put_u32(os, junta.shape.k);
    put_u32(os, junta.shape.n);
    put_u32(os, static_cast<std::uint32_t>(junta.coords.size()));
    for (std::uint32_t c : junta.coords) put_u32(os, c + 1); // 1-based on disk
    for (std::uint16_t v : junta.table) put_u16(os, v);
    if (!os) throw FormatError("write failed: " + path.string());
}

Junta load_gjj(const std::filesystem::path& path, std::optional<std::uint32_t> alphabet) {
    auto is = open_in(path);
    expect_magic(is, "GJJ1", path.string());
    Junta junta;
    const std::uint32_t k = get_u32(is, path.string());
    const std::uint32_t n = get_u32(is, path.string());
    const std::uint32_t jsize = get_u32(is, path.string());
    std::uint16_t max_value = 0;
    std::size_t cells = 1;
    for (std::uint32_t i = 0; i < jsize; ++i) {
        const std::uint32_t c = get_u32(is, path.string());
        if (c < 1 || c > n) throw FormatError(path.string() + ": junta coordinate out of range");
        if (!junta.coords.empty() && c - 1 <= junta.coords.back())
            throw FormatError(path.string() + ": junta coordinates not strictly increasing");
        junta.coords.push_back(c - 1);
        cells *= k;
    }
    junta.table.reserve(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const std::uint16_t v = get_u16(is, path.string());
        junta.table.push_back(v);
        max_value = std::max(max_value, v);
    }
    expect_eof(is, path.string());
    const std::uint32_t l =
        alphabet ? *alphabet : std::max<std::uint32_t>(2, std::uint32_t(max_value) + 1);
    if (max_value >= l)
        throw FormatError(path.string() + ": junta value exceeds the expected alphabet");
    try {
        junta.shape = GridShape(k, n, l);
    } catch (const std::invalid_argument& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    return junta;
}

void save_sidecar(const std::filesystem::path& table_path, const std::string& generator,
                  const nlohmann::json& parameters, std::uint64_t seed) {
    std::filesystem::path p = table_path;
    p.replace_extension(".json");
    nlohmann::json j = {
        {"generator", generator},
        {"parameters", parameters},
        {"seed", seed},
        {"rng", SplitMix64::name()},
    };
    std::ofstream os(p);
    if (!os) throw FormatError("cannot write " + p.string());
    os << j.dump(2) << "\n";
}

} // namespace gridjunta
