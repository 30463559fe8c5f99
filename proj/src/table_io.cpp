#include "expsum/table_io.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "expsum/errors.hpp"

namespace expsum {

namespace {

constexpr char kMagic[8] = {'E', 'X', 'P', 'S', 'U', 'M', '0', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}
void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}
void put_i64(std::ostream& os, std::int64_t v) { put_u64(os, static_cast<std::uint64_t>(v)); }
void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(os, bits);
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw integrity_error("cache file truncated");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}
std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw integrity_error("cache file truncated");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}
std::int64_t get_i64(std::istream& is) { return static_cast<std::int64_t>(get_u64(is)); }
double get_f64(std::istream& is) {
    const std::uint64_t bits = get_u64(is);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

FamilySpec family_from_id(std::uint32_t id, std::int64_t param) {
    switch (static_cast<FamilyKind>(id)) {
        case FamilyKind::kloosterman_shift: return FamilySpec::kloosterman_shift(param);
        case FamilyKind::kloosterman_dilate: return FamilySpec::kloosterman_dilate();
        case FamilyKind::kloosterman_curve: return FamilySpec::kloosterman_curve(param);
        case FamilyKind::birch_shift: return FamilySpec::birch_shift();
        case FamilyKind::birch_dilate: return FamilySpec::birch_dilate();
        case FamilyKind::birch_curve: return FamilySpec::birch_curve(param);
        default: throw integrity_error("cache file carries unknown family id " + std::to_string(id));
    }
}

}  // namespace

std::string cache_key(const FamilySpec& family, OddPrime p, std::int64_t member_a) {
    if (!family.cacheable()) throw domain_error("laurent tables are not cacheable");
    std::ostringstream os;
    os << family.name() << "_p" << p.value() << "_q" << family.param() << "_a" << member_a << "_"
       << (family.sign() == SignConvention::minus ? "minus" : "plus");
    return os.str();
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const FamilySpec& family, OddPrime p,
                                 std::int64_t member_a) {
    return dir / (cache_key(family, p, member_a) + ".tbl");
}

void cache_table(const SumTable& table, const std::filesystem::path& file) {
    if (!table.family.cacheable()) throw domain_error("laurent tables are not cacheable");
    std::ofstream os(file, std::ios::binary | std::ios::trunc);
    if (!os) throw domain_error("cannot open cache file for writing: " + file.string());
    os.write(kMagic, 8);
    put_u64(os, table.p.value());
    put_u32(os, table.family.cache_id());
    put_i64(os, table.family.param());
    put_i64(os, table.member_a);
    put_i64(os, table.family.sign() == SignConvention::plus ? 1 : 0);
    os.put(static_cast<char>(static_cast<std::uint8_t>(table.method)));
    for (const auto& v : table.values) {
        put_f64(os, v.real());
        put_f64(os, v.imag());
    }
    if (!os) throw domain_error("short write to cache file " + file.string());
}

SumTable load_table(const std::filesystem::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) throw domain_error("cannot open cache file " + file.string());

    const auto want_size = std::filesystem::file_size(file);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0)
        throw integrity_error("cache file has bad magic: " + file.string());

    const std::uint64_t p_raw = get_u64(is);
    const std::uint32_t fam_id = get_u32(is);
    const std::int64_t param = get_i64(is);
    const std::int64_t member_a = get_i64(is);
    const std::int64_t sign_raw = get_i64(is);
    const int method_raw = is.get();
    if (method_raw == std::char_traits<char>::eof()) throw integrity_error("cache file truncated");

    const OddPrime p(p_raw);
    const std::uint64_t expect = 8 + 8 + 4 + 24 + 1 + 16ull * p.value();
    if (want_size != expect)
        throw integrity_error("cache file length " + std::to_string(want_size) + " != expected " +
                              std::to_string(expect));

    FamilySpec family = family_from_id(fam_id, param)
                            .with_sign(sign_raw == 1 ? SignConvention::plus : SignConvention::minus);
    if (sign_raw != 0 && sign_raw != 1) throw integrity_error("cache file carries bad sign convention");
    if (method_raw != 0 && method_raw != 1) throw integrity_error("cache file carries bad method byte");

    std::vector<std::complex<double>> values(p.value());
    for (auto& v : values) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        v = {re, im};
    }

    SumTable table = SumTable::from_values(family, p, member_a, std::move(values),
                                           static_cast<TableMethod>(method_raw), 0.0, false);

    // spot-check the Weil/realness invariant on 64 seeded random entries
    if (family.real_valued()) {
        std::mt19937_64 rng(0xcac4e000ull ^ p.value());
        const double cap = family.weil_cap(p) + 1e-6;
        for (int i = 0; i < 64; ++i) {
            const auto idx = static_cast<std::uint32_t>(rng() % p.value());
            const auto z = table.values[idx];
            if (std::abs(z.imag()) > 1e-8 || std::abs(z.real()) > cap)
                throw integrity_error("cached table fails the Weil-bound invariant at index " +
                                      std::to_string(idx));
        }
    }
    return table;
}

std::filesystem::path resolve_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("EXPSUM_CACHE_DIR"); env && *env) return env;
    return "expsum-cache";
}

}  // namespace expsum
