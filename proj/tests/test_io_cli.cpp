#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "expsum/report.hpp"
#include "expsum/table_io.hpp"

using namespace expsum;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path d = fs::temp_directory_path() / ("expsum-test-" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

struct RunResult {
    int exit_code;
    std::string output;
};

// run the built binary; requires EXPSUM_CLI_BIN (set by ctest)
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("EXPSUM_CLI_BIN");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string(bin) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string slurp(const fs::path& file) {
    std::ifstream is(file, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("cache roundtrip is bit-identical") {
    const fs::path dir = temp_dir("cache");
    const OddPrime p(101);
    const SumTable t = kloosterman_master_table(p);
    const fs::path file = cache_path(dir, t.family, p, t.member_a);
    cache_table(t, file);

    const SumTable back = load_table(file);
    REQUIRE(back.values.size() == t.values.size());
    for (std::size_t i = 0; i < t.values.size(); ++i) {
        CHECK(std::memcmp(&back.values[i], &t.values[i], sizeof(std::complex<double>)) == 0);
    }
    CHECK(back.p.value() == 101);
    CHECK(back.family == t.family);
    CHECK(back.member_a == t.member_a);
    CHECK(back.method == t.method);
    fs::remove_all(dir);
}

TEST_CASE("cache rejects corruption") {
    const fs::path dir = temp_dir("corrupt");
    const OddPrime p(101);
    const SumTable t = kloosterman_master_table(p);
    const fs::path file = dir / "t.tbl";
    cache_table(t, file);

    SUBCASE("truncation") {
        fs::resize_file(file, fs::file_size(file) - 40);
        CHECK_THROWS_AS(load_table(file), integrity_error);
    }
    SUBCASE("bad magic") {
        std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.write("WRONGMAG", 8);
        f.close();
        CHECK_THROWS_AS(load_table(file), integrity_error);
    }
    SUBCASE("entry pushed past the Weil cap") {
        // overwrite the first index the loader's seeded spot check will read
        std::mt19937_64 rng(0xcac4e000ull ^ 101u);
        const std::uint64_t idx = rng() % 101;
        std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
        const std::uint64_t header = 8 + 8 + 4 + 24 + 1;
        f.seekp(static_cast<std::streamoff>(header + 16 * idx));
        const double bad = 7.5;
        f.write(reinterpret_cast<const char*>(&bad), 8);
        f.close();
        CHECK_THROWS_AS(load_table(file), integrity_error);
    }
    fs::remove_all(dir);
}

TEST_CASE("cache keys separate families, members and signs") {
    const OddPrime p(101);
    const auto k1 = cache_key(FamilySpec::kloosterman_dilate(), p, 1);
    const auto k2 = cache_key(FamilySpec::kloosterman_shift(1), p, 1);
    const auto k3 = cache_key(FamilySpec::kloosterman_dilate(), p, 2);
    const auto k4 = cache_key(FamilySpec::kloosterman_dilate().with_sign(SignConvention::plus), p, 1);
    const auto k5 = cache_key(FamilySpec::kloosterman_shift(2), p, 1);
    CHECK(k1 != k2);
    CHECK(k1 != k3);
    CHECK(k1 != k4);
    CHECK(k2 != k5);
    CHECK_THROWS_AS(cache_key(FamilySpec::laurent({{1, 1}}), p, 1), domain_error);
}

TEST_CASE("manifest roundtrips losslessly") {
    RunManifest m;
    m.tool_version = "0.1.0";
    m.command_line = "expsum moments --p 1009";
    m.p = 1009;
    m.family = "kloosterman-dilate[-]";
    m.seed = 42;
    m.timestamp = "2026-01-01T00:00:00Z";
    m.wall_time_s = 1.25;
    m.tolerances = tolerance_block();
    m.cache_hits = 3;
    m.cache_misses = 1;
    m.workers = 4;
    const auto j = m.to_json();
    const RunManifest back = RunManifest::from_json(j);
    CHECK(back.to_json() == j);
    CHECK(back.seed.has_value());
    CHECK(*back.seed == 42);
}

TEST_CASE("csv numbers round-trip through 17 significant digits") {
    const double v = 0.1234567890123456789;
    const std::string s = CsvWriter::num(v);
    CHECK(std::stod(s) == v);
    CsvWriter csv({"x", "y"});
    csv.add_row({CsvWriter::num(1.0 / 3.0), CsvWriter::num(std::uint64_t{7})});
    CHECK(csv.text() == "x,y\n0.33333333333333331,7\n");
    CHECK_THROWS_AS(csv.add_row({"1"}), domain_error);
}

TEST_CASE("cli: sum prints the pinned value and errors cleanly") {
    CHECK(run_cli("sum --family kloosterman --a 1 --b 1 --p 5").output == "0.170820\n");
    CHECK(run_cli("sum --family kloosterman --a 1 --b 1 --p 5").exit_code == 0);
    const auto bad = run_cli("sum --family kloosterman --a 1 --p 91");
    CHECK(bad.exit_code == 1);  // non-prime modulus
    const auto unknown = run_cli("sum --family nosuch --a 1 --p 5");
    CHECK(unknown.exit_code == 1);
}

TEST_CASE("cli: maxscan row count and selftest wiring") {
    const fs::path dir = temp_dir("cli-maxscan");
    const auto r = run_cli("maxscan --family birch-dilate --p 101 --all --out " + dir.string());
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(dir / "maxscan" / "maxscan.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 101);  // header + 100 rows
    CHECK(csv.rfind("a,M,argmax_H\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("cli: corrupt cache file exits with the integrity code") {
    const fs::path dir = temp_dir("cli-cache");
    const auto build = run_cli("table --family kloosterman-dilate --p 101 --save --cache-dir " +
                               dir.string() + " --out " + (dir / "art").string());
    CHECK(build.exit_code == 0);
    fs::path file;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".tbl") file = e.path();
    REQUIRE(!file.empty());
    fs::resize_file(file, fs::file_size(file) - 8);
    const auto r = run_cli("table --p 101 --load " + file.string() + " --out " + (dir / "art").string());
    CHECK(r.exit_code == 2);
    fs::remove_all(dir);
}

TEST_CASE("cli: moments and signsearch bytes are worker-count independent") {
    const fs::path dir = temp_dir("cli-det");
    const std::string base_m = "moments --family kloosterman-dilate --p 1009 --k 1,2,3";
    const auto r1 = run_cli(base_m + " --workers 1 --out " + (dir / "w1").string());
    const auto r4 = run_cli(base_m + " --workers 4 --out " + (dir / "w4").string());
    CHECK(r1.exit_code == 0);
    CHECK(r4.exit_code == 0);
    CHECK(slurp(dir / "w1" / "moments" / "moments.csv") == slurp(dir / "w4" / "moments" / "moments.csv"));

    const std::string base_s = "signsearch --family kloosterman-dilate --p 1009 --z 1";
    const auto s1 = run_cli(base_s + " --workers 1 --out " + (dir / "w1").string());
    const auto s4 = run_cli(base_s + " --workers 4 --out " + (dir / "w4").string());
    CHECK(s1.exit_code == 0);
    CHECK(s4.exit_code == 0);
    CHECK(slurp(dir / "w1" / "signsearch" / "members.csv") ==
          slurp(dir / "w4" / "signsearch" / "members.csv"));
    // manifests agree apart from the timing fields and recorded command line
    auto scrub = [](const fs::path& f) {
        auto j = nlohmann::json::parse(slurp(f));
        j.erase("timestamp");
        j.erase("wall_time_s");
        j.erase("command_line");
        j.erase("workers");
        return j;
    };
    CHECK(scrub(dir / "w1" / "moments" / "manifest.json") ==
          scrub(dir / "w4" / "moments" / "manifest.json"));
    fs::remove_all(dir);
}

TEST_CASE("cli: cached and fresh signsearch agree") {
    const fs::path dir = temp_dir("cli-cached");
    const std::string base = "signsearch --family kloosterman-dilate --p 1009 --z 1 --use-cache "
                             "--cache-dir " + (dir / "cache").string();
    const auto first = run_cli(base + " --out " + (dir / "r1").string());
    const auto second = run_cli(base + " --out " + (dir / "r2").string());
    CHECK(first.exit_code == 0);
    CHECK(second.exit_code == 0);
    CHECK(slurp(dir / "r1" / "signsearch" / "members.csv") ==
          slurp(dir / "r2" / "signsearch" / "members.csv"));
    const auto m2 = nlohmann::json::parse(slurp(dir / "r2" / "signsearch" / "manifest.json"));
    CHECK(m2.at("cache_hits").get<int>() == 1);
    fs::remove_all(dir);
}
