#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "expsum/experiments.hpp"

namespace expsum {

/// One row-oriented CSV with every float printed as %.17g.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<std::string>& cells);
    const std::string& text() const { return text_; }
    void write(const std::filesystem::path& file) const;

    static std::string num(double v);
    static std::string num(std::uint64_t v);

  private:
    std::string text_;
    std::size_t columns_;
};

/// Per-run provenance record; serialized as JSON next to the artifacts.
struct RunManifest {
    std::string tool_version;
    std::string command_line;
    std::uint64_t p = 0;
    std::string family;
    std::optional<std::uint64_t> seed;
    std::string timestamp;   // ISO-8601 UTC
    double wall_time_s = 0.0;
    nlohmann::json tolerances;
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_misses = 0;
    unsigned workers = 0;

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);
    void write(const std::filesystem::path& file) const;
};

/// Tolerances baked into the library, reported with every run.
nlohmann::json tolerance_block();

std::string iso_timestamp_utc();

/// Report assembly used by both the CLI and the determinism checks.
CsvWriter moments_csv(const MomentReport& rep);
CsvWriter maxscan_csv(OddPrime p, const std::vector<std::pair<std::uint32_t, PrefixProfile>>& rows);
CsvWriter tails_csv(const std::vector<std::pair<double, double>>& rows);
nlohmann::json signsearch_json(const SignSearchReport& rep);
nlohmann::json equidist_json(const EquidistDiagnostics& d);

}  // namespace expsum
