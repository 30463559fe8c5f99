#include "expsum/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "expsum/errors.hpp"
#include "expsum/version.hpp"

namespace expsum {

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw domain_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
}

void CsvWriter::write(const std::filesystem::path& file) const {
    std::ofstream os(file, std::ios::binary | std::ios::trunc);
    if (!os) throw domain_error("cannot write " + file.string());
    os << text_;
}

std::string CsvWriter::num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string CsvWriter::num(std::uint64_t v) { return std::to_string(v); }

std::string iso_timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json tolerance_block() {
    return {
        {"complete_sum_imag", 1e-9},
        {"complete_sum_weil_slack", 1e-9},
        {"table_imag", 1e-8},
        {"table_weil_slack", 1e-6},
        {"table_accuracy_budget", 1e-5},
        {"st_quadrature_abs", 1e-9},
        {"selberg_grid_tol", 1e-9},
    };
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j{
        {"tool_version", tool_version}, {"command_line", command_line}, {"p", p},
        {"family", family},             {"timestamp", timestamp},       {"wall_time_s", wall_time_s},
        {"tolerances", tolerances},     {"cache_hits", cache_hits},     {"cache_misses", cache_misses},
        {"workers", workers},
    };
    if (seed) j["seed"] = *seed;
    return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.command_line = j.at("command_line").get<std::string>();
    m.p = j.at("p").get<std::uint64_t>();
    m.family = j.at("family").get<std::string>();
    if (j.contains("seed")) m.seed = j.at("seed").get<std::uint64_t>();
    m.timestamp = j.at("timestamp").get<std::string>();
    m.wall_time_s = j.at("wall_time_s").get<double>();
    m.tolerances = j.at("tolerances");
    m.cache_hits = j.at("cache_hits").get<std::uint64_t>();
    m.cache_misses = j.at("cache_misses").get<std::uint64_t>();
    m.workers = j.at("workers").get<unsigned>();
    return m;
}

void RunManifest::write(const std::filesystem::path& file) const {
    std::ofstream os(file, std::ios::binary | std::ios::trunc);
    if (!os) throw domain_error("cannot write " + file.string());
    os << to_json().dump(2) << '\n';
}

CsvWriter moments_csv(const MomentReport& rep) {
    CsvWriter csv({"p", "family", "k", "moment", "logk_curve", "loglogp_curve", "Pk_curve"});
    for (std::size_t i = 0; i < rep.k_values.size(); ++i) {
        csv.add_row({std::to_string(rep.p.value()), rep.family, std::to_string(rep.k_values[i]),
                     CsvWriter::num(rep.moments[i]), CsvWriter::num(rep.logk_curve[i]),
                     CsvWriter::num(rep.loglogp_curve[i]), CsvWriter::num(rep.pk_curve[i])});
    }
    return csv;
}

CsvWriter maxscan_csv(OddPrime p, const std::vector<std::pair<std::uint32_t, PrefixProfile>>& rows) {
    (void)p;
    CsvWriter csv({"a", "M", "argmax_H"});
    for (const auto& [a, prof] : rows)
        csv.add_row({std::to_string(a), CsvWriter::num(prof.max_abs), std::to_string(prof.argmax_h)});
    return csv;
}

CsvWriter tails_csv(const std::vector<std::pair<double, double>>& rows) {
    CsvWriter csv({"A", "fraction"});
    for (const auto& [a, f] : rows) csv.add_row({CsvWriter::num(a), CsvWriter::num(f)});
    return csv;
}

nlohmann::json signsearch_json(const SignSearchReport& rep) {
    nlohmann::json j{
        {"p", rep.p.value()},
        {"family", rep.family},
        {"threshold", rep.threshold},
        {"conditions", rep.condition_count},
        {"count", rep.count},
        {"density", rep.density},
        {"predicted_density", rep.predicted_density},
        {"table_sup_norm", rep.table_sup_norm},
        {"members", rep.members},
    };
    if (!rep.member_max.empty()) j["member_max"] = rep.member_max;
    if (!rep.member_harmonic_bound.empty()) j["member_harmonic_bound"] = rep.member_harmonic_bound;
    return j;
}

nlohmann::json equidist_json(const EquidistDiagnostics& d) {
    nlohmann::json singles = nlohmann::json::array();
    for (const auto& s : d.singles)
        singles.push_back({{"map", s.map}, {"n", s.n}, {"value", s.value}});
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& q : d.pairs)
        pairs.push_back({{"map_i", q.map_i}, {"map_j", q.map_j}, {"m", q.m}, {"n", q.n}, {"value", q.value}});
    return {{"p", d.p.value()}, {"singles", singles}, {"pairs", pairs}};
}

}  // namespace expsum
