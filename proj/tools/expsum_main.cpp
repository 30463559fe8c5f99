#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "expsum/errors.hpp"
#include "expsum/experiments.hpp"
#include "expsum/fejer.hpp"
#include "expsum/incomplete.hpp"
#include "expsum/report.hpp"
#include "expsum/selberg.hpp"
#include "expsum/selfcheck.hpp"
#include "expsum/table_io.hpp"
#include "expsum/version.hpp"

namespace fs = std::filesystem;
using namespace expsum;

namespace {

struct CommonOpts {
    std::string out_dir = "expsum-out";
    std::string cache_dir;
    unsigned workers = 0;
    std::uint64_t p_raw = 0;
    std::string family_name = "kloosterman";
    std::int64_t b = 1;
    std::int64_t m = 1;
    std::int64_t a = 1;
    std::string sign = "minus";
    std::string laurent_terms;
};

void add_family_flags(CLI::App* cmd, CommonOpts& o, bool with_member = true) {
    cmd->add_option("--p", o.p_raw, "odd prime modulus")->required();
    cmd->add_option("--family", o.family_name,
                    "kloosterman|kloosterman-dilate|kloosterman-curve|birch|birch-dilate|birch-curve|laurent");
    cmd->add_option("--b", o.b, "shift-family fixed coefficient");
    cmd->add_option("--m", o.m, "curve-family parameter");
    if (with_member) cmd->add_option("--a", o.a, "family member parameter");
    cmd->add_option("--sign", o.sign, "table sign convention: minus (default) or plus");
    cmd->add_option("--terms", o.laurent_terms, "laurent terms as exp:coef[,exp:coef...]");
}

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out_dir, "artifact directory");
    cmd->add_option("--cache-dir", o.cache_dir, "table cache directory (or EXPSUM_CACHE_DIR)");
    cmd->add_option("--workers", o.workers, "worker threads (0 = hardware)");
}

FamilySpec parse_family(const CommonOpts& o) {
    FamilySpec f = [&] {
        if (o.family_name == "kloosterman" || o.family_name == "kloosterman-shift")
            return FamilySpec::kloosterman_shift(o.b);
        if (o.family_name == "kloosterman-dilate") return FamilySpec::kloosterman_dilate();
        if (o.family_name == "kloosterman-curve") return FamilySpec::kloosterman_curve(o.m);
        if (o.family_name == "birch" || o.family_name == "birch-shift") return FamilySpec::birch_shift();
        if (o.family_name == "birch-dilate") return FamilySpec::birch_dilate();
        if (o.family_name == "birch-curve") return FamilySpec::birch_curve(o.m);
        if (o.family_name == "laurent") {
            std::vector<LaurentTerm> terms;
            std::stringstream ss(o.laurent_terms);
            std::string piece;
            while (std::getline(ss, piece, ',')) {
                const auto colon = piece.find(':');
                if (colon == std::string::npos)
                    throw domain_error("laurent term must look like exp:coef, got " + piece);
                terms.push_back({static_cast<std::int32_t>(std::stol(piece.substr(0, colon))),
                                 std::stoll(piece.substr(colon + 1))});
            }
            return FamilySpec::laurent(terms);
        }
        throw domain_error("unknown family " + o.family_name);
    }();
    if (o.sign == "plus") return f.with_sign(SignConvention::plus);
    if (o.sign == "minus") return f.with_sign(SignConvention::minus);
    throw domain_error("sign must be plus or minus");
}

struct RunScope {
    RunScope(const CommonOpts& o, const std::string& sub, int argc, char** argv)
        : start(std::chrono::steady_clock::now()) {
        dir = fs::path(o.out_dir) / sub;
        fs::create_directories(dir);
        manifest.tool_version = version_string;
        std::ostringstream cmd;
        for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
        manifest.command_line = cmd.str();
        manifest.p = o.p_raw;
        manifest.timestamp = iso_timestamp_utc();
        manifest.tolerances = tolerance_block();
        manifest.workers = o.workers;
    }
    void finish() {
        manifest.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        manifest.write(dir / "manifest.json");
    }
    fs::path dir;
    RunManifest manifest;
    std::chrono::steady_clock::time_point start;
};

/// Load the family table through the cache when enabled; otherwise build it.
SumTable obtain_table(const FamilySpec& f, OddPrime p, std::int64_t member, bool use_cache,
                      const std::string& cache_flag, RunManifest& manifest) {
    if (use_cache && f.cacheable()) {
        const fs::path dir = resolve_cache_dir(cache_flag);
        const fs::path file = cache_path(dir, f, p, member);
        if (fs::exists(file)) {
            ++manifest.cache_hits;
            return load_table(file);
        }
        ++manifest.cache_misses;
        SumTable t = batch_complete_sums(f, p, member);
        fs::create_directories(dir);
        cache_table(t, file);
        return t;
    }
    ++manifest.cache_misses;
    return batch_complete_sums(f, p, member);
}

std::vector<MoebiusMap> parse_maps(const std::string& text, OddPrime p) {
    std::vector<MoebiusMap> maps;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        if (piece == "id") {
            maps.push_back(MoebiusMap::identity(p));
        } else if (piece.rfind("dil:", 0) == 0) {
            maps.push_back(MoebiusMap::dilation(std::stoll(piece.substr(4)), p));
        } else if (piece.rfind("tr:", 0) == 0) {
            maps.push_back(MoebiusMap::translation(std::stoll(piece.substr(3)), p));
        } else {
            throw domain_error("map must be id, dil:<y> or tr:<y>, got " + piece);
        }
    }
    if (maps.empty()) throw domain_error("no maps given");
    return maps;
}

std::vector<std::uint32_t> parse_u32_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) out.push_back(static_cast<std::uint32_t>(std::stoul(piece)));
    if (out.empty()) throw domain_error("empty list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"incomplete exponential sums toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version_string);

    CommonOpts o;

    auto* c_sum = app.add_subcommand("sum", "one normalized complete sum");
    add_family_flags(c_sum, o);
    add_common_flags(c_sum, o);

    auto* c_table = app.add_subcommand("table", "build, cache or verify a full table");
    add_family_flags(c_table, o);
    add_common_flags(c_table, o);
    bool table_save = false;
    std::string table_load;
    std::string table_method = "auto";
    c_table->add_flag("--save", table_save, "write the table to the cache directory");
    c_table->add_option("--load", table_load, "load and verify a cached table file");
    c_table->add_option("--method", table_method, "auto|direct|chirp");

    auto* c_maxscan = app.add_subcommand("maxscan", "prefix maxima M(t_a)");
    add_family_flags(c_maxscan, o);
    add_common_flags(c_maxscan, o);
    bool scan_all = false;
    c_maxscan->add_flag("--all", scan_all, "scan every a in F_p^x");

    auto* c_shortscan = app.add_subcommand("shortscan", "sliding-window short-sum extrema");
    add_family_flags(c_shortscan, o);
    add_common_flags(c_shortscan, o);
    std::string windows;
    c_shortscan->add_option("--windows", windows, "comma list of H values (default p^0.45, sqrt p, p^0.55)");

    auto* c_estimator = app.add_subcommand("estimator", "grid lower-bound statistic for M(t)");
    add_family_flags(c_estimator, o);
    add_common_flags(c_estimator, o);

    auto* c_selberg = app.add_subcommand("selberg", "two-sided indicator approximation report");
    add_common_flags(c_selberg, o);
    double sel_u = 0.0, sel_v = 0.25;
    std::uint64_t sel_L = 47;
    std::uint32_t sel_z = 0, sel_gamma = 4;
    c_selberg->add_option("--u", sel_u, "left endpoint in [0,1)");
    c_selberg->add_option("--v", sel_v, "right endpoint in (u,1]");
    c_selberg->add_option("--L", sel_L, "trigonometric degree");
    c_selberg->add_option("--delta-z", sel_z, "also evaluate the depth-z constant term");
    c_selberg->add_option("--gamma", sel_gamma, "detector band parameter (even, >= 4)");

    auto* c_signsearch = app.add_subcommand("signsearch", "simultaneous sign detector scan");
    add_family_flags(c_signsearch, o, false);
    add_common_flags(c_signsearch, o);
    std::uint32_t ss_z = 1;
    double ss_threshold = std::numbers::sqrt2;
    bool ss_no_stats = false, ss_use_cache = false;
    c_signsearch->add_option("--z", ss_z, "detector depth (odd)");
    c_signsearch->add_option("--threshold", ss_threshold, "sign threshold (default sqrt 2)");
    c_signsearch->add_flag("--no-member-stats", ss_no_stats, "skip per-member prefix scans");
    c_signsearch->add_flag("--use-cache", ss_use_cache, "read/write the master table cache");

    auto* c_moments = app.add_subcommand("moments", "empirical moments of the prefix maxima");
    add_family_flags(c_moments, o, false);
    add_common_flags(c_moments, o);
    std::string k_list = "1,2,3";
    std::uint64_t seed = 0;
    bool force_sample = false;
    c_moments->add_option("--k", k_list, "comma list of moment orders");
    c_moments->add_option("--seed", seed, "sample seed (forces sampled mode)");
    c_moments->add_flag("--sample", force_sample, "sample parameters even at small p");

    auto* c_tails = app.add_subcommand("tails", "tail fractions of the prefix maxima");
    add_family_flags(c_tails, o, false);
    add_common_flags(c_tails, o);
    std::string grid = "0,0.5,1,1.5,2,2.5,3";
    c_tails->add_option("--grid", grid, "comma list of thresholds A");

    auto* c_equidist = app.add_subcommand("equidist", "square-root cancellation diagnostics");
    add_family_flags(c_equidist, o, false);
    add_common_flags(c_equidist, o);
    std::string maps_text = "id";
    std::uint32_t d_max = 8;
    bool eq_use_cache = false;
    c_equidist->add_option("--maps", maps_text, "comma list: id, dil:<y>, tr:<y>");
    c_equidist->add_option("--dmax", d_max, "largest polynomial degree (<= 16)");
    c_equidist->add_flag("--use-cache", eq_use_cache, "read/write the master table cache");

    auto* c_block = app.add_subcommand("blockmoment", "moments of one block of the prefix");
    add_family_flags(c_block, o, false);
    add_common_flags(c_block, o);
    double blk_alpha = 0.0, blk_beta = 0.5;
    std::string blk_k = "2";
    c_block->add_option("--alpha", blk_alpha, "block start in [0,1)");
    c_block->add_option("--beta", blk_beta, "block end in (alpha,1]");
    c_block->add_option("--k", blk_k, "comma list of moment orders");

    auto* c_selftest = app.add_subcommand("selftest", "run the full verification suite");
    c_selftest->add_option("--out", o.out_dir, "artifact directory");

    CLI11_PARSE(app, argc, argv);

    try {
        const WorkerPool pool{o.workers};

        if (c_sum->parsed()) {
            const OddPrime p(o.p_raw);
            const FamilySpec f = parse_family(o);
            const double v = complete_sum(f, o.a, p);
            std::printf("%.6f\n", v);
            return 0;
        }

        if (c_table->parsed()) {
            RunScope run(o, "table", argc, argv);
            if (!table_load.empty()) {
                const SumTable t = load_table(table_load);
                std::printf("ok p=%u family=%s entries=%zu sup=%.6f\n", t.p.value(),
                            t.family.descriptor().c_str(), t.values.size(), t.sup_norm());
                run.manifest.p = t.p.value();
                run.manifest.family = t.family.descriptor();
                ++run.manifest.cache_hits;
                run.finish();
                return 0;
            }
            const OddPrime p(o.p_raw);
            const FamilySpec f = parse_family(o);
            std::optional<TableMethod> method;
            if (table_method == "direct") method = TableMethod::direct;
            else if (table_method == "chirp") method = TableMethod::chirp_dft;
            else if (table_method != "auto") throw domain_error("method must be auto, direct or chirp");
            const SumTable t = batch_complete_sums(f, p, o.a, method);
            run.manifest.family = f.descriptor();
            if (table_save) {
                const fs::path dir = resolve_cache_dir(o.cache_dir);
                fs::create_directories(dir);
                const fs::path file = cache_path(dir, f, p, o.a);
                cache_table(t, file);
                std::printf("cached %s\n", file.string().c_str());
            }
            std::printf("p=%u sup=%.9f err_estimate=%.3g method=%s\n", p.value(), t.sup_norm(),
                        t.max_abs_error_estimate, t.method == TableMethod::direct ? "direct" : "chirp");
            run.finish();
            return 0;
        }

        if (c_maxscan->parsed()) {
            RunScope run(o, "maxscan", argc, argv);
            const OddPrime p(o.p_raw);
            const FamilySpec f = parse_family(o);
            run.manifest.family = f.descriptor();
            std::vector<std::pair<std::uint32_t, PrefixProfile>> rows;
            if (scan_all) {
                const PrimeContextPtr ctx = make_prime_context(p);
                for (std::uint32_t a = 1; a < p.value(); ++a)
                    rows.emplace_back(a, prefix_profile(f, a, ctx, 0));
            } else {
                rows.emplace_back(static_cast<std::uint32_t>(p.reduce(o.a)),
                                  prefix_profile(f, o.a, p, 0));
            }
            const CsvWriter csv = maxscan_csv(p, rows);
            csv.write(run.dir / "maxscan.csv");
            std::printf("rows=%zu -> %s\n", rows.size(), (run.dir / "maxscan.csv").string().c_str());
            run.finish();
            return 0;
        }

        if (c_shortscan->parsed()) {
            RunScope run(o, "shortscan", argc, argv);
            const OddPrime p(o.p_raw);
            const FamilySpec f = parse_family(o);
            run.manifest.family = f.descriptor();
            std::vector<std::uint32_t> hs;
            if (windows.empty()) {
                const double pv = p.value();
                hs = {static_cast<std::uint32_t>(std::ceil(std::pow(pv, 0.45))),
                      static_cast<std::uint32_t>(std::ceil(std::sqrt(pv))),
                      static_cast<std::uint32_t>(std::ceil(std::pow(pv, 0.55)))};
            } else {
                hs = parse_u32_list(windows);
            }
            CsvWriter csv({"H", "extremum", "argmax_N", "H_pow_095", "H_pow_090", "envelope_2sqrtH_logp"});
            for (const std::uint32_t H : hs) {
                const auto scan = short_sum_extremum(f, o.a, p, H);
                csv.add_row({std::to_string(H), CsvWriter::num(scan.extremum),
                             std::to_string(scan.argmax_n), CsvWriter::num(std::pow(H, 0.95)),
                             CsvWriter::num(std::pow(H, 0.90)),
                             CsvWriter::num(2.0 * std::sqrt(static_cast<double>(H)) *
                                            std::log(static_cast<double>(p.value())))});
            }
            csv.write(run.dir / "shortscan.csv");
            std::printf("windows=%zu -> %s\n", hs.size(), (run.dir / "shortscan.csv").string().c_str());
            run.finish();
            return 0;
        }

        if (c_estimator->parsed()) {
            RunScope run(o, "estimator", argc, argv);
            const OddPrime p(o.p_raw);
            const FamilySpec f = parse_family(o);
            run.manifest.family = f.descriptor();
            const SumTable t = batch_complete_sums(f, p, o.a);
            const auto r = estimator_lower_bound(t, default_n_list(p), default_alpha_grid());
            const auto prof = prefix_profile(f, o.a, p, 0);
            nlohmann::json j{{"value", r.value},           {"best_alpha", r.best_alpha},
                             {"best_N", r.best_n},         {"terms_used", r.terms_used},
                             {"prefix_max", prof.max_abs}, {"argmax_H", prof.argmax_h},
                             {"sup_norm", t.sup_norm()}};
            std::ofstream(run.dir / "estimator.json") << j.dump(2) << '\n';
            std::printf("estimate=%.9f at alpha=%.6f N=%u (M=%.9f)\n", r.value, r.best_alpha, r.best_n,
                        prof.max_abs);
            run.finish();
            return 0;
        }

        if (c_selberg->parsed()) {
            o.p_raw = 3;  // manifest placeholder; no modulus in this subcommand
            RunScope run(o, "selberg", argc, argv);
            run.manifest.p = 0;
            run.manifest.family = "selberg";
            const auto L = static_cast<std::uint32_t>(sel_L);
            const SelbergPair sp = selberg_pair(sel_u, sel_v, L);
            nlohmann::json j{{"u", sp.u},
                             {"v", sp.v},
                             {"L", sp.L},
                             {"alpha_st_integral", sp.alpha.st_integral()},
                             {"beta_st_integral", sp.beta_st_integral},
                             {"beta_integral_flagged", sp.beta_integral_flagged},
                             {"beta_l2_norm_sq", sp.beta.l2_norm_sq()},
                             {"cheb_tail_max", sp.cheb_tail_max},
                             {"even_cheb_tail_max", sp.even_cheb_tail_max}};
            if (sel_z > 0) {
                const DeltaReport d = delta_details(sel_z, sel_gamma, L);
                j["delta"] = {{"z", sel_z},           {"gamma", sel_gamma}, {"delta", d.delta},
                              {"required", d.required}, {"i_plus", d.i_plus}, {"i_minus", d.i_minus},
                              {"j_plus", d.j_plus},     {"j_minus", d.j_minus},
                              {"meets_required", d.delta >= d.required}};
            }
            std::ofstream(run.dir / "selberg.json") << j.dump(2) << '\n';
            CsvWriter coeffs({"n", "alpha_cheb", "beta_cheb"});
            for (std::size_t n = 0; n < sp.alpha_cheb.y.size(); ++n)
                coeffs.add_row({std::to_string(n), CsvWriter::num(sp.alpha_cheb.y[n]),
                                CsvWriter::num(sp.beta_cheb.y[n])});
            coeffs.write(run.dir / "selberg_cheb.csv");
            std::printf("alpha mass=%.9f beta mass=%.9f -> %s\n", sp.alpha.st_integral(),
                        sp.beta_st_integral, (run.dir / "selberg.json").string().c_str());
            run.finish();
            return 0;
        }

        if (c_signsearch->parsed()) {
            RunScope run(o, "signsearch", argc, argv);
            const OddPrime p(o.p_raw);
            const FamilySpec f = parse_family(o).with_sign(SignConvention::plus);
            run.manifest.family = f.descriptor();
            const SumTable master = obtain_table(f, p, 1, ss_use_cache, o.cache_dir, run.manifest);
            const SignPattern pattern = make_detector_pattern(f, ss_z, p, ss_threshold);
            const auto rep = sign_pattern_search(master, pattern, !ss_no_stats, pool);
            std::ofstream(run.dir / "signsearch.json") << signsearch_json(rep).dump(2) << '\n';
            CsvWriter csv({"a", "M", "harmonic_bound"});
            for (std::size_t i = 0; i < rep.members.size(); ++i)
                csv.add_row({std::to_string(rep.members[i]),
                             rep.member_max.empty() ? "" : CsvWriter::num(rep.member_max[i]),
                             rep.member_harmonic_bound.empty()
                                 ? ""
                                 : CsvWriter::num(rep.member_harmonic_bound[i])});
            csv.write(run.dir / "members.csv");
            std::printf("members=%zu density=%.6g predicted=%.6g\n", rep.count, rep.density,
                        rep.predicted_density);
            run.finish();
            return 0;
        }

        if (c_moments->parsed()) {
            RunScope run(o, "moments", argc, argv);
            const OddPrime p(o.p_raw);
            const FamilySpec f = parse_family(o);
            run.manifest.family = f.descriptor();
            const auto ks = parse_u32_list(k_list);
            std::optional<std::uint64_t> seed_opt;
            if (c_moments->count("--seed") > 0) seed_opt = seed;
            else if (force_sample) seed_opt = 0x6ca1ab1eULL;
            const auto rep = max_moments(f, p, ks, pool, seed_opt);
            if (rep.sampled) run.manifest.seed = rep.seed;
            const CsvWriter csv = moments_csv(rep);
            csv.write(run.dir / "moments.csv");
            std::printf("parameters=%zu sampled=%d -> %s\n", rep.parameters_used, rep.sampled ? 1 : 0,
                        (run.dir / "moments.csv").string().c_str());
            run.finish();
            return 0;
        }

        if (c_tails->parsed()) {
            RunScope run(o, "tails", argc, argv);
            const OddPrime p(o.p_raw);
            const FamilySpec f = parse_family(o);
            run.manifest.family = f.descriptor();
            std::vector<double> thresholds;
            std::stringstream ss(grid);
            std::string piece;
            while (std::getline(ss, piece, ',')) thresholds.push_back(std::stod(piece));
            const auto rows = tail_distribution(f, p, thresholds, pool);
            const CsvWriter csv = tails_csv(rows);
            csv.write(run.dir / "tails.csv");
            std::printf("grid=%zu -> %s\n", rows.size(), (run.dir / "tails.csv").string().c_str());
            run.finish();
            return 0;
        }

        if (c_equidist->parsed()) {
            RunScope run(o, "equidist", argc, argv);
            const OddPrime p(o.p_raw);
            const FamilySpec f = parse_family(o).with_sign(SignConvention::plus);
            run.manifest.family = f.descriptor();
            const SumTable master = obtain_table(f, p, 1, eq_use_cache, o.cache_dir, run.manifest);
            const auto d = equidist_matrix(master, parse_maps(maps_text, p), d_max, pool);
            std::ofstream(run.dir / "equidist.json") << equidist_json(d).dump(2) << '\n';
            std::printf("singles=%zu pairs=%zu -> %s\n", d.singles.size(), d.pairs.size(),
                        (run.dir / "equidist.json").string().c_str());
            run.finish();
            return 0;
        }

        if (c_block->parsed()) {
            RunScope run(o, "blockmoment", argc, argv);
            const OddPrime p(o.p_raw);
            const FamilySpec f = parse_family(o);
            run.manifest.family = f.descriptor();
            const auto ks = parse_u32_list(blk_k);
            CsvWriter csv({"alpha", "beta", "k", "value", "gamma_fit", "delta_fit"});
            for (const std::uint32_t k : ks) {
                const double v = block_moment(f, p, blk_alpha, blk_beta, k, pool);
                // single-point fits of the two bound shapes, reported only
                const double logk = std::log(static_cast<double>(k));
                const double width = std::numbers::pi / (blk_beta - blk_alpha);
                const double shape1 =
                    k >= 2 ? std::pow(logk, 2.0 * k) * std::pow(width, -2.0 * k / logk) : 0.0;
                const double gamma_fit = k >= 2 ? std::pow(v / shape1, 1.0 / (2.0 * k))
                                                : std::numeric_limits<double>::quiet_NaN();
                const double shape2 = std::pow(static_cast<double>(p.value()), -0.5) *
                                      std::pow(std::log(static_cast<double>(p.value())), 2.0 * k);
                const double delta_fit = std::pow(v / shape2, 1.0 / (2.0 * k));
                csv.add_row({CsvWriter::num(blk_alpha), CsvWriter::num(blk_beta), std::to_string(k),
                             CsvWriter::num(v), CsvWriter::num(gamma_fit), CsvWriter::num(delta_fit)});
            }
            csv.write(run.dir / "blockmoment.csv");
            std::printf("-> %s\n", (run.dir / "blockmoment.csv").string().c_str());
            run.finish();
            return 0;
        }

        if (c_selftest->parsed()) {
            const auto results =
                run_selfcheck([](const std::string& line) { std::puts(line.c_str()); }, argv[0]);
            return all_passed(results) ? 0 : 2;
        }
    } catch (const domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const integrity_error& e) {
        std::fprintf(stderr, "integrity error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
