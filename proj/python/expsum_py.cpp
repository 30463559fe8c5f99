#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expsum/dft.hpp"
#include "expsum/experiments.hpp"
#include "expsum/fejer.hpp"
#include "expsum/incomplete.hpp"
#include "expsum/selberg.hpp"
#include "expsum/table_io.hpp"
#include "expsum/version.hpp"

namespace py = pybind11;
using namespace expsum;

namespace {

OddPrime prime(std::uint64_t p) { return OddPrime(p); }

py::object point_to_py(ProjPoint pt) {
    if (pt.is_infinity()) return py::none();
    return py::int_(pt.value());
}

}  // namespace

PYBIND11_MODULE(_expsum, m) {
    m.doc() = "incomplete exponential sums toolkit";
    m.attr("__version__") = version_string;

    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<integrity_error>(m, "IntegrityError", PyExc_RuntimeError);

    m.def("is_odd_prime", &is_odd_prime, py::arg("n"));
    m.def("mod_inverse", [](std::uint32_t x, std::uint64_t p) { return mod_inverse(x, prime(p)); },
          py::arg("x"), py::arg("p"));
    m.def("root_of_unity", [](std::int64_t k, std::uint64_t p) { return root_of_unity(k, prime(p)); },
          py::arg("k"), py::arg("p"));

    py::class_<MoebiusMap>(m, "MoebiusMap")
        .def(py::init([](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                         std::uint64_t p) { return MoebiusMap(a, b, c, d, prime(p)); }),
             py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("p"))
        .def_static("identity", [](std::uint64_t p) { return MoebiusMap::identity(prime(p)); })
        .def_static("translation",
                    [](std::int64_t y, std::uint64_t p) { return MoebiusMap::translation(y, prime(p)); })
        .def_static("dilation",
                    [](std::int64_t y, std::uint64_t p) { return MoebiusMap::dilation(y, prime(p)); })
        .def("apply",
             [](const MoebiusMap& tau, py::object x) {
                 if (x.is_none()) return point_to_py(tau.apply(ProjPoint::infinity()));
                 return point_to_py(tau.apply(x.cast<std::uint32_t>()));
             },
             py::arg("x"), "apply to a residue, or to None for the point at infinity")
        .def("inverse", &MoebiusMap::inverse)
        .def("equal", &MoebiusMap::equal)
        .def("__repr__", &MoebiusMap::str);

    py::enum_<SignConvention>(m, "SignConvention")
        .value("plus", SignConvention::plus)
        .value("minus", SignConvention::minus);

    py::class_<FamilySpec>(m, "FamilySpec")
        .def_static("kloosterman_shift", &FamilySpec::kloosterman_shift, py::arg("b") = 1)
        .def_static("kloosterman_dilate", &FamilySpec::kloosterman_dilate)
        .def_static("kloosterman_curve", &FamilySpec::kloosterman_curve, py::arg("m"))
        .def_static("birch_shift", &FamilySpec::birch_shift)
        .def_static("birch_dilate", &FamilySpec::birch_dilate)
        .def_static("birch_curve", &FamilySpec::birch_curve, py::arg("m"))
        .def_static("laurent",
                    [](const std::vector<std::pair<std::int32_t, std::int64_t>>& terms) {
                        std::vector<LaurentTerm> ts;
                        for (const auto& [e, c] : terms) ts.push_back({e, c});
                        return FamilySpec::laurent(ts);
                    },
                    py::arg("terms"), "terms as (exponent, coefficient) pairs")
        .def("with_sign", &FamilySpec::with_sign)
        .def_property_readonly("name", &FamilySpec::name)
        .def("__repr__", &FamilySpec::descriptor);

    m.def("phase_value",
          [](const FamilySpec& f, std::int64_t a, std::uint32_t x, std::uint64_t p) {
              return phase_value(f, a, x, prime(p));
          },
          py::arg("family"), py::arg("a"), py::arg("x"), py::arg("p"));
    m.def("complete_sum",
          [](const FamilySpec& f, std::int64_t a, std::uint64_t p) { return complete_sum(f, a, prime(p)); },
          py::arg("family"), py::arg("a"), py::arg("p"));

    py::class_<SumTable>(m, "SumTable")
        .def_property_readonly("p", [](const SumTable& t) { return t.p.value(); })
        .def_property_readonly("family", [](const SumTable& t) { return t.family; })
        .def_property_readonly("member_a", [](const SumTable& t) { return t.member_a; })
        .def_property_readonly("values", [](const SumTable& t) { return t.values; })
        .def_property_readonly("max_abs_error_estimate",
                               [](const SumTable& t) { return t.max_abs_error_estimate; })
        .def_property_readonly("method",
                               [](const SumTable& t) {
                                   return t.method == TableMethod::direct ? "direct" : "chirp_dft";
                               })
        .def("real_at", &SumTable::real_at, py::arg("index"))
        .def("sup_norm", &SumTable::sup_norm)
        .def("__len__", [](const SumTable& t) { return t.values.size(); });

    m.def("batch_complete_sums",
          [](const FamilySpec& f, std::uint64_t p, std::int64_t member_a) {
              return batch_complete_sums(f, prime(p), member_a);
          },
          py::arg("family"), py::arg("p"), py::arg("member_a") = 1);
    m.def("kloosterman_master_table", [](std::uint64_t p) { return kloosterman_master_table(prime(p)); },
          py::arg("p"));
    m.def("birch_master_table", [](std::uint64_t p) { return birch_master_table(prime(p)); }, py::arg("p"));
    m.def("fourier_index",
          [](const FamilySpec& f, std::int64_t a, std::int64_t n, std::uint64_t p) {
              return fourier_index(f, a, n, prime(p));
          },
          py::arg("family"), py::arg("a"), py::arg("n"), py::arg("p"));
    m.def("member_map",
          [](const FamilySpec& f, std::int64_t n, std::uint64_t p) { return member_map(f, n, prime(p)); },
          py::arg("family"), py::arg("n"), py::arg("p"));
    m.def("angle_of", &angle_of, py::arg("value"));

    py::class_<PrefixProfile>(m, "PrefixProfile")
        .def_property_readonly("max_abs", [](const PrefixProfile& x) { return x.max_abs; })
        .def_property_readonly("argmax_h", [](const PrefixProfile& x) { return x.argmax_h; })
        .def_property_readonly("full_prefix", [](const PrefixProfile& x) {
            return x.full_prefix ? py::cast(*x.full_prefix) : py::none().cast<py::object>();
        });

    m.def("prefix_profile",
          [](const FamilySpec& f, std::int64_t a, std::uint64_t p, std::uint32_t keep) {
              return prefix_profile(f, a, prime(p), keep);
          },
          py::arg("family"), py::arg("a"), py::arg("p"), py::arg("keep_prefix_limit") = 4096);
    m.def("range_sum",
          [](const FamilySpec& f, std::int64_t a, std::uint64_t p, std::uint32_t N, std::uint32_t H) {
              return range_sum(f, a, prime(p), N, H);
          },
          py::arg("family"), py::arg("a"), py::arg("p"), py::arg("N"), py::arg("H"));
    m.def("pv_ratio", &pv_ratio, py::arg("profile"), py::arg("table"));

    py::class_<ShortSumScan>(m, "ShortSumScan")
        .def_readonly("window", &ShortSumScan::window)
        .def_readonly("extremum", &ShortSumScan::extremum)
        .def_readonly("argmax_n", &ShortSumScan::argmax_n);
    m.def("short_sum_extremum",
          [](const FamilySpec& f, std::int64_t a, std::uint64_t p, std::uint32_t H) {
              return short_sum_extremum(f, a, prime(p), H);
          },
          py::arg("family"), py::arg("a"), py::arg("p"), py::arg("H"));

    m.def("fejer_kernel", &fejer_kernel, py::arg("N"), py::arg("theta"));
    m.def("fourier_partial", &fourier_partial, py::arg("table"), py::arg("alpha"), py::arg("N"));

    py::class_<EstimatorResult>(m, "EstimatorResult")
        .def_readonly("value", &EstimatorResult::value)
        .def_readonly("best_alpha", &EstimatorResult::best_alpha)
        .def_readonly("best_n", &EstimatorResult::best_n)
        .def_readonly("terms_used", &EstimatorResult::terms_used);
    m.def("estimator_lower_bound", &estimator_lower_bound, py::arg("table"), py::arg("n_list"),
          py::arg("alpha_grid"));
    m.def("default_alpha_grid", &default_alpha_grid);
    m.def("default_n_list", [](std::uint64_t p) { return default_n_list(prime(p)); }, py::arg("p"));
    m.def("odd_harmonic_bound", &odd_harmonic_bound, py::arg("values"), py::arg("z"));

    m.def("cheb_u", &cheb_u, py::arg("n"), py::arg("x"));
    m.def("st_integrate", &st_integrate, py::arg("f"), py::arg("tol") = 1e-9);
    m.def("st_interval_mass", &st_interval_mass, py::arg("lo"), py::arg("hi"));

    py::class_<SelbergPair>(m, "SelbergPair")
        .def_readonly("u", &SelbergPair::u)
        .def_readonly("v", &SelbergPair::v)
        .def_readonly("L", &SelbergPair::L)
        .def_property_readonly("alpha_cheb", [](const SelbergPair& s) { return s.alpha_cheb.y; })
        .def_property_readonly("beta_cheb", [](const SelbergPair& s) { return s.beta_cheb.y; })
        .def_readonly("beta_st_integral", &SelbergPair::beta_st_integral)
        .def_readonly("beta_integral_flagged", &SelbergPair::beta_integral_flagged)
        .def_readonly("cheb_tail_max", &SelbergPair::cheb_tail_max)
        .def_readonly("even_cheb_tail_max", &SelbergPair::even_cheb_tail_max)
        .def_property_readonly("alpha_st_integral",
                               [](const SelbergPair& s) { return s.alpha.st_integral(); })
        .def("alpha_at", [](const SelbergPair& s, double x) { return s.alpha.eval(x); }, py::arg("x"))
        .def("beta_at", [](const SelbergPair& s, double x) { return s.beta.eval(x); }, py::arg("x"))
        .def_property_readonly("beta_l2_norm_sq",
                               [](const SelbergPair& s) { return s.beta.l2_norm_sq(); });
    m.def("selberg_pair", &selberg_pair, py::arg("u"), py::arg("v"), py::arg("L"));
    m.def("choose_L", &choose_L, py::arg("z"), py::arg("gamma"));

    py::class_<DeltaReport>(m, "DeltaReport")
        .def_readonly("delta", &DeltaReport::delta)
        .def_readonly("required", &DeltaReport::required)
        .def_readonly("i_plus", &DeltaReport::i_plus)
        .def_readonly("i_minus", &DeltaReport::i_minus)
        .def_readonly("j_plus", &DeltaReport::j_plus)
        .def_readonly("j_minus", &DeltaReport::j_minus)
        .def_readonly("L", &DeltaReport::L);
    m.def("delta_details", &delta_details, py::arg("z"), py::arg("gamma"), py::arg("L"));
    m.def("delta_constant", &delta_constant, py::arg("z"), py::arg("gamma"), py::arg("L"));

    py::class_<SignSearchReport>(m, "SignSearchReport")
        .def_property_readonly("p", [](const SignSearchReport& r) { return r.p.value(); })
        .def_readonly("members", &SignSearchReport::members)
        .def_readonly("count", &SignSearchReport::count)
        .def_readonly("density", &SignSearchReport::density)
        .def_readonly("predicted_density", &SignSearchReport::predicted_density)
        .def_readonly("member_max", &SignSearchReport::member_max)
        .def_readonly("member_harmonic_bound", &SignSearchReport::member_harmonic_bound)
        .def_readonly("table_sup_norm", &SignSearchReport::table_sup_norm);
    m.def("detector_search",
          [](const SumTable& table, std::uint32_t z, double threshold, bool member_stats) {
              const auto pattern = make_detector_pattern(table.family, z, table.p, threshold);
              return sign_pattern_search(table, pattern, member_stats);
          },
          py::arg("table"), py::arg("z") = 1, py::arg("threshold") = std::numbers::sqrt2,
          py::arg("member_stats") = true,
          "scan for parameters passing the +/- odd-harmonic sign conditions");

    py::class_<MomentReport>(m, "MomentReport")
        .def_property_readonly("p", [](const MomentReport& r) { return r.p.value(); })
        .def_readonly("sampled", &MomentReport::sampled)
        .def_readonly("seed", &MomentReport::seed)
        .def_readonly("parameters_used", &MomentReport::parameters_used)
        .def_readonly("k_values", &MomentReport::k_values)
        .def_readonly("moments", &MomentReport::moments)
        .def_readonly("logk_curve", &MomentReport::logk_curve)
        .def_readonly("loglogp_curve", &MomentReport::loglogp_curve)
        .def_readonly("pk_curve", &MomentReport::pk_curve);
    m.def("max_moments",
          [](const FamilySpec& f, std::uint64_t p, const std::vector<std::uint32_t>& ks,
             std::optional<std::uint64_t> seed) { return max_moments(f, prime(p), ks, {}, seed); },
          py::arg("family"), py::arg("p"), py::arg("k_list"), py::arg("seed") = std::nullopt);
    m.def("tail_distribution",
          [](const FamilySpec& f, std::uint64_t p, std::vector<double> grid) {
              return tail_distribution(f, prime(p), std::move(grid));
          },
          py::arg("family"), py::arg("p"), py::arg("a_grid"));
    m.def("member_maxima",
          [](const FamilySpec& f, std::uint64_t p) { return member_maxima(f, prime(p)); },
          py::arg("family"), py::arg("p"));
    m.def("equidist_singles",
          [](const SumTable& table, const std::vector<MoebiusMap>& maps, std::uint32_t d_max) {
              const auto d = equidist_matrix(table, maps, d_max);
              std::vector<std::tuple<std::string, std::uint32_t, double>> out;
              for (const auto& s : d.singles) out.emplace_back(s.map, s.n, s.value);
              return out;
          },
          py::arg("table"), py::arg("maps"), py::arg("d_max") = 8);
    m.def("block_moment",
          [](const FamilySpec& f, std::uint64_t p, double alpha, double beta, std::uint32_t k) {
              return block_moment(f, prime(p), alpha, beta, k);
          },
          py::arg("family"), py::arg("p"), py::arg("alpha"), py::arg("beta"), py::arg("k"));
}
