#include "expsum/selberg.hpp"

#include <cmath>
#include <numbers>

#include "expsum/errors.hpp"
#include "expsum/numeric.hpp"

namespace expsum {

namespace {
constexpr double kPi = std::numbers::pi;
}

double cheb_u(std::uint32_t n, double x) {
    if (std::abs(x) > 2.0) throw domain_error("cheb_u argument must lie in [-2,2]");
    if (n > 1000000) throw domain_error("cheb_u recurrence depth capped at 1e6");
    double u_prev = 1.0;  // U_0
    if (n == 0) return u_prev;
    double u_cur = x;  // U_1
    for (std::uint32_t k = 1; k < n; ++k) {
        const double next = x * u_cur - u_prev;
        u_prev = u_cur;
        u_cur = next;
    }
    return u_cur;
}

namespace {

double st_weight(double theta) {
    const double s = std::sin(theta);
    return (2.0 / kPi) * s * s;
}

struct AdaptiveSimpson {
    const std::function<double(double)>& f;
    int evals = 0;
    int max_evals = 4000000;

    double fw(double t) {
        ++evals;
        if (evals > max_evals) throw integrity_error("st_integrate failed to converge within budget");
        return f(t) * st_weight(t);
    }

    double run(double a, double b, double tol) {
        const double fa = fw(a), fb = fw(b), fm = fw(0.5 * (a + b));
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return recurse(a, b, fa, fm, fb, whole, tol, 60);
    }

    double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = fw(lm), frm = fw(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (depth <= 0) return left + right + delta / 15.0;
        if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
};

}  // namespace

double st_integrate(const std::function<double(double)>& f, double tol) {
    // pre-split so oscillatory integrands cannot fool the first Simpson level
    constexpr int panels = 64;
    AdaptiveSimpson s{f};
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = kPi * i / panels;
        const double b = kPi * (i + 1) / panels;
        total += s.run(a, b, tol / panels);
    }
    return total;
}

double st_interval_mass(double lo, double hi) {
    auto cdf = [](double t) { return t / kPi - std::sin(2.0 * t) / (2.0 * kPi); };
    return cdf(hi) - cdf(lo);
}

double TrigPoly::eval(double x) const {
    double s = c0;
    for (std::size_t l = 1; l <= c.size(); ++l) {
        const double ang = 2.0 * kPi * static_cast<double>(l) * x;
        const std::complex<double> e(std::cos(ang), std::sin(ang));
        s += 2.0 * (c[l - 1] * e).real();
    }
    return s;
}

double TrigPoly::l2_norm_sq() const {
    double s = c0 * c0;
    for (const auto& z : c) s += 2.0 * std::norm(z);
    return s;
}

namespace {

// E(k) = int_0^pi e^{i k theta} dtheta
std::complex<double> half_period_exp_integral(std::int64_t k) {
    if (k == 0) return {kPi, 0.0};
    if (k % 2 == 0) return {0.0, 0.0};
    return {0.0, 2.0 / static_cast<double>(k)};
}

// G(l, n) = int_0^pi e^{2 i l theta} U_n(2cos theta) dmu_ST
//         = (1/(2pi)) [E(2l+n) + E(2l-n) - E(2l+n+2) - E(2l-n-2)]
std::complex<double> fourier_cheb_coupling(std::int64_t l, std::int64_t n) {
    const std::complex<double> s = half_period_exp_integral(2 * l + n) +
                                   half_period_exp_integral(2 * l - n) -
                                   half_period_exp_integral(2 * l + n + 2) -
                                   half_period_exp_integral(2 * l - n - 2);
    return s / (2.0 * kPi);
}

}  // namespace

double TrigPoly::st_integral() const {
    // only l = 0 and |l| = 1 couple to the constant: moments 1 and -1/2
    double s = c0;
    if (!c.empty()) s -= 2.0 * c[0].real() * 0.5;
    return s;
}

std::vector<double> TrigPoly::cheb_coeffs(std::uint32_t n_max) const {
    std::vector<double> out(n_max + 1, 0.0);
    for (std::uint32_t n = 0; n <= n_max; ++n) {
        std::complex<double> acc = c0 * fourier_cheb_coupling(0, n);
        for (std::size_t l = 1; l <= c.size(); ++l) {
            const auto li = static_cast<std::int64_t>(l);
            acc += c[l - 1] * fourier_cheb_coupling(li, n) +
                   std::conj(c[l - 1]) * fourier_cheb_coupling(-li, n);
        }
        out[n] = acc.real();
    }
    return out;
}

std::vector<double> TrigPoly::cheb_coeffs_even(std::uint32_t n_max) const {
    std::vector<double> out(n_max + 1, 0.0);
    for (std::uint32_t n = 0; n <= n_max; ++n) {
        std::complex<double> acc = c0 * fourier_cheb_coupling(0, n);
        for (std::size_t l = 1; l <= c.size(); ++l) {
            const auto li = static_cast<std::int64_t>(l);
            const std::complex<double> even(c[l - 1].real(), 0.0);
            acc += even * (fourier_cheb_coupling(li, n) + fourier_cheb_coupling(-li, n));
        }
        out[n] = acc.real();
    }
    return out;
}

namespace {

// Vaaler multiplier: J(t) = pi t (1-t) cot(pi t) + t on (0,1), J(0)=1
double vaaler_multiplier(double t) {
    if (t < 1e-12) return 1.0;
    return kPi * t * (1.0 - t) * std::cos(kPi * t) / std::sin(kPi * t) + t;
}

// degree-L sawtooth approximation V_L with |V_L - psi| <= Fejer/(2L+2);
// returned as e(l x) coefficients for l = 1..L (imaginary, odd polynomial)
std::vector<std::complex<double>> vaaler_coeffs(std::uint32_t L) {
    std::vector<std::complex<double>> c(L);
    for (std::uint32_t n = 1; n <= L; ++n) {
        const double J = vaaler_multiplier(static_cast<double>(n) / (L + 1.0));
        c[n - 1] = std::complex<double>(0.0, J / (2.0 * kPi * n));
    }
    return c;
}

double indicator(double u, double v, double x) {
    x -= std::floor(x);
    return (x >= u && x <= v) ? 1.0 : 0.0;
}

}  // namespace

SelbergPair selberg_pair(double u, double v, std::uint32_t L) {
    if (!(0.0 <= u && u < v && v <= 1.0)) throw domain_error("selberg_pair needs 0 <= u < v <= 1");
    if (L < 1) throw domain_error("selberg_pair needs L >= 1");

    SelbergPair out;
    out.u = u;
    out.v = v;
    out.L = L;

    // alpha(x) = (v-u) + V_L(x-v) - V_L(x-u)
    const auto V = vaaler_coeffs(L);
    out.alpha.c0 = v - u;
    out.alpha.c.resize(L);
    for (std::uint32_t l = 1; l <= L; ++l) {
        const double au = 2.0 * kPi * l * u, av = 2.0 * kPi * l * v;
        const std::complex<double> eu(std::cos(au), -std::sin(au));  // e(-l u)
        const std::complex<double> ev(std::cos(av), -std::sin(av));
        out.alpha.c[l - 1] = V[l - 1] * (ev - eu);
    }

    // beta(x) = (Fejer_{L+1}(x-u) + Fejer_{L+1}(x-v)) / (2L+2)
    out.beta.c0 = 1.0 / (L + 1.0);
    out.beta.c.resize(L);
    for (std::uint32_t l = 1; l <= L; ++l) {
        const double w = 1.0 - static_cast<double>(l) / (L + 1.0);
        const double au = 2.0 * kPi * l * u, av = 2.0 * kPi * l * v;
        const std::complex<double> eu(std::cos(au), -std::sin(au));
        const std::complex<double> ev(std::cos(av), -std::sin(av));
        out.beta.c[l - 1] = w * (eu + ev) / (2.0 * L + 2.0);
    }

    // verification grid. Boundedness is exact (up to roundoff) when the
    // endpoints are aligned, i.e. (L+1)u and (L+1)v are integers -- the
    // congruence choose_L enforces. Off alignment a sub-1e-3 overshoot can
    // appear; tolerate it there only.
    const auto aligned = [&](double w) {
        const double s = w * (L + 1.0);
        return std::abs(s - std::round(s)) < 1e-9;
    };
    const double bound_tol = (aligned(u) && aligned(v)) ? 1e-9 : 1e-3;
    constexpr int grid = 10000;
    for (int i = 0; i < grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        const double a = out.alpha.eval(x);
        const double b = out.beta.eval(x);
        if (a < -bound_tol || a > 1.0 + bound_tol)
            throw integrity_error("selberg_pair: alpha leaves [0,1] at x=" + std::to_string(x));
        if (b < -bound_tol) throw integrity_error("selberg_pair: beta negative at x=" + std::to_string(x));
        const double du = std::min(std::abs(x - u), std::abs(x - u + 1.0));
        const double dv = std::min(std::abs(x - v), std::abs(x - v - 1.0));
        if (std::min(du, dv) >= 1e-3) {
            if (std::abs(indicator(u, v, x) - a) > b + bound_tol)
                throw integrity_error("selberg_pair: sandwich fails at x=" + std::to_string(x));
        }
    }

    out.alpha_cheb.y = out.alpha.cheb_coeffs(2 * L);
    out.alpha_cheb.degree = 2 * L;
    out.beta_cheb.y = out.beta.cheb_coeffs(2 * L);
    out.beta_cheb.degree = 2 * L;

    // degree cap: the cosine content terminates at 2L exactly; that is the
    // checked invariant. The full polynomials keep a small sine tail for
    // asymmetric endpoint pairs, recorded in cheb_tail_max.
    const auto tail_a = out.alpha.cheb_coeffs(2 * L + 16);
    const auto tail_b = out.beta.cheb_coeffs(2 * L + 16);
    const auto even_a = out.alpha.cheb_coeffs_even(2 * L + 16);
    const auto even_b = out.beta.cheb_coeffs_even(2 * L + 16);
    for (std::uint32_t n = 2 * L + 1; n <= 2 * L + 16; ++n) {
        out.cheb_tail_max = std::max({out.cheb_tail_max, std::abs(tail_a[n]), std::abs(tail_b[n])});
        out.even_cheb_tail_max =
            std::max({out.even_cheb_tail_max, std::abs(even_a[n]), std::abs(even_b[n])});
    }
    if (out.even_cheb_tail_max > 1e-9)
        throw integrity_error("selberg_pair: even-part Chebyshev coefficient beyond 2L is nonzero");

    out.beta_st_integral = out.beta.st_integral();
    out.beta_integral_flagged = out.beta_st_integral > 2.0 / (L + 1.0);
    return out;
}

std::uint32_t choose_L(std::uint32_t z, std::uint32_t gamma) {
    if (z % 2 == 0 || z == 0) throw domain_error("choose_L needs odd z >= 1");
    if (gamma < 4 || gamma % 2 != 0) throw domain_error("choose_L needs even gamma >= 4");
    const double q = 0.5 - 1.0 / static_cast<double>(gamma);
    const double min2l2 = 6.0 * static_cast<double>(z) / (q * q);
    std::uint32_t L = 47;
    const auto size_bound = static_cast<std::uint32_t>(std::ceil(min2l2 / 2.0 - 1.0));
    if (size_bound > L) L = size_bound;
    while ((L + 1) % (2 * gamma) != 0) ++L;
    return L;
}

DeltaReport delta_details(std::uint32_t z, std::uint32_t gamma, std::uint32_t L) {
    if (z % 2 == 0 || z == 0) throw domain_error("delta needs odd z >= 1");
    if (gamma < 4 || gamma % 2 != 0) throw domain_error("delta needs even gamma >= 4");
    const double q = 0.5 - 1.0 / static_cast<double>(gamma);
    const SelbergPair plus = selberg_pair(0.0, q, L);
    const SelbergPair minus = selberg_pair(1.0 - q, 1.0, L);

    DeltaReport r;
    r.L = L;
    r.i_plus = plus.alpha.st_integral();
    r.i_minus = minus.alpha.st_integral();
    r.j_plus = plus.beta_st_integral;
    r.j_minus = minus.beta_st_integral;
    const double half = (z + 1) / 2.0;
    const double ip = r.i_plus, im = r.i_minus;
    r.delta = std::pow(ip, half) * std::pow(im, half) -
              half * (r.j_plus * std::pow(ip, half - 1.0) * std::pow(im, half) +
                      r.j_minus * std::pow(ip, half) * std::pow(im, half - 1.0));
    r.required = 0.5 * std::pow(q, static_cast<double>(z) + 1.0);
    return r;
}

double delta_constant(std::uint32_t z, std::uint32_t gamma, std::uint32_t L) {
    const DeltaReport r = delta_details(z, gamma, L);
    if (r.delta < r.required)
        throw integrity_error("constant-term bound violated: Delta = " + std::to_string(r.delta) +
                              " < required " + std::to_string(r.required));
    return r.delta;
}

}  // namespace expsum
