#pragma once

// Special functions used throughout rmtlab: log-gamma (real and complex),
// Hurwitz zeta and its s-derivative, Bernoulli numbers, the Riemann-Siegel
// theta function and zeta(1/2 + it) on the critical line.
//
// Everything here is a pure function of its arguments.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "rmtlab/detail/riemann_siegel_coefficients.hpp"
#include "rmtlab/errors.hpp"

namespace rmtlab::specialfn {

using cplx = std::complex<double>;

struct EvalAccuracy {
    double abs_tol = 1e-10;
    int max_terms = 1'000'000;

    void validate() const {
        if (!(abs_tol > 0.0)) throw DomainError("EvalAccuracy: abs_tol must be > 0");
        if (max_terms < 1) throw DomainError("EvalAccuracy: max_terms must be >= 1");
    }
};

/// zeta(1/2 + it) together with its Riemann-Siegel decomposition
/// zeta = exp(-i theta) Z with Z real.
struct CriticalLineValue {
    double t = 0.0;
    double z_value = 0.0;
    double theta = 0.0;
    double zeta_re = 0.0;
    double zeta_im = 0.0;
    double err_estimate = 0.0;

    [[nodiscard]] cplx zeta() const { return {zeta_re, zeta_im}; }
    [[nodiscard]] double abs_zeta() const { return std::abs(z_value); }
};

inline constexpr double kEulerGamma = 0.5772156649015329;
/// zeta'(-1) = 1/12 - ln(Glaisher's constant).
inline constexpr double kZetaPrimeMinusOne = -0.1654211437004509;
inline constexpr double kCriticalLineSwitch = 50.0;

inline double euler_gamma() noexcept { return kEulerGamma; }
inline double zeta_prime_minus_one() noexcept { return kZetaPrimeMinusOne; }

namespace detail {

// B_0, B_2, ..., B_60 from the exact rationals.
inline constexpr std::array<long double, 31> kBernoulliEven = {
    1.00000000000000000000L,       0.166666666666666666667L,     -0.0333333333333333333333L,
    0.0238095238095238095238L,     -0.0333333333333333333333L,   0.0757575757575757575758L,
    -0.253113553113553113553L,     1.16666666666666666667L,      -7.09215686274509803922L,
    54.9711779448621553885L,       -529.124242424242424242L,     6192.12318840579710145L,
    -86580.2531135531135531L,      1425517.16666666666667L,      -27298231.0678160919540L,
    601580873.900642368384L,       -15116315767.0921568627L,     429614643061.166666667L,
    -13711655205088.3327722L,      488332318973593.166667L,      -19296579341940068.1486L,
    841693047573682615.000L,       -40338071854059455413.1L,     2.11507486380819916056e+21L,
    -1.20866265222965259346e+23L,  7.50086674607696436686e+24L,  -5.03877810148106891414e+26L,
    3.65287764848181233351e+28L,   -2.84987693024508822263e+30L, 2.38654274996836276446e+32L,
    -2.13999492572253336658e+34L,
};

}  // namespace detail

inline double bernoulli(int n) {
    if (n == 1) return -0.5;
    if (n < 0 || n > 60 || n % 2 != 0)
        throw DomainError("bernoulli: n must be even and in [0, 60], got " + std::to_string(n));
    return static_cast<double>(detail::kBernoulliEven[static_cast<std::size_t>(n / 2)]);
}

inline double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: x must be > 0");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);  // reentrant; std::lgamma may write signgam
#else
    return std::lgamma(x);
#endif
}

/// log Gamma(z) for Re z > 0. The imaginary part is the continuous branch
/// (sum of principal logs through the upward recurrence), not the principal
/// value of log(Gamma(z)).
inline cplx ln_gamma_complex(cplx z) {
    if (!(z.real() > 0.0) || !std::isfinite(z.imag()))
        throw DomainError("ln_gamma_complex: requires Re z > 0");
    constexpr double kShiftTarget = 15.0;
    cplx shift_log{0.0, 0.0};
    cplx w = z;
    while (w.real() < kShiftTarget) {
        shift_log += std::log(w);
        w += 1.0;
    }
    const cplx inv = 1.0 / w;
    const cplx inv2 = inv * inv;
    cplx series{0.0, 0.0};
    cplx power = inv;
    for (int j = 1; j <= 12; ++j) {
        const double b = static_cast<double>(detail::kBernoulliEven[static_cast<std::size_t>(j)]);
        series += b / (2.0 * j * (2.0 * j - 1.0)) * power;
        power *= inv2;
    }
    const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
    return (w - 0.5) * std::log(w) - w + half_log_2pi + series - shift_log;
}

namespace detail {

inline long double hurwitz_zeta_ld(long double s, long double a) {
    const long double abs_s = s < 0 ? -s : s;
    const long n0 = std::max(static_cast<long>(std::ceil(abs_s)) + 10,
                             static_cast<long>(std::ceil(a)) + 10);
    long double head = 0.0L;
    for (long n = n0 - 1; n >= 0; --n) head += std::pow(a + static_cast<long double>(n), -s);

    const long double x = a + static_cast<long double>(n0);
    const long double x_pow = std::pow(x, -s);
    long double tail = x * x_pow / (s - 1.0L) + 0.5L * x_pow;
    // Euler-Maclaurin: sum_j B_2j/(2j)! s(s+1)...(s+2j-2) x^{-s-2j+1}
    long double rising = s;
    long double factorial = 2.0L;
    long double x_term = x_pow / x;
    const long double inv_x2 = 1.0L / (x * x);
    for (int j = 1; j <= 15; ++j) {
        if (j > 1) {
            rising *= (s + 2.0L * j - 3.0L) * (s + 2.0L * j - 2.0L);
            factorial *= (2.0L * j - 1.0L) * (2.0L * j);
            x_term *= inv_x2;
        }
        tail += kBernoulliEven[static_cast<std::size_t>(j)] / factorial * rising * x_term;
    }
    return head + tail;
}

}  // namespace detail

/// zeta(s, a) = sum_{n >= 0} (a + n)^{-s}, analytically continued in s.
inline double hurwitz_zeta(double s, double a) {
    if (s == 1.0) throw PoleError("hurwitz_zeta: pole at s = 1");
    if (!(a > 0.0)) throw DomainError("hurwitz_zeta: a must be > 0");
    return static_cast<double>(detail::hurwitz_zeta_ld(s, a));
}

/// d/ds zeta(s, a) by Richardson-extrapolated central differences.
inline double hurwitz_zeta_ds(double s, double a) {
    constexpr long double h = 1e-3L;
    if (std::abs(s - 1.0) <= 2.0 * static_cast<double>(h))
        throw PoleError("hurwitz_zeta_ds: s too close to the pole at 1");
    if (!(a > 0.0)) throw DomainError("hurwitz_zeta_ds: a must be > 0");
    const long double sl = s;
    const long double al = a;
    auto central = [&](long double step) {
        return (detail::hurwitz_zeta_ld(sl + step, al) - detail::hurwitz_zeta_ld(sl - step, al)) /
               (2.0L * step);
    };
    const long double coarse = central(h);
    const long double fine = central(h / 2.0L);
    return static_cast<double>((4.0L * fine - coarse) / 3.0L);
}

namespace detail {

inline double theta_from_ln_gamma(double t) {
    return ln_gamma_complex({0.25, 0.5 * t}).imag() - 0.5 * t * std::log(std::numbers::pi);
}

inline double theta_asymptotic(double t) {
    const double inv = 1.0 / t;
    const double inv2 = inv * inv;
    const double series =
        inv *
        (1.0 / 48.0 +
         inv2 * (7.0 / 5760.0 +
                 inv2 * (31.0 / 80640.0 + inv2 * (127.0 / 430080.0 + inv2 * (511.0 / 1216512.0)))));
    return 0.5 * t * std::log(t / (2.0 * std::numbers::pi)) - 0.5 * t - std::numbers::pi / 8.0 +
           series;
}

template <std::size_t N>
double taylor_eval(const double (&c)[N], double z) {
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) acc = acc * z + c[i];
    return acc;
}

struct EmResult {
    cplx value;
    double err;
};

// Euler-Maclaurin for zeta(s), s = 1/2 + it.
inline EmResult zeta_euler_maclaurin(double t, const EvalAccuracy& acc) {
    const cplx s{0.5, t};
    const long n_direct = static_cast<long>(std::ceil(t)) + 10;
    if (n_direct > acc.max_terms)
        throw NumericError("zeta_critical_line: Euler-Maclaurin needs " + std::to_string(n_direct) +
                           " terms, above max_terms");
    cplx head{0.0, 0.0};
    for (long n = n_direct - 1; n >= 1; --n) {
        const double ln_n = std::log(static_cast<double>(n));
        head += std::exp(-s * ln_n);
    }
    const double x = static_cast<double>(n_direct);
    const cplx x_pow = std::exp(-s * std::log(x));
    cplx tail = x * x_pow / (s - 1.0) + 0.5 * x_pow;
    cplx rising = s;
    double factorial = 2.0;
    cplx x_term = x_pow / x;
    double last = 0.0;
    bool converged = false;
    for (int j = 1; j <= 30; ++j) {
        if (j > 1) {
            rising *= (s + (2.0 * j - 3.0)) * (s + (2.0 * j - 2.0));
            factorial *= (2.0 * j - 1.0) * (2.0 * j);
            x_term /= x * x;
        }
        const cplx term = static_cast<double>(kBernoulliEven[static_cast<std::size_t>(j)]) /
                          factorial * rising * x_term;
        tail += term;
        last = std::abs(term);
        if (last < 1e-3 * acc.abs_tol && j >= 2) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericError("zeta_critical_line: Euler-Maclaurin tail did not reach abs_tol");
    return {head + tail, last};
}

inline double riemann_siegel_error_bound(double t) {
    return 2e-4 * std::pow(2.0 * std::numbers::pi / t, 2.75);
}

inline double riemann_siegel_z(double t, double theta) {
    const double tau = std::sqrt(t / (2.0 * std::numbers::pi));
    const long m = static_cast<long>(std::floor(tau));
    double main = 0.0;
    for (long n = m; n >= 1; --n) {
        const double dn = static_cast<double>(n);
        main += std::cos(theta - t * std::log(dn)) / std::sqrt(dn);
    }
    const double z = (tau - static_cast<double>(m)) - 0.5;
    const double q = 1.0 / tau;
    const double corr =
        taylor_eval(kC0, z) +
        q * (taylor_eval(kC1, z) +
             q * (taylor_eval(kC2, z) + q * (taylor_eval(kC3, z) + q * taylor_eval(kC4, z))));
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^{m-1}
    return 2.0 * main + sign * corr / std::sqrt(tau);
}

}  // namespace detail

/// Riemann-Siegel theta(t) = Im lnGamma(1/4 + it/2) - (t/2) ln pi, odd in t.
inline double riemann_siegel_theta(double t) {
    if (t < 0.0) return -riemann_siegel_theta(-t);
    if (t < kCriticalLineSwitch) return detail::theta_from_ln_gamma(t);
    return detail::theta_asymptotic(t);
}

/// zeta(1/2 + it): Euler-Maclaurin below t = 50, Riemann-Siegel with
/// corrections C_0..C_4 above (falling back to Euler-Maclaurin when the
/// Riemann-Siegel remainder bound exceeds acc.abs_tol).
inline CriticalLineValue zeta_critical_line(double t, const EvalAccuracy& acc = {}) {
    acc.validate();
    if (!(t >= 0.0)) throw DomainError("zeta_critical_line: t must be >= 0");
    CriticalLineValue out;
    out.t = t;
    out.theta = riemann_siegel_theta(t);
    const bool use_rs =
        t >= kCriticalLineSwitch && detail::riemann_siegel_error_bound(t) <= acc.abs_tol;
    if (use_rs) {
        out.z_value = detail::riemann_siegel_z(t, out.theta);
        out.zeta_re = out.z_value * std::cos(out.theta);
        out.zeta_im = -out.z_value * std::sin(out.theta);
        out.err_estimate = detail::riemann_siegel_error_bound(t);
    } else {
        const auto em = detail::zeta_euler_maclaurin(t, acc);
        const cplx rotated = std::polar(1.0, out.theta) * em.value;
        out.z_value = rotated.real();
        out.zeta_re = em.value.real();
        out.zeta_im = em.value.imag();
        out.err_estimate = em.err;
    }
    return out;
}

}  // namespace rmtlab::specialfn
