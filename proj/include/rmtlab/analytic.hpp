#pragma once

// Closed-form large-N predictions for moments of characteristic polynomials
// of random Hermitian matrices, and the gamma_K coefficient computed three
// independent ways.
//
// Normalization: every moment prediction refers to the normalized log
// characteristic polynomial
//     L(lambda) = log|det(lambda - X)| - (N/2) V(lambda) + N/2
// and the normalized moment <exp(2K L)>.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rmtlab/errors.hpp"
#include "rmtlab/specialfn.hpp"

namespace rmtlab::analytic {

using cplx = std::complex<double>;
using specialfn::EvalAccuracy;

enum class GammaKMethod { IntegerProduct, RegulatedIntegral, HurwitzLimit, SmallKExpansion };

inline const char* to_string(GammaKMethod m) {
    switch (m) {
        case GammaKMethod::IntegerProduct: return "integer-product";
        case GammaKMethod::RegulatedIntegral: return "regulated-integral";
        case GammaKMethod::HurwitzLimit: return "hurwitz-limit";
        case GammaKMethod::SmallKExpansion: return "small-k-expansion";
    }
    return "?";
}

struct GammaKResult {
    double k = 0.0;
    double log_value = 0.0;
    GammaKMethod method = GammaKMethod::IntegerProduct;
    double err_estimate = 0.0;

    [[nodiscard]] double value() const { return std::exp(log_value); }
};

/// Center energy with scaled offsets x_a = 2 pi N rho(lambda) (lambda_a - lambda).
struct ScalingPoint {
    double lambda_center = 0.0;
    std::vector<double> offsets;
    int n = 1;

    void validate() const {
        if (n < 1) throw DomainError("ScalingPoint: n must be >= 1");
        if (!(std::abs(lambda_center) < 2.0))
            throw DomainError("ScalingPoint: |lambda_center| must be < 2");
        double sum = 0.0;
        double scale = 1.0;
        for (double x : offsets) {
            sum += x;
            scale += std::abs(x);
        }
        if (std::abs(sum) > 1e-12 * scale) throw DomainError("ScalingPoint: offsets must sum to 0");
    }
};

enum class PredictionKind {
    Moment,
    LogMomentEven,
    LogMomentOdd,
    TwoPointMoment,
    TwoPointLogMoment,
    LogDifferenceMoment,
    SineKernel,
    G2Connected
};

struct Prediction {
    double value = 0.0;
    PredictionKind kind = PredictionKind::Moment;
    std::map<std::string, double> inputs;
    bool low_x_warning = false;  // x in [3, 10): outside the comfortable large-x range
};

// ---------------------------------------------------------------------------
// Density and scaling

inline double semicircle_density(double lambda) {
    if (std::abs(lambda) >= 2.0) return 0.0;
    return std::sqrt(4.0 - lambda * lambda) / (2.0 * std::numbers::pi);
}

/// 2 pi N rho(lambda): the local level density in units of the mean spacing.
inline double local_scale(int n, double lambda) {
    return 2.0 * std::numbers::pi * n * semicircle_density(lambda);
}

inline ScalingPoint make_scaling_point(int n, const std::vector<double>& lambdas) {
    if (lambdas.empty()) throw DomainError("make_scaling_point: no energies");
    ScalingPoint sp;
    sp.n = n;
    sp.lambda_center = std::accumulate(lambdas.begin(), lambdas.end(), 0.0) /
                       static_cast<double>(lambdas.size());
    const double scale = local_scale(n, sp.lambda_center);
    for (double l : lambdas) sp.offsets.push_back(scale * (l - sp.lambda_center));
    sp.validate();
    return sp;
}

// ---------------------------------------------------------------------------
// gamma_K = prod_{l=0}^{K-1} l! / (K + l)!

inline GammaKResult gamma_k_integer(int k) {
    if (k < 1 || k > 20) throw DomainError("gamma_k_integer: k must be in [1, 20]");
    double log_value = 0.0;
    for (int l = 0; l < k; ++l)
        log_value += specialfn::ln_gamma(l + 1.0) - specialfn::ln_gamma(k + l + 1.0);
    return {static_cast<double>(k), log_value, GammaKMethod::IntegerProduct,
            1e-15 * (1.0 + std::abs(log_value))};
}

namespace detail {

// exp(-t)/t [K^2 - ((1 - e^{-Kt}) / (1 - e^{-t}))^2]; finite at t = 0 where it
// tends to -K^2 (1 - K).
inline double gamma_k_integrand(double k, double t) {
    if (t == 0.0) return -k * k * (1.0 - k);
    const double ratio = std::expm1(-k * t) / std::expm1(-t);
    return std::exp(-t) / t * ((k - ratio) * (k + ratio));
}

}  // namespace detail

/// log gamma_K from its integral representation by adaptive Gauss-Kronrod.
inline GammaKResult log_gamma_k_integral(double k, const EvalAccuracy& acc = {}) {
    acc.validate();
    if (!(k > 0.0 && k <= 10.0)) throw DomainError("log_gamma_k_integral: k must be in (0, 10]");
    constexpr double kJoin = 1e-6;
    const double t_max = -std::log(1e-18);
    auto f = [k](double t) { return detail::gamma_k_integrand(k, t); };

    // trapezoid on the removable-singularity panel
    const double head = 0.5 * kJoin * (f(0.0) + f(kJoin));
    double err = 0.0;
    const double body = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, kJoin, t_max, 30, 1e-13, &err);
    if (!(err <= acc.abs_tol) || !std::isfinite(body))
        throw NumericError("log_gamma_k_integral: quadrature error " + std::to_string(err) +
                           " above abs_tol");
    return {k, -(head + body), GammaKMethod::RegulatedIntegral, err + 1e-15};
}

/// log gamma_K as the alpha -> 1 limit of the Hurwitz-zeta continuation.
///
/// The bracket B(alpha) multiplying -Gamma(1 - alpha) is
///   K^2 - zeta(-a) + 2 zeta(-a, K+1) - 2K zeta(1-a, K+1)
///       - zeta(-a, 2K+1) + 2K zeta(1-a, 2K+1).
/// With Gamma(1 - alpha) = -1/(alpha-1) - gamma_E + O(alpha-1) the pole
/// coefficient is B(1), which must vanish, and the finite part is
/// B'(1) + gamma_E B(1).
inline GammaKResult log_gamma_k_hurwitz(double k) {
    if (!(k > 0.0 && k <= 10.0)) throw DomainError("log_gamma_k_hurwitz: k must be in (0, 10]");
    using specialfn::hurwitz_zeta;
    using specialfn::hurwitz_zeta_ds;
    const double a1 = k + 1.0;
    const double a2 = 2.0 * k + 1.0;

    const double b0 = k * k - hurwitz_zeta(-1.0, 1.0) + 2.0 * hurwitz_zeta(-1.0, a1) -
                      2.0 * k * hurwitz_zeta(0.0, a1) - hurwitz_zeta(-1.0, a2) +
                      2.0 * k * hurwitz_zeta(0.0, a2);
    if (std::abs(b0) > 1e-7)
        throw NumericError("log_gamma_k_hurwitz: pole coefficient " + std::to_string(b0) +
                           " did not cancel");
    const double b1 = hurwitz_zeta_ds(-1.0, 1.0) - 2.0 * hurwitz_zeta_ds(-1.0, a1) +
                      2.0 * k * hurwitz_zeta_ds(0.0, a1) + hurwitz_zeta_ds(-1.0, a2) -
                      2.0 * k * hurwitz_zeta_ds(0.0, a2);
    return {k, b1 + specialfn::euler_gamma() * b0, GammaKMethod::HurwitzLimit,
            1e-9 * (1.0 + k) + std::abs(b0)};
}

/// log gamma_K ~ K^2 (1 + gamma_E) near K = 0.
inline GammaKResult gamma_k_small_k(double k) {
    if (!(std::abs(k) <= 0.3)) throw DomainError("gamma_k_small_k: |k| must be <= 0.3");
    return {k, k * k * (1.0 + specialfn::euler_gamma()), GammaKMethod::SmallKExpansion,
            std::abs(k * k * k)};
}

/// Best available log gamma_K for any K in [0, 10].
inline GammaKResult log_gamma_k(double k) {
    if (k == std::round(k) && k >= 1.0 && k <= 20.0) return gamma_k_integer(static_cast<int>(k));
    if (k >= 0.0 && k < 1e-4) return gamma_k_small_k(k);
    return log_gamma_k_hurwitz(k);
}

/// Conjectured bounds 1/Gamma(K^2+1) <= gamma_K <= 2/(Gamma(K^2+2)(2-K)), K in [0,1].
inline std::pair<double, double> gamma_k_bounds(double k) {
    if (!(k >= 0.0 && k <= 1.0)) throw DomainError("gamma_k_bounds: k must be in [0, 1]");
    const double k2 = k * k;
    const double lower = std::exp(-specialfn::ln_gamma(k2 + 1.0));
    const double upper = 2.0 * std::exp(-specialfn::ln_gamma(k2 + 2.0)) / (2.0 - k);
    return {lower, upper};
}

// ---------------------------------------------------------------------------
// Moment predictions

namespace detail {

inline void require_bulk(int n, double lambda, const char* who) {
    if (n < 1) throw DomainError(std::string(who) + ": n must be >= 1");
    if (!(std::abs(lambda) < 2.0)) throw DomainError(std::string(who) + ": |lambda| must be < 2");
}

inline void require_large_x(double x, const char* who) {
    if (!(x > 0.0)) throw DomainError(std::string(who) + ": x must be > 0");
    if (x < 3.0) throw DomainError(std::string(who) + ": x must be >= 3 (large-x formula)");
}

/// (2m)! / (4^m m!), the Gaussian moment coefficient.
inline double gaussian_coefficient(int m) {
    return std::exp(specialfn::ln_gamma(2.0 * m + 1.0) - specialfn::ln_gamma(m + 1.0) -
                    2.0 * m * std::numbers::ln2);
}

}  // namespace detail

/// <exp(2K L(lambda))> ~ (2 pi N rho)^{K^2} gamma_K.
inline Prediction predict_normalized_moment(int n, double lambda, double k) {
    detail::require_bulk(n, lambda, "predict_normalized_moment");
    if (!(k > 0.0)) throw DomainError("predict_normalized_moment: k must be > 0");
    const double log_value = k * k * std::log(local_scale(n, lambda)) + log_gamma_k(k).log_value;
    return {std::exp(log_value), PredictionKind::Moment, {{"n", n}, {"lambda", lambda}, {"k", k}}};
}

inline Prediction predict_sine_kernel(int n, double lambda1, double lambda2) {
    const double center = 0.5 * (lambda1 + lambda2);
    detail::require_bulk(n, center, "predict_sine_kernel");
    const double scale = local_scale(n, center);
    const double x = 0.5 * scale * (lambda1 - lambda2);
    const double sinc = (std::abs(x) < 1e-8) ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return {scale * sinc,
            PredictionKind::SineKernel,
            {{"n", n}, {"lambda1", lambda1}, {"lambda2", lambda2}, {"x", x}}};
}

/// <L^order>: (2m)!/(4^m m!) (ln 2 pi N rho)^m for order 2m, zero for odd order.
inline Prediction predict_log_moment(int n, double lambda, int order) {
    detail::require_bulk(n, lambda, "predict_log_moment");
    if (order < 0) throw DomainError("predict_log_moment: order must be >= 0");
    std::map<std::string, double> inputs{{"n", n}, {"lambda", lambda}, {"order", order}};
    if (order % 2 == 1) return {0.0, PredictionKind::LogMomentOdd, std::move(inputs)};
    const int m = order / 2;
    const double value =
        detail::gaussian_coefficient(m) * std::pow(std::log(local_scale(n, lambda)), m);
    return {value, PredictionKind::LogMomentEven, std::move(inputs)};
}

/// Leading large-x two-point moment (2 pi N rho)^{(l1+l2)^2} / x^{(l1+l2)^2/2}.
inline Prediction predict_two_point_moment(int l1, int l2, double x, int n, double lambda) {
    detail::require_bulk(n, lambda, "predict_two_point_moment");
    detail::require_large_x(x, "predict_two_point_moment");
    const double s2 = static_cast<double>(l1 + l2) * (l1 + l2);
    const double log_value = s2 * std::log(local_scale(n, lambda)) - 0.5 * s2 * std::log(x);
    Prediction p{std::exp(log_value),
                 PredictionKind::TwoPointMoment,
                 {{"l1", l1}, {"l2", l2}, {"x", x}, {"n", n}, {"lambda", lambda}}};
    p.low_x_warning = x < 10.0;
    return p;
}

inline Prediction predict_two_point_log_moment(int p1, int p2, double x, int n, double lambda) {
    detail::require_bulk(n, lambda, "predict_two_point_log_moment");
    detail::require_large_x(x, "predict_two_point_log_moment");
    if (p1 < 0 || p2 < 0) throw DomainError("predict_two_point_log_moment: powers must be >= 0");
    Prediction out{0.0,
                   PredictionKind::TwoPointLogMoment,
                   {{"p1", p1}, {"p2", p2}, {"x", x}, {"n", n}, {"lambda", lambda}}};
    out.low_x_warning = x < 10.0;
    if ((p1 + p2) % 2 == 1) return out;
    const int p = (p1 + p2) / 2;
    const double log_arg = std::log(local_scale(n, lambda) / std::sqrt(2.0 * x));
    out.value = detail::gaussian_coefficient(p) * std::pow(log_arg, p);
    return out;
}

/// 2 (2p)!/(4^p p!) [(ln S)^p - (ln(S / sqrt(2x)))^p] with S = 2 pi N rho,
/// unchecked so that limits outside the large-x range can be probed.
inline double log_difference_moment_formula(int p, double log_scale, double x) {
    const double shifted = log_scale - 0.5 * std::log(2.0 * x);
    return 2.0 * detail::gaussian_coefficient(p) *
           (std::pow(log_scale, p) - std::pow(shifted, p));
}

inline Prediction predict_log_difference_moment(int p, double x, int n, double lambda) {
    detail::require_bulk(n, lambda, "predict_log_difference_moment");
    detail::require_large_x(x, "predict_log_difference_moment");
    if (p < 1) throw DomainError("predict_log_difference_moment: p must be >= 1");
    Prediction out{
        log_difference_moment_formula(p, std::log(local_scale(n, lambda)), x),
        PredictionKind::LogDifferenceMoment,
        {{"p", p}, {"x", x}, {"n", n}, {"lambda", lambda}}};
    out.low_x_warning = x < 10.0;
    return out;
}

// ---------------------------------------------------------------------------
// Resolvents. sqrt(z^2 - 4) is taken as sqrt(z - 2) sqrt(z + 2): cut exactly
// on [-2, 2], positive at large positive z.

inline cplx branch_sqrt(cplx z) {
    if (z.imag() == 0.0 && std::abs(z.real()) <= 2.0)
        throw DomainError("green_function: z lies on the cut [-2, 2]");
    return std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
}

/// G(z) = (z - sqrt(z^2 - 4)) / 2, evaluated as 2 / (z + sqrt(z^2 - 4)).
inline cplx green_function(cplx z) { return 2.0 / (z + branch_sqrt(z)); }

/// u(z) = (z + sqrt(z^2 - 4)) / 2 on the same branch.
inline cplx u_map(cplx z) { return 0.5 * (z + branch_sqrt(z)); }

/// N^2 G_2c(z1, z2) = [ (z1 z2 - 4) / sqrt((z1^2-4)(z2^2-4)) - 1 ] / (2 (z1 - z2)^2).
inline cplx g2_connected(cplx z1, cplx z2) {
    if (std::abs(z1 - z2) < 1e-12 * (1.0 + std::abs(z1)))
        throw PoleError("g2_connected: coincident points");
    const cplx d = z1 - z2;
    return ((z1 * z2 - 4.0) / (branch_sqrt(z1) * branch_sqrt(z2)) - 1.0) / (2.0 * d * d);
}

/// Smoothed near-coincidence connected density -1 / (2 pi^2 N^2 (l1 - l2)^2).
inline double smoothed_rho2c(double lambda1, double lambda2, int n) {
    if (lambda1 == lambda2) throw PoleError("smoothed_rho2c: coincident points");
    if (!(std::abs(lambda1) < 2.0 && std::abs(lambda2) < 2.0))
        throw DomainError("smoothed_rho2c: energies must lie inside (-2, 2)");
    const double d = lambda1 - lambda2;
    const double nn = static_cast<double>(n);
    return -1.0 / (2.0 * std::numbers::pi * std::numbers::pi * nn * nn * d * d);
}

/// rho_2c from the four boundary values of G_2c at distance eps from the cut.
inline double rho2c_from_g2(double lambda1, double lambda2, int n, double eps) {
    const cplx up1{lambda1, eps}, dn1{lambda1, -eps}, up2{lambda2, eps}, dn2{lambda2, -eps};
    const cplx bracket =
        g2_connected(up1, up2) + g2_connected(dn1, dn2) - g2_connected(up1, dn2) -
        g2_connected(dn1, up2);
    const double nn = static_cast<double>(n);
    return -bracket.real() / (4.0 * std::numbers::pi * std::numbers::pi * nn * nn);
}

/// Prediction wrapper so that G_2c appears in reports like the other formulas.
inline Prediction predict_g2_connected(cplx z1, cplx z2) {
    return {g2_connected(z1, z2).real(),
            PredictionKind::G2Connected,
            {{"z1_re", z1.real()}, {"z1_im", z1.imag()}, {"z2_re", z2.real()}, {"z2_im", z2.imag()}}};
}

}  // namespace rmtlab::analytic
