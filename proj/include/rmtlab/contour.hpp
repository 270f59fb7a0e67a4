#pragma once

// Direct quadrature of the K-fold contour integral
//
//   (1/K!) oint prod_a du_a/(2 pi) exp(-i sum u_a) Delta^2(u) / prod_a prod_l (u_a - x_l)
//
// on circles |u_a| = R enclosing every x_l. The integrand is analytic away
// from the 2K poles, so the equal-node trapezoid rule on a circle converges
// geometrically in the node count.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "rmtlab/analytic.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/stats.hpp"

namespace rmtlab::contour {

using cplx = std::complex<double>;
using analytic::ScalingPoint;

inline constexpr int kMaxK = 4;
inline constexpr std::uint64_t kMaxTuples = std::uint64_t{1} << 26;

struct ContourSpec {
    int k = 1;
    double radius = 1.0;
    int nodes = 64;
    int workers = 1;
};

struct CorrelatorValue {
    double value = 0.0;
    double quadrature_err = 0.0;
};

namespace detail {

inline void check_spec(const std::vector<double>& offsets, const ContourSpec& cs) {
    if (cs.k < 1 || cs.k > kMaxK)
        throw DomainError("contour: k must be in [1, " + std::to_string(kMaxK) + "]");
    if (offsets.size() != static_cast<std::size_t>(2 * cs.k))
        throw DomainError("contour: need exactly 2k offsets");
    if (cs.nodes < 64 || (cs.nodes & (cs.nodes - 1)) != 0)
        throw DomainError("contour: nodes must be a power of two >= 64");
    std::uint64_t tuples = 1;
    for (int a = 0; a < cs.k; ++a) tuples *= static_cast<std::uint64_t>(cs.nodes);
    if (tuples > kMaxTuples) throw DomainError("contour: nodes^k exceeds 2^26 evaluations");
    double max_x = 0.0;
    for (double x : offsets) max_x = std::max(max_x, std::abs(x));
    if (!(cs.radius > 0.0)) throw DomainError("contour: radius must be > 0");
    if (std::abs(cs.radius - max_x) < 1e-9) throw PoleError("contour: pole on the contour");
    if (cs.radius < max_x) throw DomainError("contour: radius must enclose every offset");
}

// Complex value of the integral on |u| = radius (before taking the real part).
inline cplx integrate_on_circle(const std::vector<double>& offsets, int k, double radius,
                                int nodes, int workers) {
    const std::size_t m = static_cast<std::size_t>(nodes);
    std::vector<cplx> u(m), weight(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / nodes;
        u[j] = std::polar(radius, phi);
        // du/(2 pi) = i u dphi/(2 pi); the factor i is applied once per variable below
        cplx w = u[j] * std::exp(cplx{0.0, -1.0} * u[j]);
        for (double x : offsets) w /= (u[j] - x);
        weight[j] = w;
    }

    // Outer index in parallel; the inner indices enumerated odometer-style.
    std::vector<cplx> partial(m);
    parallel_for(m, workers, [&](std::size_t first) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
        idx[0] = first;
        cplx acc{0.0, 0.0};
        while (true) {
            cplx term = 1.0;
            for (int a = 0; a < k; ++a) term *= weight[idx[static_cast<std::size_t>(a)]];
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b) {
                    const cplx d = u[idx[static_cast<std::size_t>(b)]] - u[idx[static_cast<std::size_t>(a)]];
                    term *= d * d;
                }
            acc += term;
            int pos = k - 1;
            while (pos >= 1 && ++idx[static_cast<std::size_t>(pos)] == m) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
        partial[first] = acc;
    });

    std::vector<double> re(m), im(m);
    for (std::size_t j = 0; j < m; ++j) {
        re[j] = partial[j].real();
        im[j] = partial[j].imag();
    }
    cplx total{ordered_sum(re), ordered_sum(im)};

    double inv_count = 1.0;
    double factorial = 1.0;
    cplx i_power = 1.0;
    for (int a = 1; a <= k; ++a) {
        inv_count /= nodes;
        factorial *= a;
        i_power *= cplx{0.0, 1.0};
    }
    return total * i_power * inv_count / factorial;
}

}  // namespace detail

/// A contour that encloses the offsets with a comfortable margin.
inline ContourSpec default_contour(const std::vector<double>& offsets, int k) {
    double max_x = 0.0;
    for (double x : offsets) max_x = std::max(max_x, std::abs(x));
    ContourSpec cs;
    cs.k = k;
    cs.radius = max_x > 0.0 ? 1.2 * max_x + 0.5 : 1.0;
    cs.nodes = k >= 4 ? 64 : (k == 3 ? 128 : 256);
    return cs;
}

/// The dimensionless universal factor of the scaled correlator (the K-fold
/// integral including 1/K!). quadrature_err compares radius R with 2R.
inline CorrelatorValue eval_f2k_scaled(const ScalingPoint& sp, const ContourSpec& cs) {
    sp.validate();
    detail::check_spec(sp.offsets, cs);
    const cplx at_r = detail::integrate_on_circle(sp.offsets, cs.k, cs.radius, cs.nodes, cs.workers);
    const cplx at_2r =
        detail::integrate_on_circle(sp.offsets, cs.k, 2.0 * cs.radius, cs.nodes, cs.workers);
    return {at_r.real(), std::abs(at_r - at_2r) + std::abs(at_r.imag())};
}

inline CorrelatorValue eval_f2k_scaled(const std::vector<double>& offsets, const ContourSpec& cs) {
    ScalingPoint sp;
    sp.offsets = offsets;
    return eval_f2k_scaled(sp, cs);
}

/// All offsets zero; equals gamma_k.
inline CorrelatorValue eval_coincident(int k, int workers = 1) {
    if (k < 1 || k > kMaxK) throw DomainError("eval_coincident: k must be in [1, 4]");
    ContourSpec cs;
    cs.k = k;
    cs.radius = 1.0;
    cs.nodes = 64;
    cs.workers = workers;
    return eval_f2k_scaled(std::vector<double>(static_cast<std::size_t>(2 * k), 0.0), cs);
}

/// Residue evaluation for k = 1 with offsets (x1, x2); used to cross-check
/// the quadrature. Requires x1 != x2.
inline double residue_k1(double x1, double x2) {
    if (x1 == x2) throw PoleError("residue_k1: double pole");
    // i * sum of residues of exp(-iu)/((u - x1)(u - x2))
    const cplx r = std::exp(cplx{0.0, -x1}) / (x1 - x2) + std::exp(cplx{0.0, -x2}) / (x2 - x1);
    return (cplx{0.0, 1.0} * r).real();
}

/// (1/(2x^2)) (1 - sin^2 x / x^2), the K = 2 two-cluster integral without 1/2!.
inline double two_point_k2_closed_form(double x) {
    if (x == 0.0) return 1.0 / 6.0;
    if (std::abs(x) < 1e-3) {
        const double x2 = x * x;
        // 1 - sinc^2 x = x^2/3 - 2x^4/45 + x^6/315 - ...
        return 0.5 * (1.0 / 3.0 - x2 * (2.0 / 45.0 - x2 / 315.0));
    }
    const double s = std::sin(x) / x;
    return (1.0 - s * s) / (2.0 * x * x);
}

}  // namespace rmtlab::contour
