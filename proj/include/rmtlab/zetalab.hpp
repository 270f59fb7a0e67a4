#pragma once

// Number-theory side: the arithmetic factor a_K, tabulated zeta(1/2 + it)
// with a continuously unwound argument, and critical-line moment integrals.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "rmtlab/analytic.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/specialfn.hpp"
#include "rmtlab/stats.hpp"

namespace rmtlab::zetalab {

using cplx = std::complex<double>;
using specialfn::EvalAccuracy;

// ---------------------------------------------------------------------------
// Primes and a_K

/// Sieve of Eratosthenes over odd numbers.
inline std::vector<std::int64_t> prime_sieve(std::int64_t limit) {
    if (limit < 2) throw DomainError("prime_sieve: limit must be >= 2");
    std::vector<std::int64_t> primes{2};
    const auto half = static_cast<std::size_t>((limit - 1) / 2);  // odd numbers 3..limit
    std::vector<bool> composite(half + 1, false);
    for (std::size_t i = 1; i <= half; ++i) {
        if (composite[i]) continue;
        const auto p = static_cast<std::int64_t>(2 * i + 1);
        primes.push_back(p);
        for (auto q = p * p; q <= limit; q += 2 * p) composite[static_cast<std::size_t>(q / 2)] = true;
    }
    return primes;
}

struct AkResult {
    double k = 0.0;
    double value = 1.0;
    std::int64_t prime_cutoff = 0;
    double tail_bound = 0.0;  // estimated |a_K(infinity) - a_K(cutoff)|
};

namespace detail {

/// ln[(1 - 1/p)^{K^2} sum_m (K(K+1)...(K+m-1)/m!)^2 p^{-m}].
inline double ak_log_factor(double k, double p) {
    const double x = 1.0 / p;
    double c = 1.0;
    double x_pow = 1.0;
    double excess = 0.0;  // the m-sum minus its leading 1
    for (int m = 1; m < 100000; ++m) {
        c *= (k + m - 1.0) / m;
        x_pow *= x;
        const double term = c * c * x_pow;
        excess += term;
        if (term < 1e-16 * (1.0 + excess)) break;
    }
    return k * k * std::log1p(-x) + std::log1p(excess);
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

/// a_K = prod_{p <= cutoff} (1 - 1/p)^{K^2} sum_m (Gamma(K+m)/(m! Gamma(K)))^2 p^{-m}.
///
/// The omitted tail uses ln f(p) ~ C/p^2, so sum_{p > P} ln f(p) ~ |ln f(q)| q / ln q
/// with q the first omitted prime.
inline AkResult ak_coefficient(double k, std::int64_t prime_cutoff, int workers = 1) {
    if (!(k > 0.0)) throw DomainError("ak_coefficient: k must be > 0");
    if (prime_cutoff < 100) throw DomainError("ak_coefficient: prime_cutoff must be >= 100");
    const auto primes = prime_sieve(prime_cutoff);

    constexpr std::size_t kChunk = 4096;
    const std::size_t chunks = (primes.size() + kChunk - 1) / kChunk;
    std::vector<double> chunk_sums(chunks);
    parallel_for(chunks, workers, [&](std::size_t c) {
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(primes.size(), begin + kChunk);
        std::vector<double> logs(end - begin);
        for (std::size_t i = begin; i < end; ++i)
            logs[i - begin] = detail::ak_log_factor(k, static_cast<double>(primes[i]));
        chunk_sums[c] = ordered_sum(logs);
    });
    const double log_value = ordered_sum(chunk_sums);

    std::int64_t q = prime_cutoff + 1;
    while (!detail::is_prime(q)) ++q;
    const double dq = static_cast<double>(q);
    const double tail_log = std::abs(detail::ak_log_factor(k, dq)) * dq / std::log(dq);

    AkResult out;
    out.k = k;
    out.value = std::exp(log_value);
    out.prime_cutoff = prime_cutoff;
    out.tail_bound = out.value * std::expm1(tail_log);
    return out;
}

// ---------------------------------------------------------------------------
// zeta on a grid of the critical line

struct ZetaGrid {
    double t0 = 0.0;
    double t1 = 0.0;
    double step = 0.0;
    std::vector<double> abs_zeta;
    std::vector<double> arg_zeta_unwound;
    std::vector<std::size_t> unwinding_failures;  // interval i = [t_i, t_{i+1}] left unresolved

    [[nodiscard]] std::size_t size() const { return abs_zeta.size(); }
    [[nodiscard]] double t_at(std::size_t i) const { return t0 + step * static_cast<double>(i); }

    void validate() const {
        if (!(t0 >= 0.0) || !(t1 > t0) || !(step > 0.0)) throw DomainError("ZetaGrid: bad range");
        if (abs_zeta.size() < 2 || arg_zeta_unwound.size() != abs_zeta.size())
            throw DomainError("ZetaGrid: node arrays inconsistent");
    }
};

/// A grid spacing of about a tenth of the local mean zero spacing 2 pi / ln(t / 2 pi).
inline double default_grid_step(double t1) {
    return 0.1 / std::max(1.0, std::log(t1 / (2.0 * std::numbers::pi)));
}

namespace detail {

inline constexpr int kMaxBisectionDepth = 20;

struct Node {
    double t;
    cplx zeta;
    double z;
    double theta;
};

inline Node eval_node(double t, const EvalAccuracy& acc) {
    const auto v = specialfn::zeta_critical_line(t, acc);
    return {t, v.zeta(), v.z_value, v.theta};
}

/// Principal-branch change of arg zeta between two nodes. On the critical
/// line zeta = e^{-i theta} Z with Z real, so a node's phase is -theta (plus pi
/// where Z < 0) exactly; the complex value itself loses its phase next to a zero.
inline double principal_increment(const Node& a, const Node& b) {
    const double flips = static_cast<double>(b.z < 0.0) - static_cast<double>(a.z < 0.0);
    return std::remainder(-(b.theta - a.theta) + std::numbers::pi * flips, 2.0 * std::numbers::pi);
}

/// Change of arg zeta from a to b along the critical line. Increments larger
/// than pi/2 are bisected; an interval of depth kMaxBisectionDepth across
/// which Z changes sign holds a zero, where S(t) steps up by 1.
inline double arg_increment(const Node& a, const Node& b, const EvalAccuracy& acc, int depth,
                            bool& failed) {
    const double delta = principal_increment(a, b);
    if (std::abs(delta) <= 0.5 * std::numbers::pi) return delta;
    if (depth >= kMaxBisectionDepth) {
        if ((a.z < 0.0) != (b.z < 0.0)) return std::numbers::pi - (b.theta - a.theta);
        failed = true;
        return delta;
    }
    const Node mid = eval_node(0.5 * (a.t + b.t), acc);
    return arg_increment(a, mid, acc, depth + 1, failed) + arg_increment(mid, b, acc, depth + 1, failed);
}

/// arg zeta(1/2 + i t0), unwound from t = 0+ where it equals -pi (the path
/// from s = 2 passes above the pole at s = 1).
inline double arg_at(double t0, double step, const EvalAccuracy& acc) {
    double arg = -std::numbers::pi;
    if (t0 <= 0.0) return arg;
    const auto count = static_cast<std::size_t>(std::ceil(t0 / step));
    const double h = t0 / static_cast<double>(count);
    Node prev = eval_node(0.0, acc);
    for (std::size_t i = 1; i <= count; ++i) {
        const Node next = eval_node(h * static_cast<double>(i), acc);
        bool failed = false;
        arg += arg_increment(prev, next, acc, 0, failed);
        prev = next;
    }
    return arg;
}

}  // namespace detail

/// |zeta(1/2 + it)| and the unwound arg zeta (S(t) convention, arg = pi S(t))
/// on an equispaced grid; the step is shrunk so the grid ends exactly at t1.
inline ZetaGrid build_zeta_grid(double t0, double t1, double step, const EvalAccuracy& acc = {},
                                int workers = 1) {
    acc.validate();
    if (!(t0 >= 0.0) || !(t1 > t0)) throw DomainError("build_zeta_grid: need 0 <= t0 < t1");
    if (!(step > 0.0) || step > t1 - t0) throw DomainError("build_zeta_grid: need 0 < step <= t1 - t0");
    const auto intervals = static_cast<std::size_t>(std::ceil((t1 - t0) / step - 1e-9));

    ZetaGrid grid;
    grid.t0 = t0;
    grid.t1 = t1;
    grid.step = (t1 - t0) / static_cast<double>(intervals);
    const std::size_t count = intervals + 1;

    std::vector<detail::Node> nodes(count);
    parallel_for(count, workers, [&](std::size_t i) {
        const double t = i == intervals ? t1 : grid.t_at(i);
        nodes[i] = detail::eval_node(t, acc);
    });

    grid.abs_zeta.resize(count);
    grid.arg_zeta_unwound.resize(count);
    double arg = detail::arg_at(t0, step, acc);
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) {
            bool failed = false;
            arg += detail::arg_increment(nodes[i - 1], nodes[i], acc, 0, failed);
            if (failed) grid.unwinding_failures.push_back(i - 1);
        }
        grid.abs_zeta[i] = std::abs(nodes[i].zeta);
        grid.arg_zeta_unwound[i] = arg;
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Persistence: "ZGRD", u32 version, f64 t0 t1 step, u64 count, f64[count]
// |zeta|, f64[count] arg, u64 failures, u64[failures]. Little-endian hosts.

inline constexpr std::uint32_t kGridFormatVersion = 1;

namespace detail {

template <class T>
void write_raw(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_raw(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

}  // namespace detail

inline void save_grid(const ZetaGrid& grid, const std::filesystem::path& path) {
    static_assert(std::endian::native == std::endian::little, "cache format is little-endian");
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("save_grid: cannot open " + path.string());
    os.write("ZGRD", 4);
    detail::write_raw(os, kGridFormatVersion);
    detail::write_raw(os, grid.t0);
    detail::write_raw(os, grid.t1);
    detail::write_raw(os, grid.step);
    detail::write_raw(os, static_cast<std::uint64_t>(grid.size()));
    os.write(reinterpret_cast<const char*>(grid.abs_zeta.data()),
             static_cast<std::streamsize>(grid.size() * sizeof(double)));
    os.write(reinterpret_cast<const char*>(grid.arg_zeta_unwound.data()),
             static_cast<std::streamsize>(grid.size() * sizeof(double)));
    detail::write_raw(os, static_cast<std::uint64_t>(grid.unwinding_failures.size()));
    for (std::size_t f : grid.unwinding_failures) detail::write_raw(os, static_cast<std::uint64_t>(f));
    if (!os) throw std::runtime_error("save_grid: write failed for " + path.string());
}

inline ZetaGrid load_grid(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_grid: cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "ZGRD", 4) != 0)
        throw std::runtime_error("load_grid: bad magic in " + path.string());
    if (detail::read_raw<std::uint32_t>(is) != kGridFormatVersion)
        throw std::runtime_error("load_grid: unsupported version in " + path.string());
    ZetaGrid grid;
    grid.t0 = detail::read_raw<double>(is);
    grid.t1 = detail::read_raw<double>(is);
    grid.step = detail::read_raw<double>(is);
    const auto count = detail::read_raw<std::uint64_t>(is);
    if (!is || count > (std::uint64_t{1} << 32))
        throw std::runtime_error("load_grid: corrupt header in " + path.string());
    grid.abs_zeta.resize(count);
    grid.arg_zeta_unwound.resize(count);
    is.read(reinterpret_cast<char*>(grid.abs_zeta.data()), static_cast<std::streamsize>(count * sizeof(double)));
    is.read(reinterpret_cast<char*>(grid.arg_zeta_unwound.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    const auto failures = detail::read_raw<std::uint64_t>(is);
    if (!is || failures > count) throw std::runtime_error("load_grid: truncated file " + path.string());
    for (std::uint64_t i = 0; i < failures; ++i)
        grid.unwinding_failures.push_back(static_cast<std::size_t>(detail::read_raw<std::uint64_t>(is)));
    if (!is) throw std::runtime_error("load_grid: truncated file " + path.string());
    grid.validate();
    return grid;
}

/// build_zeta_grid backed by a cache file in $RMT_CACHE_DIR (no caching when unset).
inline ZetaGrid cached_zeta_grid(double t0, double t1, double step, const EvalAccuracy& acc = {},
                                 int workers = 1) {
    const char* dir = std::getenv("RMT_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return build_zeta_grid(t0, t1, step, acc, workers);
    std::ostringstream name;
    name << "zeta_" << std::hex << std::bit_cast<std::uint64_t>(t0) << '_'
         << std::bit_cast<std::uint64_t>(t1) << '_' << std::bit_cast<std::uint64_t>(step) << '_'
         << std::bit_cast<std::uint64_t>(acc.abs_tol) << ".zgrd";
    const std::filesystem::path path = std::filesystem::path(dir) / name.str();
    if (std::filesystem::exists(path)) {
        try {
            return load_grid(path);
        } catch (const std::runtime_error&) {
            // unreadable cache: rebuild and overwrite
        }
    }
    auto grid = build_zeta_grid(t0, t1, step, acc, workers);
    std::filesystem::create_directories(dir);
    save_grid(grid, path);
    return grid;
}

// ---------------------------------------------------------------------------
// Moments over the grid

namespace detail {

inline constexpr std::size_t kMomentBlocks = 20;

/// Trapezoidal mean of f over the included nodes; the standard error comes
/// from kMomentBlocks equal sub-intervals.
inline MomentEstimate grid_mean(const ZetaGrid& grid, std::span<const double> f,
                                std::span<const char> include, std::string tag) {
    grid.validate();
    const std::size_t n = grid.size();
    std::vector<double> w(n), wf(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double base = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        w[i] = include[i] ? base : 0.0;
        wf[i] = include[i] ? base * f[i] : 0.0;
    }
    MomentEstimate est;
    est.estimator = std::move(tag);
    est.count = n;
    est.excluded = static_cast<std::size_t>(std::count(include.begin(), include.end(), char{0}));
    const double total_w = ordered_sum(w);
    if (!(total_w > 0.0)) throw DomainError("zeta moment: every node excluded");
    est.mean = ordered_sum(wf) / total_w;

    const std::size_t intervals = n - 1;
    const std::size_t blocks = std::min(kMomentBlocks, intervals);
    std::vector<double> block_means;
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t lo = intervals * b / blocks;
        const std::size_t hi = intervals * (b + 1) / blocks;
        double sw = 0.0, swf = 0.0;
        for (std::size_t i = lo; i <= hi; ++i) {
            if (!include[i]) continue;
            const double base = (i == lo || i == hi) ? 0.5 : 1.0;
            sw += base;
            swf += base * f[i];
        }
        if (sw > 0.0) block_means.push_back(swf / sw);
    }
    est.std_err = block_means.size() > 1
                      ? std::sqrt(sample_variance(block_means) / static_cast<double>(block_means.size()))
                      : 0.0;
    return est;
}

}  // namespace detail

inline constexpr double kNearZeroCutoff = 1e-12;

/// (1/(t1 - t0)) int |zeta(1/2 + it)|^{2k} dt.
inline MomentEstimate zeta_abs_moment(const ZetaGrid& grid, double k) {
    if (!(k >= 0.0)) throw DomainError("zeta_abs_moment: k must be >= 0");
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(grid.abs_zeta[i], 2.0 * k);
    const std::vector<char> all(grid.size(), 1);
    return detail::grid_mean(grid, f, all, "zeta_abs_moment");
}

/// Mean of (ln|zeta|)^power over nodes with |zeta| >= 1e-12; `excluded` counts the rest.
inline MomentEstimate zeta_log_abs_power(const ZetaGrid& grid, int power) {
    if (power < 0) throw DomainError("zeta_log_abs_power: power must be >= 0");
    std::vector<double> f(grid.size());
    std::vector<char> include(grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        include[i] = grid.abs_zeta[i] >= kNearZeroCutoff;
        f[i] = include[i] ? std::pow(std::log(grid.abs_zeta[i]), power) : 0.0;
    }
    return detail::grid_mean(grid, f, include, "zeta_log_moment");
}

inline MomentEstimate zeta_log_moment(const ZetaGrid& grid, int m) {
    if (m < 0) throw DomainError("zeta_log_moment: m must be >= 0");
    return zeta_log_abs_power(grid, 2 * m);
}

inline MomentEstimate zeta_arg_power(const ZetaGrid& grid, int power) {
    if (power < 0) throw DomainError("zeta_arg_power: power must be >= 0");
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(grid.arg_zeta_unwound[i], power);
    const std::vector<char> all(grid.size(), 1);
    return detail::grid_mean(grid, f, all, "zeta_arg_moment");
}

inline MomentEstimate zeta_arg_moment(const ZetaGrid& grid, int m) {
    if (m < 0) throw DomainError("zeta_arg_moment: m must be >= 0");
    return zeta_arg_power(grid, 2 * m);
}

/// ln|zeta| at the nodes kept by zeta_log_moment (for normality diagnostics).
inline std::vector<double> log_abs_values(const ZetaGrid& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double a : grid.abs_zeta)
        if (a >= kNearZeroCutoff) out.push_back(std::log(a));
    return out;
}

// ---------------------------------------------------------------------------
// Predictions

/// gamma_K a_K (ln T)^{K^2}.
inline double predict_zeta_abs_moment(double k, double t, std::int64_t prime_cutoff = 1'000'000) {
    if (!(t > 1.0)) throw DomainError("predict_zeta_abs_moment: T must be > 1");
    const double gamma = analytic::log_gamma_k(k).log_value;
    return std::exp(gamma + k * k * std::log(std::log(t))) * ak_coefficient(k, prime_cutoff).value;
}

/// (2m)!/(4^m m!) (ln ln T)^m, the random-matrix log-moment with ln(2 pi N rho) -> ln ln T.
inline double predict_zeta_log_moment(int m, double t) {
    if (m < 0) throw DomainError("predict_zeta_log_moment: m must be >= 0");
    if (!(t > std::numbers::e)) throw DomainError("predict_zeta_log_moment: T must exceed e");
    return analytic::detail::gaussian_coefficient(m) * std::pow(std::log(std::log(t)), m);
}

/// A(lambda) with xi(1/2 + i lambda) = A(lambda) Z(lambda), for
/// xi(s) = s(s - 1)/2 pi^{-s/2} Gamma(s/2) zeta(s):
///   A(lambda) = pi^{-1/4} exp(Re lnGamma(1/4 + i lambda/2)) (-lambda^2/2 - 1/8).
inline double xi_prefactor(double lambda) {
    const double re_lg = specialfn::ln_gamma_complex(cplx{0.25, 0.5 * lambda}).real();
    return std::exp(re_lg - 0.25 * std::log(std::numbers::pi)) * (-0.5 * lambda * lambda - 0.125);
}

}  // namespace rmtlab::zetalab
