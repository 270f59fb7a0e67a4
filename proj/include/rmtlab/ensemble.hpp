#pragma once

// Random-matrix experiments: Gaussian and quartic unitary-invariant
// ensembles, eigenvalue samplers, and Monte Carlo estimators of moments and
// log-moments of |det(lambda - X)|.
//
// Randomness: every GUE sample index and every Markov chain owns its own
// Philox stream keyed by (seed, stream id), and every reduction is an ordered
// fold over per-sample results. Output never depends on the worker count.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "rmtlab/analytic.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/random.hpp"
#include "rmtlab/stats.hpp"

namespace rmtlab::ensemble {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Potentials and their equilibrium measures

enum class PotentialKind { Gaussian, Quartic };

/// V(x) = x^2/2 + g x^4 (g = 0 for the Gaussian ensemble).
struct Potential {
    PotentialKind kind = PotentialKind::Gaussian;
    double g = 0.0;

    static Potential gaussian() { return {}; }
    static Potential quartic(double g) {
        if (!(g >= 0.0)) throw DomainError("Potential::quartic: g must be >= 0");
        return {PotentialKind::Quartic, g};
    }

    [[nodiscard]] double operator()(double x) const {
        const double x2 = x * x;
        return 0.5 * x2 + (kind == PotentialKind::Quartic ? g * x2 * x2 : 0.0);
    }
    [[nodiscard]] double derivative(double x) const {
        return x + (kind == PotentialKind::Quartic ? 4.0 * g * x * x * x : 0.0);
    }
    [[nodiscard]] std::string name() const {
        return kind == PotentialKind::Gaussian ? "gaussian" : "quartic(g=" + std::to_string(g) + ")";
    }
};

/// One-cut equilibrium density for exp(-N tr V):
///   rho(x) = (1/pi)(1/2 + 4 g a^2 + 2 g x^2) sqrt(4 a^2 - x^2),  12 g a^4 + a^2 = 1.
class EquilibriumMeasure {
public:
    explicit EquilibriumMeasure(const Potential& v) : v_(v) {
        const double g = v.kind == PotentialKind::Quartic ? v.g : 0.0;
        g_ = g;
        a2_ = g > 0.0 ? (std::sqrt(1.0 + 48.0 * g) - 1.0) / (24.0 * g) : 1.0;
        log_constant_ = g > 0.0 ? log_constant_numeric() : 1.0;
    }

    [[nodiscard]] double edge() const { return 2.0 * std::sqrt(a2_); }
    [[nodiscard]] double half_width_squared() const { return a2_; }

    [[nodiscard]] double density(double x) const {
        const double r2 = 4.0 * a2_ - x * x;
        if (r2 <= 0.0) return 0.0;
        return (0.5 + 4.0 * g_ * a2_ + 2.0 * g_ * x * x) * std::sqrt(r2) / std::numbers::pi;
    }

    /// The constant l with 2 int rho(mu) ln|x - mu| dmu - V(x) = -l on the
    /// support; l = 1 for the Gaussian.
    [[nodiscard]] double log_constant() const { return log_constant_; }

    /// l evaluated at x = 0 by tanh-sinh quadrature (exposed for tests).
    [[nodiscard]] double log_constant_numeric() const {
        boost::math::quadrature::tanh_sinh<double> integrator;
        auto f = [this](double mu) { return density(mu) * std::log(mu); };
        const double half = integrator.integrate(f, 0.0, edge());
        return -4.0 * half + v_(0.0);
    }

private:
    Potential v_;
    double g_ = 0.0;
    double a2_ = 1.0;
    double log_constant_ = 1.0;
};

// ---------------------------------------------------------------------------
// Configuration and samples

struct EnsembleConfig {
    int n = 100;            // N in the weight exp(-N tr V)
    int matrix_size = 0;    // M; 0 means M = N
    Potential potential;
    std::uint64_t seed = 1;
    int samples = 1000;
    int workers = 1;

    [[nodiscard]] int size() const { return matrix_size > 0 ? matrix_size : n; }

    /// Use M = N - round(k).
    EnsembleConfig& shift_size_by(double k) {
        matrix_size = n - static_cast<int>(std::lround(k));
        return *this;
    }

    void validate() const {
        if (n < 2) throw DomainError("EnsembleConfig: n must be >= 2");
        if (samples < 1) throw DomainError("EnsembleConfig: samples must be >= 1");
        if (size() < 1 || size() > n) throw DomainError("EnsembleConfig: matrix_size must be in [1, n]");
    }
};

struct SpectrumSample {
    std::vector<double> eigenvalues;  // ascending
    std::uint64_t stream = 0;         // RNG stream that produced it
};

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal
/// and off-diagonal, ascending.
inline std::vector<double> eigs_sym_tridiag(std::span<const double> diag,
                                            std::span<const double> offdiag) {
    if (diag.empty()) throw DomainError("eigs_sym_tridiag: empty diagonal");
    if (offdiag.size() + 1 != diag.size())
        throw DomainError("eigs_sym_tridiag: offdiag must have length diag - 1");
    if (diag.size() == 1) return {diag[0]};
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), static_cast<Eigen::Index>(diag.size()));
    Eigen::VectorXd e =
        Eigen::Map<const Eigen::VectorXd>(offdiag.data(), static_cast<Eigen::Index>(offdiag.size()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigs_sym_tridiag: QL iteration did not converge");
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

/// Eigenvalues of a dense Hermitian matrix: Householder reduction to real
/// tridiagonal form followed by eigs_sym_tridiag.
inline std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols() || h.rows() == 0)
        throw DomainError("hermitian_eigenvalues: matrix must be square and non-empty");
    if (h.rows() == 1) return {h(0, 0).real()};
    Eigen::Tridiagonalization<Eigen::MatrixXcd> tri(h);
    const Eigen::VectorXd d = tri.diagonal();
    const Eigen::VectorXd e = tri.subDiagonal();
    return eigs_sym_tridiag(std::span<const double>(d.data(), static_cast<std::size_t>(d.size())),
                            std::span<const double>(e.data(), static_cast<std::size_t>(e.size())));
}

/// Dense GUE matrix with weight exp(-(N/2) tr X^2): diagonal N(0, 1/N),
/// off-diagonal complex with E|X_ij|^2 = 1/N.
inline Eigen::MatrixXcd sample_gue_matrix(const EnsembleConfig& cfg, std::uint64_t index) {
    cfg.validate();
    Philox4x32 rng(cfg.seed, index);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int m = cfg.size();
    const double sd_diag = 1.0 / std::sqrt(static_cast<double>(cfg.n));
    const double sd_part = 1.0 / std::sqrt(2.0 * cfg.n);
    Eigen::MatrixXcd h(m, m);
    for (int i = 0; i < m; ++i) {
        h(i, i) = sd_diag * normal(rng);
        for (int j = i + 1; j < m; ++j) {
            const double re = sd_part * normal(rng);
            const double im = sd_part * normal(rng);
            h(i, j) = cplx{re, im};
            h(j, i) = cplx{re, -im};
        }
    }
    return h;
}

/// beta = 2 tridiagonal model: diagonal N(0, 1/N), k-th off-diagonal
/// chi_{2(M-k)} / sqrt(2N), i.e. sqrt(Gamma(M-k, 1) / N).
inline SpectrumSample sample_gue_tridiagonal(const EnsembleConfig& cfg, std::uint64_t index) {
    cfg.validate();
    Philox4x32 rng(cfg.seed, index);
    const int m = cfg.size();
    const double inv_n = 1.0 / static_cast<double>(cfg.n);
    std::normal_distribution<double> normal(0.0, std::sqrt(inv_n));
    std::vector<double> diag(static_cast<std::size_t>(m)), off(static_cast<std::size_t>(m - 1));
    for (auto& d : diag) d = normal(rng);
    for (int k = 1; k < m; ++k) {
        std::gamma_distribution<double> gamma(static_cast<double>(m - k), 1.0);
        off[static_cast<std::size_t>(k - 1)] = std::sqrt(gamma(rng) * inv_n);
    }
    return {eigs_sym_tridiag(diag, off), index};
}

enum class GueMethod { Tridiagonal, Dense };

inline SpectrumSample sample_gue(const EnsembleConfig& cfg, std::uint64_t index = 0,
                                 GueMethod method = GueMethod::Tridiagonal) {
    if (cfg.potential.kind != PotentialKind::Gaussian)
        throw DomainError("sample_gue: potential must be Gaussian");
    if (method == GueMethod::Tridiagonal) return sample_gue_tridiagonal(cfg, index);
    return {hermitian_eigenvalues(sample_gue_matrix(cfg, index)), index};
}

// ---------------------------------------------------------------------------
// Coulomb-gas Metropolis sampler for general V, optionally tilted by
// |det(lambda* - X)|^{2 tilt}.

struct MetropolisParams {
    int burn_in = 300;   // sweeps discarded per chain (step tuned during these)
    int thin = 2;        // sweeps between recorded samples
    double step = 0.0;   // initial proposal half-width; 0 picks 2/N
    int chains = 8;
};

struct Tilt {
    double k = 0.0;
    double lambda = 0.0;
};

class CoulombGasChain {
public:
    CoulombGasChain(int n, Potential v, std::vector<double> initial, Tilt tilt, double step,
                    std::uint64_t seed, std::uint64_t stream)
        : n_(n), v_(v), x_(std::move(initial)), tilt_(tilt), step_(step), rng_(seed, stream) {}

    /// log p(x with x_i -> y) - log p(x) for the density
    ///   prod_{i<j} (x_i - x_j)^2 exp(-N sum V(x_i)) prod_i |lambda* - x_i|^{2 tilt}.
    [[nodiscard]] double log_density_ratio(std::size_t i, double y) const {
        const double x = x_[i];
        double log_sum = 0.0;
        double prod = 1.0;
        int pending = 0;
        for (std::size_t j = 0; j < x_.size(); ++j) {
            if (j == i) continue;
            prod *= (y - x_[j]) / (x - x_[j]);
            if (++pending == 24) {
                log_sum += std::log(std::abs(prod));
                prod = 1.0;
                pending = 0;
            }
        }
        log_sum += std::log(std::abs(prod));
        double out = 2.0 * log_sum - n_ * (v_(y) - v_(x));
        if (tilt_.k != 0.0)
            out += 2.0 * tilt_.k * std::log(std::abs((tilt_.lambda - y) / (tilt_.lambda - x)));
        return out;
    }

    void sweep() {
        for (std::size_t i = 0; i < x_.size(); ++i) {
            const double y = x_[i] + step_ * (2.0 * uniform_open01(rng_) - 1.0);
            const double log_ratio = log_density_ratio(i, y);
            ++proposed_;
            if (log_ratio >= 0.0 || std::log(uniform_open01(rng_)) < log_ratio) {
                x_[i] = y;
                ++accepted_;
            }
        }
    }

    /// Multiplicative step adaptation toward the target acceptance rate.
    void tune(double target) {
        const double rate = acceptance_rate();
        step_ *= std::exp(2.0 * (rate - target));
        reset_counters();
    }

    [[nodiscard]] double acceptance_rate() const {
        return proposed_ == 0 ? 0.0 : static_cast<double>(accepted_) / static_cast<double>(proposed_);
    }
    void reset_counters() { accepted_ = proposed_ = 0; }
    [[nodiscard]] const std::vector<double>& state() const { return x_; }
    [[nodiscard]] double step() const { return step_; }
    [[nodiscard]] std::uint64_t accepted() const { return accepted_; }
    [[nodiscard]] std::uint64_t proposed() const { return proposed_; }

private:
    int n_;
    Potential v_;
    std::vector<double> x_;
    Tilt tilt_;
    double step_;
    Philox4x32 rng_;
    std::uint64_t accepted_ = 0;
    std::uint64_t proposed_ = 0;
};

struct McmcRun {
    std::vector<SpectrumSample> samples;
    double acceptance_rate = 0.0;
    double final_step = 0.0;
    int chains = 0;
};

namespace detail {

inline constexpr std::uint64_t kChainStreamBase = std::uint64_t{1} << 63;

inline std::uint64_t chain_stream(std::uint64_t stage, std::uint64_t chain) {
    return kChainStreamBase | (stage << 32) | chain;
}

}  // namespace detail

/// Runs mcmc.chains independent chains and returns cfg.samples samples in
/// chain-major order. `stage` separates the RNG streams of distinct runs
/// sharing a seed.
inline McmcRun run_coulomb_gas(const EnsembleConfig& cfg, const MetropolisParams& mcmc, Tilt tilt,
                               std::uint64_t stage = 0) {
    cfg.validate();
    if (mcmc.chains < 1 || mcmc.thin < 1 || mcmc.burn_in < 0)
        throw DomainError("run_coulomb_gas: chains, thin >= 1 and burn_in >= 0 required");
    constexpr double kTargetAcceptance = 0.4;
    const auto chains = static_cast<std::size_t>(mcmc.chains);
    const std::size_t per_chain = (static_cast<std::size_t>(cfg.samples) + chains - 1) / chains;
    const double scale = std::sqrt(EquilibriumMeasure(cfg.potential).half_width_squared());

    std::vector<std::vector<SpectrumSample>> out(chains);
    std::vector<std::uint64_t> accepted(chains), proposed(chains);
    std::vector<double> steps(chains);
    parallel_for(chains, cfg.workers, [&](std::size_t c) {
        const std::uint64_t stream = detail::chain_stream(stage, c);
        // start from a Gaussian draw rescaled to the equilibrium support
        EnsembleConfig start = cfg;
        start.potential = Potential::gaussian();
        auto initial = sample_gue_tridiagonal(start, stream).eigenvalues;
        for (auto& x : initial) x *= scale;
        const double step0 = mcmc.step > 0.0 ? mcmc.step : 2.0 / cfg.n;
        CoulombGasChain chain(cfg.n, cfg.potential, std::move(initial), tilt, step0, cfg.seed,
                              stream ^ 0x5bd1e995ULL);
        for (int s = 1; s <= mcmc.burn_in; ++s) {
            chain.sweep();
            if (s % 10 == 0) chain.tune(kTargetAcceptance);
        }
        chain.reset_counters();
        out[c].reserve(per_chain);
        for (std::size_t k = 0; k < per_chain; ++k) {
            for (int s = 0; s < mcmc.thin; ++s) chain.sweep();
            SpectrumSample sample{chain.state(), stream};
            std::sort(sample.eigenvalues.begin(), sample.eigenvalues.end());
            out[c].push_back(std::move(sample));
        }
        accepted[c] = chain.accepted();
        proposed[c] = chain.proposed();
        steps[c] = chain.step();
    });

    McmcRun run;
    run.chains = mcmc.chains;
    std::uint64_t acc = 0, prop = 0;
    for (std::size_t c = 0; c < chains; ++c) {
        acc += accepted[c];
        prop += proposed[c];
        for (auto& s : out[c]) {
            if (run.samples.size() < static_cast<std::size_t>(cfg.samples)) run.samples.push_back(std::move(s));
        }
    }
    run.acceptance_rate = prop == 0 ? 0.0 : static_cast<double>(acc) / static_cast<double>(prop);
    run.final_step = steps.front();
    if (run.acceptance_rate < 0.1 || run.acceptance_rate > 0.9)
        throw NumericError("run_coulomb_gas: acceptance rate " + std::to_string(run.acceptance_rate) +
                           " outside [0.1, 0.9]");
    return run;
}

inline McmcRun sample_quartic(const EnsembleConfig& cfg, const MetropolisParams& mcmc = {}) {
    if (cfg.potential.kind != PotentialKind::Quartic)
        throw DomainError("sample_quartic: potential must be Quartic");
    return run_coulomb_gas(cfg, mcmc, Tilt{});
}

// ---------------------------------------------------------------------------
// Sample sets and the normalized log characteristic polynomial

/// Constants entering L(lambda) = sum ln|lambda - x_i| - (N/2) V(lambda) + (N/2) l_V.
struct Normalization {
    int n = 1;
    Potential potential;
    double log_constant = 1.0;

    static Normalization of(int n, const Potential& v) {
        return {n, v, EquilibriumMeasure(v).log_constant()};
    }
};

struct SampleSet {
    std::vector<SpectrumSample> samples;
    Normalization norm;
    std::size_t batches = 0;  // > 0 for correlated (Markov chain) samples
    int workers = 1;
};

inline double log_char_poly(const SpectrumSample& s, double lambda, const Normalization& norm) {
    double sum = 0.0;
    double closest = std::numeric_limits<double>::infinity();
    for (double x : s.eigenvalues) {
        const double d = std::abs(lambda - x);
        closest = std::min(closest, d);
        sum += std::log(d);
    }
    if (closest < 1e-300) throw PoleError("log_char_poly: lambda coincides with an eigenvalue");
    return sum - 0.5 * norm.n * norm.potential(lambda) + 0.5 * norm.n * norm.log_constant;
}

/// Gaussian-ensemble convenience overload.
inline double log_char_poly(const SpectrumSample& s, double lambda, int n) {
    return log_char_poly(s, lambda, Normalization{n, Potential::gaussian(), 1.0});
}

inline SampleSet generate_gue_samples(const EnsembleConfig& cfg,
                                      GueMethod method = GueMethod::Tridiagonal) {
    cfg.validate();
    SampleSet set;
    set.norm = Normalization::of(cfg.n, Potential::gaussian());
    set.workers = cfg.workers;
    set.samples.resize(static_cast<std::size_t>(cfg.samples));
    parallel_for(set.samples.size(), cfg.workers,
                 [&](std::size_t i) { set.samples[i] = sample_gue(cfg, i, method); });
    return set;
}

inline constexpr std::size_t kMcmcBatches = 40;

inline SampleSet samples_from_run(McmcRun run, const EnsembleConfig& cfg) {
    SampleSet set;
    set.norm = Normalization::of(cfg.n, cfg.potential);
    set.samples = std::move(run.samples);
    set.batches = std::min<std::size_t>(kMcmcBatches, set.samples.size() / 2);
    set.workers = cfg.workers;
    return set;
}

/// Exact GUE samples for the Gaussian potential, Metropolis otherwise.
inline SampleSet generate_samples(const EnsembleConfig& cfg, const MetropolisParams& mcmc = {}) {
    if (cfg.potential.kind == PotentialKind::Gaussian) return generate_gue_samples(cfg);
    return samples_from_run(sample_quartic(cfg, mcmc), cfg);
}

inline std::vector<double> log_values(const SampleSet& set, double lambda) {
    std::vector<double> out(set.samples.size());
    parallel_for(out.size(), set.workers,
                 [&](std::size_t i) { out[i] = log_char_poly(set.samples[i], lambda, set.norm); });
    return out;
}

// ---------------------------------------------------------------------------
// Estimators on a sample set

/// <exp(2k L)>, accumulated after shifting by max(2k L).
inline MomentEstimate normalized_moment(const SampleSet& set, double lambda, double k) {
    if (!(k > 0.0)) throw DomainError("normalized_moment: k must be > 0");
    const auto logs = log_values(set, lambda);
    double shift = -std::numeric_limits<double>::infinity();
    for (double l : logs) shift = std::max(shift, 2.0 * k * l);
    std::vector<double> scaled(logs.size());
    std::transform(logs.begin(), logs.end(), scaled.begin(),
                   [&](double l) { return std::exp(2.0 * k * l - shift); });
    auto est = summarize(scaled, "normalized_moment", set.batches);
    const double factor = std::exp(shift);
    est.mean *= factor;
    est.std_err *= factor;
    if (!std::isfinite(est.mean) || !std::isfinite(est.std_err))
        throw NumericError("normalized_moment: overflow (k too large for N)");
    return est;
}

/// Raw moments <L^p>, p = 1..max_order.
inline std::vector<MomentEstimate> log_moments(const SampleSet& set, double lambda, int max_order) {
    if (max_order < 1 || max_order > 8) throw DomainError("log_moments: max_order must be in [1, 8]");
    const auto logs = log_values(set, lambda);
    std::vector<MomentEstimate> out;
    std::vector<double> powered(logs.size());
    for (int p = 1; p <= max_order; ++p) {
        std::transform(logs.begin(), logs.end(), powered.begin(),
                       [p](double l) { return std::pow(l, p); });
        out.push_back(summarize(powered, "log_moment_" + std::to_string(p), set.batches));
    }
    return out;
}

inline MomentEstimate two_point(const SampleSet& set, double lambda1, double lambda2, int p1, int p2) {
    if (lambda1 == lambda2) throw DomainError("two_point: lambda1 must differ from lambda2");
    if (p1 < 0 || p2 < 0) throw DomainError("two_point: powers must be >= 0");
    const auto a = log_values(set, lambda1);
    const auto b = log_values(set, lambda2);
    std::vector<double> prod(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) prod[i] = std::pow(a[i], p1) * std::pow(b[i], p2);
    return summarize(prod, "two_point", set.batches);
}

struct ResolventPairEstimate {
    cplx connected;           // <T1 T2> - <T1><T2>
    double std_err = 0.0;     // of the connected part
    cplx mean1, mean2;        // <T1>, <T2>
    double std_err1 = 0.0;
    std::size_t count = 0;
};

inline cplx resolvent_trace(const SpectrumSample& s, cplx z) {
    cplx acc{0.0, 0.0};
    for (double x : s.eigenvalues) acc += 1.0 / (z - x);
    return acc;
}

inline ResolventPairEstimate resolvent_pair(const SampleSet& set, cplx z1, cplx z2) {
    const std::size_t n = set.samples.size();
    if (n < 2) throw DomainError("resolvent_pair: need at least two samples");
    std::vector<cplx> t1(n), t2(n);
    parallel_for(n, set.workers, [&](std::size_t i) {
        t1[i] = resolvent_trace(set.samples[i], z1);
        t2[i] = resolvent_trace(set.samples[i], z2);
    });
    auto split = [n](const std::vector<cplx>& v, bool imag) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = imag ? v[i].imag() : v[i].real();
        return out;
    };
    const auto r1 = split(t1, false), i1 = split(t1, true), r2 = split(t2, false), i2 = split(t2, true);
    ResolventPairEstimate est;
    est.count = n;
    est.mean1 = {sample_mean(r1), sample_mean(i1)};
    est.mean2 = {sample_mean(r2), sample_mean(i2)};
    est.std_err1 = std::sqrt((sample_variance(r1) + sample_variance(i1)) / static_cast<double>(n));
    std::vector<double> cre(n), cim(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx c = (t1[i] - est.mean1) * (t2[i] - est.mean2);
        cre[i] = c.real();
        cim[i] = c.imag();
    }
    const double scale = static_cast<double>(n) / static_cast<double>(n - 1);
    est.connected = cplx{sample_mean(cre), sample_mean(cim)} * scale;
    const auto er = summarize(cre, "connected_re", set.batches);
    const auto ei = summarize(cim, "connected_im", set.batches);
    est.std_err = scale * std::hypot(er.std_err, ei.std_err);
    return est;
}

/// Gaussian-kernel estimate of the eigenvalue density at lambda.
inline double empirical_density(const SampleSet& set, double lambda, double bandwidth = 0.1) {
    if (!(bandwidth > 0.0)) throw DomainError("empirical_density: bandwidth must be > 0");
    std::vector<double> per_sample(set.samples.size());
    const double norm = 1.0 / (bandwidth * std::sqrt(2.0 * std::numbers::pi));
    parallel_for(per_sample.size(), set.workers, [&](std::size_t i) {
        const auto& ev = set.samples[i].eigenvalues;
        double acc = 0.0;
        for (double x : ev) {
            const double u = (lambda - x) / bandwidth;
            acc += std::exp(-0.5 * u * u);
        }
        per_sample[i] = acc * norm / static_cast<double>(ev.size());
    });
    return sample_mean(per_sample);
}

// ---------------------------------------------------------------------------
// Stepping-stone estimator for <exp(2k L)>.
//
// The plain estimator is dominated by rare samples once k ~ 1 (its relative
// variance grows like (2 pi N rho)^{2k^2}). Writing Z(k) = <exp(2k L)>,
//   Z(k) = prod_j Z(k_{j+1}) / Z(k_j) = prod_j E_{Q_j}[exp(2 (k_{j+1} - k_j) L)]
// with Q_j the ensemble tilted by exp(2 k_j L); each factor has O(1) relative
// variance. Stage 0 uses the untilted ensemble, later stages Metropolis.

struct BridgeParams {
    double max_stage_width = 0.25;
    MetropolisParams mcmc;
};

struct BridgeEstimate {
    MomentEstimate moment;
    std::vector<MomentEstimate> stage_ratios;
    double base_density = 0.0;  // kernel density at lambda from the untilted stage
};

inline BridgeEstimate estimate_normalized_moment_bridged(const EnsembleConfig& cfg, double lambda,
                                                         double k, const BridgeParams& params = {}) {
    cfg.validate();
    if (!(k > 0.0)) throw DomainError("estimate_normalized_moment_bridged: k must be > 0");
    const int stages = std::max(1, static_cast<int>(std::ceil(k / params.max_stage_width - 1e-12)));
    const double width = k / stages;

    BridgeEstimate out;
    double log_product = 0.0;
    double rel_var = 0.0;
    for (int j = 0; j < stages; ++j) {
        SampleSet set;
        if (j == 0) {
            set = generate_samples(cfg, params.mcmc);
            out.base_density = empirical_density(set, lambda);
        } else {
            set = samples_from_run(
                run_coulomb_gas(cfg, params.mcmc, Tilt{j * width, lambda}, static_cast<std::uint64_t>(j) + 1),
                cfg);
        }
        auto ratio = normalized_moment(set, lambda, width);
        log_product += std::log(ratio.mean);
        rel_var += (ratio.std_err / ratio.mean) * (ratio.std_err / ratio.mean);
        out.stage_ratios.push_back(std::move(ratio));
    }
    out.moment.mean = std::exp(log_product);
    out.moment.std_err = out.moment.mean * std::sqrt(rel_var);
    out.moment.count = static_cast<std::size_t>(cfg.samples) * static_cast<std::size_t>(stages);
    out.moment.estimator = "normalized_moment_bridged";
    return out;
}

// ---------------------------------------------------------------------------
// Config-level entry points

inline MomentEstimate estimate_normalized_moment(const EnsembleConfig& cfg, double lambda, double k) {
    return normalized_moment(generate_samples(cfg), lambda, k);
}

inline std::vector<MomentEstimate> estimate_log_moments(const EnsembleConfig& cfg, double lambda,
                                                        int max_order) {
    return log_moments(generate_samples(cfg), lambda, max_order);
}

inline MomentEstimate estimate_two_point(const EnsembleConfig& cfg, double lambda1, double lambda2,
                                         int p1, int p2) {
    for (double l : {lambda1, lambda2})
        if (!(std::abs(l) < 2.0)) throw DomainError("estimate_two_point: energies must be inside (-2, 2)");
    return two_point(generate_samples(cfg), lambda1, lambda2, p1, p2);
}

inline ResolventPairEstimate estimate_resolvent_pair(const EnsembleConfig& cfg, cplx z1, cplx z2) {
    auto distance_to_cut = [](cplx z) {
        const double dx = std::max(0.0, std::abs(z.real()) - 2.0);
        return std::hypot(dx, z.imag());
    };
    if (distance_to_cut(z1) < 0.1 || distance_to_cut(z2) < 0.1)
        throw DomainError("estimate_resolvent_pair: z must be at distance >= 0.1 from [-2, 2]");
    return resolvent_pair(generate_samples(cfg), z1, z2);
}

/// Energies lambda +- d/2 around `center` whose scaled separation is x.
inline std::pair<double, double> energies_for_separation(int n, double center, double x) {
    const double d = 2.0 * x / analytic::local_scale(n, center);
    return {center + 0.5 * d, center - 0.5 * d};
}

}  // namespace rmtlab::ensemble
