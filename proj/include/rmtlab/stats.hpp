#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "rmtlab/errors.hpp"

namespace rmtlab {

/// Monte Carlo (or quadrature block) estimate of one expectation.
struct MomentEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::size_t count = 0;
    std::string estimator;
    std::size_t excluded = 0;  // samples dropped (e.g. near-zero nodes)

    [[nodiscard]] bool within_sigma(double target, double n_sigma) const {
        return std::abs(mean - target) <= n_sigma * std_err;
    }
};

/// Pairwise summation; the split points depend only on the length.
inline double ordered_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return ordered_sum(v.first(half)) + ordered_sum(v.subspan(half));
}

inline double sample_mean(std::span<const double> v) {
    if (v.empty()) throw DomainError("sample_mean: empty input");
    return ordered_sum(v) / static_cast<double>(v.size());
}

/// Unbiased sample variance.
inline double sample_variance(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = sample_mean(v);
    std::vector<double> sq(v.size());
    std::transform(v.begin(), v.end(), sq.begin(), [m](double x) { return (x - m) * (x - m); });
    return ordered_sum(sq) / static_cast<double>(v.size() - 1);
}

/// Mean with standard error. With batches == 0 the values are treated as
/// independent; otherwise the standard error comes from `batches` contiguous
/// batch means (for correlated Markov-chain output).
inline MomentEstimate summarize(std::span<const double> v, std::string tag,
                                std::size_t batches = 0) {
    MomentEstimate est;
    est.estimator = std::move(tag);
    est.count = v.size();
    est.mean = sample_mean(v);
    if (batches == 0 || batches >= v.size()) {
        est.std_err = std::sqrt(sample_variance(v) / static_cast<double>(v.size()));
        return est;
    }
    std::vector<double> means(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        const std::size_t begin = v.size() * b / batches;
        const std::size_t end = v.size() * (b + 1) / batches;
        means[b] = sample_mean(v.subspan(begin, end - begin));
    }
    est.std_err = std::sqrt(sample_variance(means) / static_cast<double>(batches));
    return est;
}

struct NormalityReport {
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double ks_statistic = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};

inline double normal_cdf(double x, double mean, double sd) {
    return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

/// Skewness, excess kurtosis and the Kolmogorov-Smirnov distance to the
/// normal law with the sample's own mean and variance.
inline NormalityReport normality_diagnostics(std::span<const double> values) {
    if (values.size() < 100) throw DomainError("normality_diagnostics: need at least 100 values");
    const double n = static_cast<double>(values.size());
    const double m = sample_mean(values);
    std::vector<double> c2(values.size()), c3(values.size()), c4(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - m;
        c2[i] = d * d;
        c3[i] = c2[i] * d;
        c4[i] = c2[i] * c2[i];
    }
    const double m2 = ordered_sum(c2) / n;
    if (!(m2 > 0.0)) throw DomainError("normality_diagnostics: zero sample variance");
    const double m3 = ordered_sum(c3) / n;
    const double m4 = ordered_sum(c4) / n;

    NormalityReport r;
    r.mean = m;
    r.variance = m2;
    r.skewness = m3 / std::pow(m2, 1.5);
    r.excess_kurtosis = m4 / (m2 * m2) - 3.0;

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double sd = std::sqrt(m2);
    double d_max = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = normal_cdf(sorted[i], m, sd);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        d_max = std::max({d_max, above, below});
    }
    r.ks_statistic = d_max;
    return r;
}

}  // namespace rmtlab
