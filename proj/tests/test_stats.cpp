#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "rmtlab/random.hpp"
#include "rmtlab/stats.hpp"

using namespace rmtlab;
using Catch::Matchers::WithinAbs;

TEST_CASE("ordered_sum and sample moments") {
    std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(ordered_sum(v) == 10.0);
    CHECK(sample_mean(v) == 2.5);
    CHECK_THAT(sample_variance(v), WithinAbs(5.0 / 3.0, 1e-15));
    CHECK_THROWS_AS(sample_mean(std::vector<double>{}), DomainError);

    // the summation tree depends only on the length
    std::vector<double> w(1001);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / static_cast<double>(i + 1);
    CHECK(ordered_sum(w) == ordered_sum(std::vector<double>(w)));
}

TEST_CASE("summarize: iid and batch-means standard errors") {
    Philox4x32 eng(5, 0);
    std::normal_distribution<double> normal;
    std::vector<double> v(40000);
    for (auto& x : v) x = normal(eng);
    const auto iid = summarize(v, "iid");
    CHECK(iid.count == v.size());
    CHECK_THAT(iid.std_err, WithinAbs(1.0 / 200.0, 2e-4));
    const auto batched = summarize(v, "batched", 40);
    // independent data: batch means give the same error up to its own noise (~11%)
    CHECK(batched.std_err / iid.std_err > 0.6);
    CHECK(batched.std_err / iid.std_err < 1.4);

    // positively correlated data (each value repeated 10 times): batch means see
    // the inflation, the iid formula does not
    std::vector<double> sticky;
    for (std::size_t i = 0; i < 4000; ++i)
        for (int r = 0; r < 10; ++r) sticky.push_back(v[i]);
    const auto naive = summarize(sticky, "naive");
    const auto robust = summarize(sticky, "robust", 40);
    CHECK(robust.std_err > 2.0 * naive.std_err);
    CHECK(robust.within_sigma(0.0, 4.0));
}

TEST_CASE("normality_diagnostics on a synthetic normal sample") {
    Philox4x32 eng(11, 0);
    std::normal_distribution<double> normal(3.0, 2.0);
    std::vector<double> v(10000);
    for (auto& x : v) x = normal(eng);
    const auto r = normality_diagnostics(v);
    CHECK(std::abs(r.skewness) <= 0.08);
    CHECK(std::abs(r.excess_kurtosis) <= 0.15);
    CHECK(r.ks_statistic <= 0.02);
    CHECK(r.ks_statistic >= 0.0);
    CHECK_THAT(r.mean, WithinAbs(3.0, 0.1));
}

TEST_CASE("normality_diagnostics flags non-normal and degenerate input") {
    Philox4x32 eng(12, 0);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> v(10000);
    for (auto& x : v) x = expo(eng);
    const auto r = normality_diagnostics(v);
    CHECK_THAT(r.skewness, WithinAbs(2.0, 0.2));
    CHECK(r.ks_statistic > 0.05);

    CHECK_THROWS_AS(normality_diagnostics(std::vector<double>(500, 1.25)), DomainError);
    CHECK_THROWS_AS(normality_diagnostics(std::vector<double>(50, 0.0)), DomainError);
}
