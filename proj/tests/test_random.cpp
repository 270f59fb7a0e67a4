#include <catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "rmtlab/parallel.hpp"
#include "rmtlab/random.hpp"

using namespace rmtlab;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using B = Philox4x32::block_type;
    using K = Philox4x32::key_type;
    CHECK(Philox4x32::generate(B{0, 0, 0, 0}, K{0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::generate(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
          B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::generate(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
          B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
    Philox4x32 a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    std::vector<std::uint64_t> va, vb, vc, vd;
    for (int i = 0; i < 100; ++i) {
        va.push_back(a());
        vb.push_back(b());
        vc.push_back(c());
        vd.push_back(d());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vd);
    CHECK(std::set<std::uint64_t>(va.begin(), va.end()).size() == va.size());
}

TEST_CASE("uniform_open01 stays inside (0, 1) and has the right mean") {
    Philox4x32 eng(1, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = uniform_open01(eng);
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    // standard error of the mean is sqrt(1/12 / n) ~ 6.5e-4
    CHECK(std::abs(sum / n - 0.5) < 4e-3);
}

TEST_CASE("engine works with standard distributions") {
    Philox4x32 eng(9, 3);
    std::normal_distribution<double> normal;
    double s = 0.0, s2 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double x = normal(eng);
        s += x;
        s2 += x * x;
    }
    CHECK(std::abs(s / n) < 0.02);
    CHECK(std::abs(s2 / n - 1.0) < 0.03);
}

TEST_CASE("parallel_for covers every index once and propagates errors") {
    for (int workers : {1, 2, 5}) {
        std::vector<int> hits(1000, 0);
        parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i] += 1; });
        CHECK(std::count(hits.begin(), hits.end(), 1) == 1000);
    }
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                        if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
}
