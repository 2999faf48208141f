#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "levylab/stable.hpp"
#include "levylab/stats.hpp"

using namespace levylab;

namespace {

std::vector<double> draws(const StableLaw& law, int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> xs(n);
    for (double& x : xs) x = sample_stable(law, rng);
    return xs;
}

}  // namespace

TEST_SUITE("stable") {

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(StableLaw(0.0, 0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(StableLaw(2.1, 0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(StableLaw(1.0, 0.0, 1.0, 0.0), std::invalid_argument);  // alpha = 1 excluded
    CHECK_THROWS_AS(StableLaw(1.5, 1.5, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(StableLaw(1.5, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("alpha = 2 with scale 1/sqrt(2) is a standard Gaussian") {
    const auto xs = draws(StableLaw(2.0, 0.0, 1.0 / std::sqrt(2.0), 0.0), 1000000, 101);
    double s1 = 0.0;
    double s2 = 0.0;
    for (const double x : xs) {
        s1 += x;
        s2 += x * x;
    }
    const double mean = s1 / xs.size();
    const double var = s2 / xs.size() - mean * mean;
    CHECK(std::fabs(var - 1.0) < 0.01);
    CHECK(std::fabs(mean) < 0.005);
}

TEST_CASE("totally skewed positive stable stays positive") {
    const auto xs = draws(StableLaw(0.5, 1.0, 1.0, 0.0), 100000, 103);
    for (const double x : xs) REQUIRE(x > 0.0);
}

TEST_CASE("symmetric 1.5-stable has median zero") {
    const auto xs = draws(StableLaw(1.5, 0.0, 1.0, 0.0), 1000000, 105);
    CHECK(std::fabs(quantile(xs, 0.5)) < 0.01);
}

TEST_CASE("levy marginal basics") {
    const StableLaw law(1.5, 0.0, 1.0, 0.0);
    Rng rng(7);
    CHECK(levy_marginal(law, 0.0, rng) == 0.0);
    CHECK_THROWS_AS(levy_marginal(law, -1.0, rng), std::invalid_argument);
}

TEST_CASE("self-similarity: marginal at t=16 matches 4x draws at t=1 (alpha=2)") {
    const StableLaw law(2.0, 0.0, 0.7, 0.0);
    Rng ra(11);
    Rng rb(12);
    std::vector<double> at16(100000);
    std::vector<double> scaled(100000);
    for (double& x : at16) x = levy_marginal(law, 16.0, ra);
    for (double& x : scaled) x = 4.0 * levy_marginal(law, 1.0, rb);
    const KSResult ks = ks_two_sample(at16, scaled);
    CHECK(ks.p_value > 0.01);
}

TEST_CASE("two-sided marginal") {
    SUBCASE("zero at the origin") {
        Rng rng(3);
        CHECK(two_sided_marginal(StableLaw(1.5, 0.0, 1.0, 0.0), 0.0, rng) == 0.0);
    }
    SUBCASE("negative side of a subordinator is negative") {
        const StableLaw law(0.7, 1.0, 1.0, 0.0);
        Rng rng(5);
        for (int i = 0; i < 20000; ++i) REQUIRE(two_sided_marginal(law, -1.0, rng) < 0.0);
    }
    SUBCASE("symmetric law gives matching laws on both sides") {
        const StableLaw law(1.5, 0.0, 1.0, 0.0);
        Rng ra(21);
        Rng rb(22);
        std::vector<double> left(100000);
        std::vector<double> right(100000);
        for (double& x : left) x = -two_sided_marginal(law, -1.0, ra);
        for (double& x : right) x = two_sided_marginal(law, 1.0, rb);
        const KSResult ks = ks_two_sample(left, right);
        CHECK(ks.p_value > 0.01);
    }
}

TEST_CASE("stability under convolution") {
    // (sum of k i.i.d. standard draws)/k^{1/alpha} has the law of one draw
    struct Case {
        double alpha;
        double skew;
    };
    for (const Case c : {Case{0.5, 1.0}, Case{1.5, 0.3}, Case{2.0, 0.0}}) {
        const StableLaw law(c.alpha, c.skew, 1.0, 0.0);
        const int k = 4;
        const int n = 100000;
        Rng ra(31);
        Rng rb(32);
        std::vector<double> sums(n);
        std::vector<double> singles(n);
        const double norm = std::pow(static_cast<double>(k), 1.0 / c.alpha);
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < k; ++j) s += sample_stable(law, ra);
            sums[i] = s / norm;
            singles[i] = sample_stable(law, rb);
        }
        const KSResult ks = ks_two_sample(sums, singles);
        // 1% critical value of the two-sample statistic
        const double ne = static_cast<double>(n) * n / (2.0 * n);
        const double critical = 1.6276 / std::sqrt(ne);
        CHECK(ks.statistic < critical);
    }
}

TEST_CASE("determinism: identical rng state, identical draws") {
    const StableLaw law(1.5, 0.5, 2.0, 1.0);
    Rng a(99);
    Rng b(99);
    for (int i = 0; i < 1000; ++i) REQUIRE(sample_stable(law, a) == sample_stable(law, b));
}

TEST_CASE("gaussian helper hits the documented convention") {
    const StableLaw g = StableLaw::gaussian(2.0, 9.0);
    CHECK(g.index == 2.0);
    CHECK(g.scale == doctest::Approx(std::sqrt(4.5)));
    CHECK(g.location == 2.0);
}

}  // TEST_SUITE
