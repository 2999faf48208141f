#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "levylab/constants.hpp"
#include "levylab/walks.hpp"

using namespace levylab;

TEST_SUITE("walks") {

TEST_CASE("increment law caches") {
    const IncrementLaw ss = IncrementLaw::simple_symmetric();
    CHECK(ss.drift == 0.0);
    CHECK(ss.second_moment == 1.0);
    CHECK(ss.abs_moment == 1.0);
    CHECK(std::isinf(ss.moment_ceiling));

    const IncrementLaw lazy = IncrementLaw::lazy_symmetric(0.25);
    CHECK(lazy.second_moment == doctest::Approx(0.75));
    CHECK(lazy.abs_moment == doctest::Approx(0.75));

    const IncrementLaw zeta = IncrementLaw::symmetric_zeta(1.5);
    CHECK(zeta.drift == 0.0);
    CHECK(std::isinf(zeta.second_moment));
    CHECK(zeta.abs_moment ==
          doctest::Approx(detail::riemann_zeta(1.5) / detail::riemann_zeta(2.5)).epsilon(1e-12));
    CHECK(zeta.moment_ceiling == 1.5);

    const IncrementLaw drifted = IncrementLaw::drifted_zeta(1.8, 0.4);
    CHECK(drifted.drift == 0.4);
    CHECK(drifted.stable_index() == doctest::Approx(1.8));
    CHECK_THROWS_AS(IncrementLaw::drifted_zeta(1.8, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(IncrementLaw::drifted_zeta(0.9, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(IncrementLaw::lazy_symmetric(1.0), std::invalid_argument);
}

TEST_CASE("simple symmetric walk basics") {
    Rng rng(1);
    const WalkPath path = sample_walk(IncrementLaw::simple_symmetric(), 10000, rng);
    REQUIRE(path.steps.size() == 10001);
    CHECK(path.steps[0] == 0);
    for (std::size_t n = 1; n < path.steps.size(); ++n)
        REQUIRE(std::llabs(path.steps[n] - path.steps[n - 1]) == 1);
}

TEST_CASE("simple symmetric mean over replicas") {
    const IncrementLaw law = IncrementLaw::simple_symmetric();
    double sum = 0.0;
    for (int r = 0; r < 10000; ++r) {
        Rng rng = Rng::substream(555, 1, r);
        sum += static_cast<double>(walk_terminal(law, 10000, rng)) / 100.0;
    }
    CHECK(std::fabs(sum / 10000.0) < 0.05);
}

TEST_CASE("zeta law mean matches the tuned drift") {
    const IncrementLaw law = IncrementLaw::drifted_zeta(1.5, 0.4);
    // mean of S_1e5/1e5 over 100 replicas; heavy tails make this a loose check
    double sum = 0.0;
    const long long n = 100000;
    for (int r = 0; r < 100; ++r) {
        Rng rng = Rng::substream(777, 2, r);
        sum += static_cast<double>(walk_terminal(law, n, rng)) / static_cast<double>(n);
    }
    CHECK(std::fabs(sum / 100.0 - 0.4) < 0.02);
}

TEST_CASE("symmetric zeta empirical pmf follows j^{-beta-1}") {
    const IncrementLaw law = IncrementLaw::symmetric_zeta(1.5);
    Rng rng(2025);
    long long c1 = 0;
    long long c2 = 0;
    long long zero = 0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) {
        const long long j = std::llabs(law.sample(rng));
        if (j == 0) ++zero;
        if (j == 1) ++c1;
        if (j == 2) ++c2;
    }
    CHECK(zero == 0);
    const double z = detail::riemann_zeta(2.5);
    CHECK(std::fabs(static_cast<double>(c1) / n - 1.0 / z) < 0.005);
    CHECK(std::fabs(static_cast<double>(c2) / n - std::pow(2.0, -2.5) / z) < 0.005);
}

TEST_CASE("flight evaluates targets along the walk") {
    SUBCASE("two-sided prefix sums: S = (0, 2, -3)") {
        // Y_1 = zeta_1 + zeta_2 and Y_2 = -(zeta_0 + zeta_{-1} + zeta_{-2}),
        // the hand evaluation with whatever gaps the window drew
        MediumWindow w2(GapLaw::pareto(1.5, 1.0), 123);
        WalkPath path;
        path.steps = {0, 2, -3};
        const FlightPath fp = flight(w2, path);
        CHECK(fp.positions[0] == 0.0);
        CHECK(fp.positions[1] == w2.gap(1) + w2.gap(2));
        CHECK(fp.positions[2] == -(w2.gap(0) + w2.gap(-1) + w2.gap(-2)));
    }
    SUBCASE("constant path stays at the origin") {
        MediumWindow window(GapLaw::pareto(1.5, 1.0), 5);
        WalkPath path;
        path.steps = {0, 0, 0};
        const FlightPath fp = flight(window, path);
        for (const double y : fp.positions) CHECK(y == 0.0);
    }
    SUBCASE("deterministic gaps give Y = mu S exactly") {
        MediumWindow window(GapLaw::deterministic(2.5), 5);
        WalkPath path;
        path.steps = {0, 3, -1, 4};
        const FlightPath fp = flight(window, path);
        for (std::size_t n = 0; n < path.steps.size(); ++n)
            CHECK(fp.positions[n] == doctest::Approx(2.5 * path.steps[n]));
    }
}

TEST_CASE("interpolation clock") {
    FlightPath fp;
    fp.positions = {0.0, 5.0, -3.5};
    const GasTrajectory traj = interpolate(fp);
    CHECK(traj.collision_times[0] == 0.0);
    CHECK(traj.collision_times[1] == 5.0);
    CHECK(traj.collision_times[2] == 13.5);
    SUBCASE("constant flight has zero clock") {
        FlightPath flat;
        flat.positions = {0.0, 0.0, 0.0};
        const GasTrajectory t2 = interpolate(flat);
        CHECK(t2.collision_times.back() == 0.0);
    }
}

TEST_CASE("position_at matches the hand trajectory") {
    FlightPath fp;
    fp.positions = {0.0, 5.0, -3.5};
    const GasTrajectory traj = interpolate(fp);
    CHECK(position_at(traj, 3.0) == doctest::Approx(3.0));
    CHECK(position_at(traj, 7.0) == doctest::Approx(3.0));  // turned at 5, two units back
    for (std::size_t n = 0; n < traj.positions.size(); ++n)
        CHECK(position_at(traj, traj.collision_times[n]) == traj.positions[n]);
    CHECK_THROWS_AS(position_at(traj, 14.0), std::out_of_range);
    CHECK_THROWS_AS(position_at(traj, -1.0), std::out_of_range);
}

TEST_CASE("zero-length segments are instantaneous") {
    FlightPath fp;
    fp.positions = {0.0, 2.0, 2.0, 2.0, -1.0};
    const GasTrajectory traj = interpolate(fp);
    CHECK(position_at(traj, 2.0) == 2.0);
    CHECK(position_at(traj, 3.0) == doctest::Approx(1.0));
}

TEST_CASE("unit gaps and simple walk give T_n = n") {
    MediumWindow window(GapLaw::deterministic(1.0), 3);
    Rng rng(17);
    const WalkPath path = sample_walk(IncrementLaw::simple_symmetric(), 1000, rng);
    const GasTrajectory traj = interpolate(flight(window, path));
    for (std::size_t n = 0; n < traj.collision_times.size(); ++n)
        REQUIRE(traj.collision_times[n] == doctest::Approx(static_cast<double>(n)));
}

TEST_CASE("gas trajectory is 1-Lipschitz: property over random time pairs") {
    MediumWindow window(GapLaw::pareto(1.5, 1.0), 31);
    Rng rng(32);
    const GasRun run = simulate_gas(IncrementLaw::simple_symmetric(), window, 2000.0, rng);
    const double horizon = run.traj.collision_times.back();
    Rng pick(33);
    for (int i = 0; i < 10000; ++i) {
        const double t1 = pick.uniform01() * horizon;
        const double t2 = pick.uniform01() * horizon;
        const double x1 = position_at(run.traj, t1);
        const double x2 = position_at(run.traj, t2);
        REQUIRE(std::fabs(x1 - x2) <= std::fabs(t1 - t2) * (1.0 + 1e-12) + 1e-9);
    }
}

TEST_CASE("simulate_gas covers the requested horizon") {
    SUBCASE("finite mean gaps") {
        MediumWindow window(GapLaw::pareto(1.5, 1.0), 41);
        Rng rng(42);
        const GasRun run = simulate_gas(IncrementLaw::simple_symmetric(), window, 500.0, rng);
        CHECK(run.traj.collision_times.back() >= 500.0);
    }
    SUBCASE("lazy increments force horizon doubling") {
        MediumWindow window(GapLaw::deterministic(1.0), 43);
        Rng rng(44);
        const GasRun run = simulate_gas(IncrementLaw::lazy_symmetric(0.8), window, 100.0, rng);
        CHECK(run.traj.collision_times.back() >= 100.0);
    }
    SUBCASE("infinite mean gaps") {
        MediumWindow window(GapLaw::pareto(0.5, 1.0), 45);
        Rng rng(46);
        const GasRun run = simulate_gas(IncrementLaw::simple_symmetric(), window, 1000.0, rng);
        CHECK(run.traj.collision_times.back() >= 1000.0);
    }
}

TEST_CASE("streaming gas position agrees with the stored trajectory") {
    for (int r = 0; r < 50; ++r) {
        MediumWindow wa(GapLaw::pareto(1.5, 1.0), 600 + r);
        MediumWindow wb(GapLaw::pareto(1.5, 1.0), 600 + r);
        Rng ra = Rng::substream(9000, 1, r);
        Rng rb = Rng::substream(9000, 1, r);
        const double t = 200.0 + 10.0 * r;
        const double streamed = gas_position_at(IncrementLaw::simple_symmetric(), wa, t, ra);
        const GasRun run = simulate_gas(IncrementLaw::simple_symmetric(), wb, t, rb);
        REQUIRE(streamed == doctest::Approx(position_at(run.traj, t)).epsilon(1e-12));
    }
}

TEST_CASE("trajectory csv") {
    MediumWindow window(GapLaw::deterministic(2.0), 3);
    GasRun run;
    run.walk.steps = {0, 1};
    run.flight.positions = {0.0, 2.0};
    run.traj.collision_times = {0.0, 2.0};
    run.traj.positions = {0.0, 2.0};
    std::ostringstream os;
    write_trajectory_csv(os, run);
    CHECK(os.str() == "n,s,y,t\n0,0,0,0\n1,1,2,2\n");
}

}  // TEST_SUITE
