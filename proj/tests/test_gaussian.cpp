#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "wscap/gaussian.hpp"
#include "wscap/stats.hpp"

using wscap::Path;
using wscap::RngStream;
using wscap::TimeGrid;

TEST_CASE("grid validation and geometry") {
    REQUIRE_THROWS_AS(TimeGrid(3), std::invalid_argument);
    REQUIRE_THROWS_AS(TimeGrid(8, -1.0), std::invalid_argument);
    const TimeGrid g(6, 2.0);
    REQUIRE(g.cells() == 64);
    REQUIRE(g.size() == 65);
    REQUIRE(g.dt() == Catch::Approx(2.0 / 64));
    REQUIRE(g.time(64) == Catch::Approx(2.0));
}

TEST_CASE("brownian marginals have variance t") {
    const TimeGrid grid(6);
    const long n = 20000;
    std::vector<double> at_quarter, at_one;
    const RngStream base{314, 0, 0};
    for (long i = 0; i < n; ++i) {
        const Path p = wscap::sample_brownian(grid, base.replicate(std::uint32_t(i)));
        at_quarter.push_back(p[grid.size() / 4]);
        at_one.push_back(p.back());
    }
    REQUIRE(std::abs(wscap::sample_mean(at_one)) < 4.0 / std::sqrt(double(n)));
    REQUIRE(wscap::sample_variance(at_quarter) == Catch::Approx(0.25).margin(0.02));
    REQUIRE(wscap::sample_variance(at_one) == Catch::Approx(1.0).margin(0.05));
}

TEST_CASE("one evolution step preserves the marginal law") {
    // U_{s+ds}(1) should again be standard normal; compare with fresh
    // Brownian endpoints via a two-sample KS test.
    const TimeGrid grid(6);
    const long n = 8000;
    std::vector<double> evolved, fresh;
    const RngStream base{2718, 0, 0};
    for (long i = 0; i < n; ++i) {
        const auto rep = base.replicate(std::uint32_t(i));
        Path p = wscap::ou_initial(grid, rep.substream(0));
        wscap::ou_evolve_inplace(p, 0.7, grid, rep.substream(1));
        evolved.push_back(p.back());
        fresh.push_back(wscap::sample_brownian(grid, rep.substream(2)).back());
    }
    REQUIRE(wscap::ks_two_sample_pvalue(evolved, fresh) > 1e-4);
}

TEST_CASE("stationary covariance decays as exp(-(S-s)/2)") {
    const TimeGrid grid(5);
    const double ds = 1.2;
    const long n = 40000;
    std::vector<double> x, y;
    const RngStream base{112, 0, 0};
    for (long i = 0; i < n; ++i) {
        const auto rep = base.replicate(std::uint32_t(i));
        Path p = wscap::ou_initial(grid, rep.substream(0));
        x.push_back(p.back());
        wscap::ou_evolve_inplace(p, ds, grid, rep.substream(1));
        y.push_back(p.back());
    }
    double cov = 0;
    for (long i = 0; i < n; ++i) cov += x[i] * y[i];
    cov /= n;
    REQUIRE(cov == Catch::Approx(std::exp(-ds / 2)).margin(4.0 / std::sqrt(double(n))));
}

TEST_CASE("ensemble layout is reproducible and respects zero steps") {
    const TimeGrid grid(5);
    const RngStream s{55, 3, 0};
    const auto e1 = wscap::ou_ensemble({0.0, 0.5, 0.5, 1.25}, grid, s);
    const auto e2 = wscap::ou_ensemble({0.0, 0.5, 0.5, 1.25}, grid, s);
    REQUIRE(e1.values == e2.values);
    REQUIRE(e1.values[1] == e1.values[2]);  // ds = 0 repeats the path
    REQUIRE(e1.values[0] != e1.values[3]);
    REQUIRE_THROWS_AS(wscap::ou_ensemble({1.0, 0.5}, grid, s),
                      std::invalid_argument);
}

TEST_CASE("sup norm respects the horizon prefix") {
    const TimeGrid grid(4);
    Path p(grid.size(), 0.0);
    p[4] = -2.0;
    p[12] = 5.0;
    REQUIRE(wscap::sup_norm(p, grid, 1.0) == 5.0);
    REQUIRE(wscap::sup_norm(p, grid, 0.5) == 2.0);
    REQUIRE(wscap::sup_norm(p, grid, 0.1) == 0.0);
    REQUIRE_THROWS_AS(wscap::sup_norm(p, grid, 2.0), std::invalid_argument);
}

TEST_CASE("bridge weight is a probability and vanishes on exit") {
    const TimeGrid grid(6);
    Path inside(grid.size(), 0.0);
    for (long i = 0; i < grid.size(); ++i)
        inside[i] = 0.3 * std::sin(6.0 * grid.time(i));
    const double w = wscap::barrier_survival_weight(inside, 1.0, grid);
    REQUIRE(w > 0.0);
    REQUIRE(w <= 1.0);
    // Tighter barrier, smaller survival.
    REQUIRE(wscap::barrier_survival_weight(inside, 0.4, grid) < w);

    Path out = inside;
    out[10] = 1.5;
    REQUIRE(wscap::barrier_survival_weight(out, 1.0, grid) == 0.0);
}

TEST_CASE("bridge correction converges to the grid indicator as dt -> 0") {
    // For a fixed smooth path strictly inside the barrier the correction
    // factor tends to 1 with grid refinement.
    double prev = 0.0;
    for (int k : {6, 8, 10, 12}) {
        const TimeGrid grid(k);
        Path p(grid.size());
        for (long i = 0; i < grid.size(); ++i)
            p[i] = 0.5 * std::sin(3.0 * grid.time(i));
        const double w = wscap::barrier_survival_weight(p, 1.0, grid);
        REQUIRE(w >= prev);
        prev = w;
    }
    REQUIRE(prev > 0.999);
}

TEST_CASE("planar confinement shrinks with the radius and is deterministic") {
    const TimeGrid grid(6);
    const wscap::ConfinementRegion tight(0.5, 0.4), loose(0.5, 1.5);
    long tight_in = 0, loose_in = 0;
    const RngStream base{4242, 0, 0};
    const long n = 4000;
    for (long i = 0; i < n; ++i) {
        const auto rep = base.replicate(std::uint32_t(i));
        tight_in += wscap::planar_confinement(tight, grid, rep);
        loose_in += wscap::planar_confinement(loose, grid, rep);
    }
    REQUIRE(tight_in < loose_in);
    REQUIRE(loose_in > 0);
    long again = 0;
    for (long i = 0; i < n; ++i)
        again += wscap::planar_confinement(tight, grid, base.replicate(std::uint32_t(i)));
    REQUIRE(again == tight_in);
    REQUIRE_THROWS_AS(wscap::ConfinementRegion(1.5, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(wscap::ConfinementRegion(0.5, -1.0), std::invalid_argument);
}
