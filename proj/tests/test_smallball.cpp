#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wscap/smallball.hpp"

TEST_CASE("series matches high-precision reference values") {
    // References evaluated independently with 30-digit arithmetic.
    REQUIRE(wscap::sigma(0.5) ==
            Catch::Approx(0.0091569902897607558).epsilon(1e-13));
    REQUIRE(wscap::sigma(0.6) ==
            Catch::Approx(0.041362463121377376).epsilon(1e-13));
    REQUIRE(wscap::sigma(0.8) ==
            Catch::Approx(0.18524190726662208).epsilon(1e-13));
    REQUIRE(wscap::sigma(1.0) ==
            Catch::Approx(0.37077742979952391).epsilon(1e-13));
    REQUIRE(wscap::sigma(1.5) ==
            Catch::Approx(0.73278478561693902).epsilon(1e-13));
}

TEST_CASE("truncation bookkeeping is honest") {
    const auto v = wscap::sigma_series(1.2, 1e-14);
    REQUIRE(v.truncation_terms >= 2);
    REQUIRE(v.truncation_bound >= 0.0);
    REQUIRE(v.truncation_bound < 1e-13 * v.value);
    // Alternating series: adding the bound brackets the limit.
    const auto crude = wscap::sigma_series(1.2, 1e-3);
    REQUIRE(std::abs(crude.value - v.value) <= crude.truncation_bound);
}

TEST_CASE("asymptotic form is exact in the small-radius limit") {
    for (double r : {0.5, 0.4, 0.3, 0.2}) {
        const double ratio = wscap::sigma(r) / wscap::sigma_asymptotic(r);
        REQUIRE(ratio == Catch::Approx(1.0).margin(1e-6));
        REQUIRE(ratio <= 1.0);  // first omitted term is negative
    }
}

TEST_CASE("sigma is increasing and tends to one") {
    double prev = 0;
    for (double r = 0.3; r < 4.0; r += 0.1) {
        const double s = wscap::sigma(r);
        REQUIRE(s > prev);
        REQUIRE(s < 1.0);
        prev = s;
    }
    REQUIRE(wscap::sigma(6.0) > 0.999999);
}

TEST_CASE("invalid arguments are rejected") {
    REQUIRE_THROWS_AS(wscap::sigma_series(0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(wscap::sigma_series(-1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(wscap::sigma_series(1.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(wscap::sigma_asymptotic(0.0), std::invalid_argument);
}
