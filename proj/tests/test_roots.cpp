#include <wpcn/roots.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace wpcn;
using Catch::Approx;

TEST_CASE("z ln z - z + 1 = A") {
    CHECK(solve_f_eq_A(1.0) == Approx(std::exp(1.0)).epsilon(1e-12));

    const double z = solve_f_eq_A(10.0);
    CHECK(z == Approx(8.174364667724810).epsilon(1e-12)); // 30-digit reference
    CHECK(z * std::log(z) - z + 1.0 == Approx(10.0).epsilon(1e-12));
    // the single-user downlink share follows from the root
    CHECK((z - 1.0) / (10.0 + z - 1.0) == Approx(0.417736830824802).epsilon(1e-12));

    SECTION("the root is always above 1, even for A < 1") {
        for (double A : {1e-12, 1e-6, 0.01, 0.3, 0.99})
            CHECK(solve_f_eq_A(A) > 1.0);
    }
    SECTION("invalid right-hand sides") {
        CHECK_THROWS_AS(solve_f_eq_A(0.0), invalid_input);
        CHECK_THROWS_AS(solve_f_eq_A(-1.0), invalid_input);
        CHECK_THROWS_AS(solve_f_eq_A(std::nan("")), invalid_input);
    }
    SECTION("iteration cap is reported with the bracket") {
        SolverControls c;
        c.max_iters = 1;
        try {
            solve_f_eq_A(1234.5, c);
            FAIL("expected iteration_limit");
        } catch (const iteration_limit& e) {
            CHECK(e.lower() <= e.upper());
        }
    }
}

TEST_CASE("round trip on random A and monotonicity") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> logA(-6.0, 6.0);
    for (int k = 0; k < 1000; ++k) {
        const double A = std::pow(10.0, logA(rng));
        const double z = solve_f_eq_A(A);
        // independent evaluation: log form, relative error
        const double back = z * std::log(z) - z + 1.0;
        CHECK(std::abs(back - A) <= 1e-9 * A + 1e-14);
    }
    double prev = 1.0;
    for (double A : {1e-8, 1e-3, 0.1, 1.0, 10.0, 1e3, 1e6, 1e12}) {
        const double z = solve_f_eq_A(A);
        CHECK(z > prev);
        prev = z;
    }
}

TEST_CASE("tiny A keeps relative accuracy") {
    // near z = 1, f(z) ~ (z - 1)^2 / 2
    const double A = 1e-12;
    const double z = solve_f_eq_A(A);
    CHECK((z - 1.0) == Approx(std::sqrt(2.0 * A)).epsilon(1e-3));
    CHECK(f_of_z(z) == Approx(A).epsilon(1e-9));
}

TEST_CASE("ln(1 + x) - x/(1 + x) = c") {
    // t(1) = ln 2 - 1/2
    CHECK(solve_t_eq_c(std::log(2.0) - 0.5) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(solve_t_eq_c(0.0), invalid_input);
    CHECK_THROWS_AS(solve_t_eq_c(-2.0), invalid_input);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> logx(-5.0, 8.0);
    for (int k = 0; k < 1000; ++k) {
        const double x = std::pow(10.0, logx(rng));
        const double c = std::log1p(x) - x / (1.0 + x);
        CHECK(solve_t_eq_c(c) == Approx(x).epsilon(1e-9));
    }
    double prev = 0.0;
    for (double c : {1e-10, 1e-4, 0.1, 1.0, 5.0, 50.0}) {
        const double x = solve_t_eq_c(c);
        CHECK(x > prev);
        prev = x;
    }
}

TEST_CASE("helper functions") {
    CHECK(f_of_z(1.0) == 0.0);
    CHECK(f_of_z(std::exp(1.0)) == Approx(1.0).epsilon(1e-15));
    CHECK(t_kkt(0.0) == 0.0);
    CHECK(t_kkt(1.0) == Approx(std::log(2.0) - 0.5).epsilon(1e-15));
    CHECK(t_kkt(1e-6) == Approx(0.5e-12).epsilon(1e-5));
}
