#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rdpf/lambert.hpp"

using namespace rdpf;

namespace {

// Independent fixed-point oracle for the principal branch: Newton iteration
// on f(w) = w + log(w) - log(x), valid for x > 0.
double newton_w0_oracle(double x) {
    double w = 1.0;
    for (int i = 0; i < 200; ++i) {
        double f = w + std::log(w) - std::log(x);
        w -= f / (1.0 + 1.0 / w);
    }
    return w;
}

// Independent bisection oracle for the secondary branch on w in [-20, -1].
double bisect_wm1_oracle(double x) {
    double lo = -20.0, hi = -1.0;
    auto f = [&](double w) { return w * std::exp(w) - x; };
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        // w*e^w decreases from ~0- down to -1/e as w runs from -20 to -1
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("principal branch anchor values") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));

    // Omega constant, frozen from the Newton oracle.
    double omega = newton_w0_oracle(1.0);
    CHECK(omega == doctest::Approx(0.5671432904097838).epsilon(1e-13));
    CHECK(lambert_w0(1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-13));
}

TEST_CASE("secondary branch anchor values") {
    CHECK(lambert_wm1(-std::exp(-1.0)) == -1.0);
    // g(P) at P = 0 evaluates the branch point through exp(-(2*0+1)).
    CHECK(lambert_wm1(-std::exp(-(2.0 * 0.0 + 1.0))) == -1.0);

    double oracle = bisect_wm1_oracle(-0.1);
    CHECK(oracle == doctest::Approx(-3.5771520639572972).epsilon(1e-12));
    CHECK(lambert_wm1(-0.1) == doctest::Approx(-3.5771520639572972).epsilon(1e-13));
}

TEST_CASE("round trip residual on both branches") {
    const double branch_point = -std::exp(-1.0);
    for (int i = 0; i < 1000; ++i) {
        double t = (i + 0.5) / 1000.0;
        double x0 = branch_point + t * (10.0 - branch_point);
        BranchedLambertResult r0 = lambert_w0_checked(x0);
        CHECK(r0.residual <= 1e-12);
        CHECK(r0.value >= -1.0);

        double xm = branch_point * (1.0 - t);  // sweeps (-1/e, 0)
        if (xm < 0.0) {
            BranchedLambertResult rm = lambert_wm1_checked(xm);
            CHECK(rm.residual <= 1e-12);
            CHECK(rm.value <= -1.0);
        }
    }
}

TEST_CASE("branch ordering between the branch point and zero") {
    for (double x : {-0.3678, -0.36, -0.3, -0.2, -0.1, -0.05, -0.01, -1e-4, -1e-8}) {
        double w0 = lambert_w0(x);
        double wm1 = lambert_wm1(x);
        CHECK(wm1 <= -1.0);
        CHECK(w0 >= -1.0);
        CHECK(w0 < 0.0);
        CHECK(wm1 <= w0);
    }
}

TEST_CASE("monotonicity on samples") {
    double prev = lambert_w0(-std::exp(-1.0));
    for (int i = 1; i <= 200; ++i) {
        double x = -std::exp(-1.0) + i * 0.05;
        double w = lambert_w0(x);
        CHECK(w > prev);
        prev = w;
    }
    prev = lambert_wm1(-std::exp(-1.0));
    for (int i = 1; i <= 200; ++i) {
        double x = -std::exp(-1.0) * (1.0 - i / 201.0);
        double w = lambert_wm1(x);
        CHECK(w < prev);
        prev = w;
    }
}

TEST_CASE("domain errors and branch-point snapping") {
    CHECK_THROWS_AS(lambert_w0(-0.4), std::domain_error);
    CHECK_THROWS_AS(lambert_wm1(-0.4), std::domain_error);
    CHECK_THROWS_AS(lambert_wm1(0.0), std::domain_error);
    CHECK_THROWS_AS(lambert_wm1(0.5), std::domain_error);

    // Inputs a hair below -1/e snap to the branch point instead of failing.
    double just_below = -std::exp(-1.0) - 5e-16;
    CHECK(lambert_w0(just_below) == -1.0);
    CHECK(lambert_wm1(just_below) == -1.0);
}

TEST_CASE("checked variants label their branch") {
    BranchedLambertResult r0 = lambert_w0_checked(0.5);
    CHECK(r0.branch == LambertBranch::principal);
    BranchedLambertResult rm = lambert_wm1_checked(-0.2);
    CHECK(rm.branch == LambertBranch::secondary);
}
