#include "rdpf/lambert.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rdpf/errors.hpp"

namespace rdpf {

namespace {

const double kBranchPoint = -std::exp(-1.0);  // -1/e
const double kBranchSnap = 1e-15;

// Series around the branch point: w = -1 + p - p^2/3 + 11 p^3/72 - ...,
// with p = sqrt(2(e*x + 1)). The secondary branch uses p -> -p.
double branch_point_series(double p) {
    double w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
    return w;
}

double halley_refine(double x, double w) {
    for (int i = 0; i < 60; ++i) {
        double ew = std::exp(w);
        double f = w * ew - x;
        double wp1 = w + 1.0;
        if (wp1 == 0.0) break;  // branch point; seed already exact there
        double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        double wn = w - f / denom;
        bool done = std::abs(wn - w) <= 1e-14 * std::abs(wn);
        w = wn;
        if (done) break;
    }
    return w;
}

double check_residual(double x, double w, const char* name) {
    double residual = std::abs(w * std::exp(w) - x);
    if (!(residual <= 1e-12)) {
        throw NumericalError(std::string(name) + ": residual " + std::to_string(residual) +
                             " above 1e-12 at x=" + std::to_string(x));
    }
    return residual;
}

}  // namespace

double lambert_w0(double x) {
    if (std::isnan(x)) throw std::domain_error("lambert_w0: NaN input");
    if (x < kBranchPoint) {
        if (x >= kBranchPoint - kBranchSnap) return -1.0;
        throw std::domain_error("lambert_w0: x < -1/e");
    }
    if (x - kBranchPoint <= kBranchSnap) return -1.0;
    if (x == 0.0) return 0.0;

    double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    if (p < 1e-4) return branch_point_series(p);

    double w;
    if (x < -0.25) {
        w = branch_point_series(p);
    } else if (x < 3.0) {
        w = std::log1p(x);
    } else {
        double l1 = std::log(x);
        double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }
    return halley_refine(x, w);
}

double lambert_wm1(double x) {
    if (std::isnan(x)) throw std::domain_error("lambert_wm1: NaN input");
    if (x >= 0.0) throw std::domain_error("lambert_wm1: x >= 0");
    if (x < kBranchPoint) {
        if (x >= kBranchPoint - kBranchSnap) return -1.0;
        throw std::domain_error("lambert_wm1: x < -1/e");
    }
    if (x - kBranchPoint <= kBranchSnap) return -1.0;

    double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    if (p < 1e-4) return branch_point_series(-p);

    double w;
    if (x < -0.25) {
        w = branch_point_series(-p);
    } else {
        double l1 = std::log(-x);
        double l2 = std::log(-l1);
        w = l1 - l2 + l2 / l1;
    }
    return halley_refine(x, w);
}

BranchedLambertResult lambert_w0_checked(double x) {
    double w = lambert_w0(x);
    double residual = check_residual(x, w, "lambert_w0");
    return {w, LambertBranch::principal, residual};
}

BranchedLambertResult lambert_wm1_checked(double x) {
    double w = lambert_wm1(x);
    double residual = check_residual(x, w, "lambert_wm1");
    return {w, LambertBranch::secondary, residual};
}

}  // namespace rdpf
