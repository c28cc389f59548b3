#pragma once

namespace rdpf {

// Real branches of the Lambert W function, the inverse of w -> w*exp(w).
//
// The principal branch W0 is defined for x >= -1/e and takes values >= -1.
// The secondary branch W-1 is defined for -1/e <= x < 0 and takes values <= -1.
// Inputs within 1e-15 of the branch point -1/e are snapped to it, since the
// downstream closed forms evaluate there exactly at zero perception level.

enum class LambertBranch { principal, secondary };

struct BranchedLambertResult {
    double value;
    LambertBranch branch;
    double residual;  // |W*exp(W) - x|
};

// Throw std::domain_error outside the branch domain.
double lambert_w0(double x);
double lambert_wm1(double x);

// Same values plus the forward-map residual, which is asserted <= 1e-12.
BranchedLambertResult lambert_w0_checked(double x);
BranchedLambertResult lambert_wm1_checked(double x);

}  // namespace rdpf
