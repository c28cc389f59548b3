#pragma once

#include "rdpf/divergence.hpp"
#include "rdpf/gaussian.hpp"

namespace rdpf {

// Operating regions of the scalar problem: only the distortion constraint
// binds (I), only the perception constraint binds (II, zero rate), or both
// bind (III). Exactly one case holds per (D, P) input; boundary ties within
// 1e-12 are assigned to case III so both constraints stay certifiably tight.
enum class RegionCase {
    case1_distortion_active,
    case2_perception_active,
    case3_both_active,
};

const char* region_name(RegionCase region);

struct ScalarRdpSolution {
    double rate = 0.0;  // nats
    RegionCase region = RegionCase::case1_distortion_active;
    ScalarRealization realization;
    double aux_g = 0.0;  // the metric's g(P) auxiliary value; NaN for W2
};

// Smallest reconstruction variance whose divergence from var_x stays within
// perc. This is the reconstruction variance achieving case III and the
// perception-equality noise variance of case II. Equals var_x at perc = 0 and
// decreases toward 0 as perc grows (reaching 0 for W2 once sqrt(perc) exceeds
// the source deviation).
double recon_variance_floor(PerceptionMetric metric, double var_x, double perc);

// d/dP of recon_variance_floor, by the implicit function theorem on
// divergence(var_x, v) = perc. Negative; unbounded as perc -> 0.
double recon_variance_floor_dperc(PerceptionMetric metric, double var_x, double perc);

// Perception level at which (dist, P) leaves region III for fixed dist:
// the divergence between var_x and |var_x - dist|. Infinite for the KL/GJS
// metrics when dist == var_x.
double perception_boundary(PerceptionMetric metric, double var_x, double dist);

RegionCase classify_region(PerceptionMetric metric, double var_x, double dist, double perc);

// Closed-form scalar rate-distortion-perception value under MSE distortion,
// with the achieving linear realization xhat = a*x + w. Rates are in nats.
ScalarRdpSolution scalar_rdpf(PerceptionMetric metric, double var_x, double dist, double perc);

// Partial derivatives of the rate surface. drate_ddistortion throws
// std::domain_error on an exact region boundary; drate_dperception is
// continuous across boundaries and returns -inf at perc = 0 when the
// perception constraint can bind there.
double drate_ddistortion(PerceptionMetric metric, double var_x, double dist, double perc);
double drate_dperception(PerceptionMetric metric, double var_x, double dist, double perc);

}  // namespace rdpf
