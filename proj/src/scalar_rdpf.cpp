#include "rdpf/scalar_rdpf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rdpf/errors.hpp"
#include "rdpf/lambert.hpp"

namespace rdpf {

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr double kHellingerCeil = 2.0 - 1e-9;
const double kInf = std::numeric_limits<double>::infinity();
const double kNaN = std::numeric_limits<double>::quiet_NaN();

double clamp_hellinger(double perc) { return perc >= kHellingerCeil ? kHellingerCeil : perc; }

void validate_inputs(PerceptionMetric metric, double var_x, double dist, double perc) {
    if (!(var_x > 0.0)) throw std::domain_error("scalar rdpf: variance must be > 0");
    if (!(dist > 0.0)) throw std::domain_error("scalar rdpf: distortion level must be > 0");
    if (!(perc >= 0.0)) throw std::domain_error("scalar rdpf: perception level must be >= 0");
    if (metric == PerceptionMetric::hellinger_sq && perc >= 2.0)
        throw std::domain_error("scalar rdpf: squared Hellinger perception level must be < 2");
}

// g(P) as used by the closed forms. Negative for the KL pair, >= 4 for GJS,
// in (1/2, 1] for squared Hellinger; W2 has no auxiliary.
double metric_g_aux(PerceptionMetric metric, double perc) {
    switch (metric) {
        case PerceptionMetric::kl_direct: {
            double arg = -std::exp(-(2.0 * perc + 1.0));
            if (arg == 0.0) return 0.0;
            return 1.0 / lambert_wm1(arg);
        }
        case PerceptionMetric::kl_reverse: {
            double arg = -std::exp(-(2.0 * perc + 1.0));
            if (arg == 0.0) return 0.0;
            return lambert_w0(arg);
        }
        case PerceptionMetric::gjs: {
            double arg = -2.0 * std::exp(-(4.0 * perc + 2.0));
            if (arg == 0.0) return kInf;
            // >= 4 for perc >= 0; rounding at perc = 0 can dip a hair below.
            return std::max(-2.0 * lambert_wm1(arg), 4.0);
        }
        case PerceptionMetric::hellinger_sq: {
            double half = 1.0 - 0.5 * clamp_hellinger(perc);
            double kappa = half * half * half * half;
            return 1.0 / (1.0 + std::sqrt(1.0 - kappa));
        }
        case PerceptionMetric::wasserstein2_sq:
            return kNaN;
    }
    throw std::logic_error("metric_g_aux: unknown metric");
}

struct CaseThreeDesign {
    double gain;
    double noise_var;
};

// Both constraints tight: the reconstruction variance sits at the perception
// floor v, the distortion equality fixes the gain, and the noise variance is
// whatever the distortion budget leaves over.
CaseThreeDesign case_three_design(double var_x, double dist, double floor_var) {
    double gain = (var_x + floor_var - dist) / (2.0 * var_x);
    double one_minus = 1.0 - gain;
    double noise_var = dist - one_minus * one_minus * var_x;
    if (noise_var < 0.0) {
        if (noise_var < -1e-12 * std::max(1.0, var_x))
            throw NumericalError("scalar rdpf: no nonnegative noise variance solves the tight-case equations "
                                 "(noise_var=" + std::to_string(noise_var) + ")");
        noise_var = 0.0;
    }
    return {gain, noise_var};
}

double rate_from_design(double var_x, double gain, double noise_var) {
    if (gain == 0.0) return 0.0;
    return 0.5 * std::log1p(gain * gain * var_x / noise_var);
}

}  // namespace

const char* region_name(RegionCase region) {
    switch (region) {
        case RegionCase::case1_distortion_active: return "I";
        case RegionCase::case2_perception_active: return "II";
        case RegionCase::case3_both_active: return "III";
    }
    return "?";
}

double recon_variance_floor(PerceptionMetric metric, double var_x, double perc) {
    if (!(var_x > 0.0)) throw std::domain_error("recon_variance_floor: variance must be > 0");
    if (!(perc >= 0.0)) throw std::domain_error("recon_variance_floor: perception level must be >= 0");
    switch (metric) {
        case PerceptionMetric::kl_direct:
        case PerceptionMetric::kl_reverse:
            return -metric_g_aux(metric, perc) * var_x;
        case PerceptionMetric::gjs: {
            double g = metric_g_aux(metric, perc);
            if (std::isinf(g)) return 0.0;
            double disc = std::sqrt(std::max(g * (g - 4.0), 0.0));
            return 2.0 * var_x / ((g - 2.0) + disc);
        }
        case PerceptionMetric::hellinger_sq: {
            if (perc >= 2.0)
                throw std::domain_error("recon_variance_floor: squared Hellinger level must be < 2");
            double g = metric_g_aux(metric, perc);
            return var_x * (2.0 * g - 1.0);
        }
        case PerceptionMetric::wasserstein2_sq: {
            double dev = std::sqrt(var_x) - std::sqrt(perc);
            return dev > 0.0 ? dev * dev : 0.0;
        }
    }
    throw std::logic_error("recon_variance_floor: unknown metric");
}

double recon_variance_floor_dperc(PerceptionMetric metric, double var_x, double perc) {
    double v = recon_variance_floor(metric, var_x, perc);
    if (v <= 0.0) return 0.0;  // floor saturated (W2 beyond full variance)
    double slope;  // d divergence / d recon variance, evaluated at the floor
    switch (metric) {
        case PerceptionMetric::kl_direct:
            slope = (v - var_x) / (2.0 * v * v);
            break;
        case PerceptionMetric::kl_reverse:
            slope = (v - var_x) / (2.0 * var_x * v);
            break;
        case PerceptionMetric::gjs: {
            double t = (var_x + v) * (var_x + v) / (var_x * v);
            slope = 0.25 * (0.5 - 1.0 / t) * (var_x + v) * (v - var_x) / (var_x * v * v);
            break;
        }
        case PerceptionMetric::hellinger_sq: {
            double sum = var_x + v;
            double bc = std::sqrt(2.0 * std::sqrt(var_x * v) / sum);
            slope = std::sqrt(var_x) * (v - var_x) / (std::sqrt(v) * sum * sum * bc);
            break;
        }
        case PerceptionMetric::wasserstein2_sq:
            slope = (std::sqrt(v) - std::sqrt(var_x)) / std::sqrt(v);
            break;
        default:
            throw std::logic_error("recon_variance_floor_dperc: unknown metric");
    }
    if (slope == 0.0) return -kInf;  // perc = 0, floor at the source variance
    return 1.0 / slope;
}

double perception_boundary(PerceptionMetric metric, double var_x, double dist) {
    if (!(var_x > 0.0) || !(dist > 0.0))
        throw std::domain_error("perception_boundary: variance and distortion must be > 0");
    double gap = std::abs(var_x - dist);
    if (gap == 0.0) {
        if (metric == PerceptionMetric::wasserstein2_sq) return var_x;
        return metric_upper_bound(metric);  // 2 for Hellinger, +inf otherwise
    }
    return divergence_scalar(metric, var_x, gap);
}

RegionCase classify_region(PerceptionMetric metric, double var_x, double dist, double perc) {
    validate_inputs(metric, var_x, dist, perc);
    double floor_var = recon_variance_floor(metric, var_x, perc);
    // A vanished floor (W2 with sqrt(perc) >= the source deviation) means the
    // perception constraint never binds; only the distortion cases remain.
    if (floor_var <= 0.0)
        return dist >= var_x ? RegionCase::case2_perception_active
                             : RegionCase::case1_distortion_active;
    if (std::abs(var_x - dist) <= floor_var + kBoundaryTol) return RegionCase::case3_both_active;
    return dist > var_x ? RegionCase::case2_perception_active : RegionCase::case1_distortion_active;
}

ScalarRdpSolution scalar_rdpf(PerceptionMetric metric, double var_x, double dist, double perc) {
    RegionCase region = classify_region(metric, var_x, dist, perc);
    ScalarRdpSolution sol;
    sol.region = region;
    sol.aux_g = metric_g_aux(metric, perc);
    switch (region) {
        case RegionCase::case1_distortion_active: {
            double gain = 1.0 - dist / var_x;
            sol.realization = {gain, dist - (1.0 - gain) * (1.0 - gain) * var_x};
            sol.rate = 0.5 * std::log(var_x / dist);
            break;
        }
        case RegionCase::case2_perception_active: {
            // Zero rate; noise variance solves the perception equality on the
            // branch minimizing the realized distortion.
            sol.realization = {0.0, recon_variance_floor(metric, var_x, perc)};
            sol.rate = 0.0;
            break;
        }
        case RegionCase::case3_both_active: {
            double floor_var = recon_variance_floor(metric, var_x, perc);
            CaseThreeDesign design = case_three_design(var_x, dist, floor_var);
            sol.realization = {design.gain, design.noise_var};
            sol.rate = rate_from_design(var_x, design.gain, design.noise_var);
            break;
        }
    }
    return sol;
}

double drate_ddistortion(PerceptionMetric metric, double var_x, double dist, double perc) {
    validate_inputs(metric, var_x, dist, perc);
    double floor_var = recon_variance_floor(metric, var_x, perc);
    if (std::abs(std::abs(var_x - dist) - floor_var) <= kBoundaryTol)
        throw std::domain_error("drate_ddistortion: (dist, perc) lies on a region boundary");
    if (std::abs(var_x - dist) < floor_var) {
        CaseThreeDesign design = case_three_design(var_x, dist, floor_var);
        return -design.gain / (2.0 * design.noise_var);
    }
    return dist < var_x ? -0.5 / dist : 0.0;
}

double drate_dperception(PerceptionMetric metric, double var_x, double dist, double perc) {
    validate_inputs(metric, var_x, dist, perc);
    if (perc == 0.0)
        return dist < 2.0 * var_x ? -kInf : 0.0;
    double floor_var = recon_variance_floor(metric, var_x, perc);
    if (std::abs(var_x - dist) > floor_var) return 0.0;
    if (floor_var <= 0.0) return 0.0;  // rate is identically zero around here

    CaseThreeDesign design = case_three_design(var_x, dist, floor_var);
    if (metric == PerceptionMetric::wasserstein2_sq) {
        double sd = std::sqrt(var_x);
        double sp = std::sqrt(perc);
        double dev = sd - sp;
        double outer = 2.0 * sd - sp;
        double num = dev * dev * dev * dev - (var_x - dist) * (var_x - dist);
        double den = sp * (dist - perc) * (sp - sd) * (outer * outer - dist);
        return 0.5 * num / den;
    }
    double dfloor = recon_variance_floor_dperc(metric, var_x, perc);
    return 0.5 * dfloor * (1.0 / floor_var - (1.0 - design.gain) / design.noise_var);
}

}  // namespace rdpf
