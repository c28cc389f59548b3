#pragma once

#include <optional>

#include "rdpf/gaussian.hpp"
#include "rdpf/scalar_rdpf.hpp"

namespace rdpf {

// Prices on distortion (s1 > 0) and perception (s2 >= 0). s2 = 0 leaves the
// perception constraint unpriced and recovers the classical rate-distortion
// solution.
struct LagrangePair {
    double s1 = 1.0;
    double s2 = 1.0;
};

// Per-dimension allocations iterated by the alternating minimization.
struct AllocationState {
    Vec dist;  // D_i > 0 after the first half-step
    Vec perc;  // P_i >= 0
    int iteration = 0;
};

struct AlgorithmTrace {
    Vec gaps;               // ||(D,P)^(n) - (D,P)^(n-1)||_2 per iteration
    Vec lagrangian_values;  // recorded after every half-step (two per iteration)
    bool converged = false;
    int iterations_used = 0;
};

struct MultiRdpSolution {
    double total_dist = 0.0;
    double total_perc = 0.0;
    double rate = 0.0;  // nats, sum of the per-dimension closed forms
    AllocationState allocation;
    VectorRealization realization;
    AlgorithmTrace trace;
    std::vector<bool> perc_at_boundary;  // coordinates whose perception constraint never binds
};

// Perception tensorization map: identity for everything except squared
// Hellinger, which composes through h(x) = -log(1 - x/2).
double hs_perception_transform(double perc);
double hs_perception_transform_inv(double transformed);
double perception_compose_term(PerceptionMetric metric, double perc);       // h_m(P_i)
double perception_compose_term_dperc(PerceptionMetric metric, double perc); // h_m'(P_i)
double perception_total(PerceptionMetric metric, const Vec& perc_alloc);    // h_m^-1(sum h_m)

// Stationary distortion allocation for fixed perception levels: the unique
// solution of dR_i/dD_i + s1 = 0, falling back to the distortion-only
// stationary point 1/(2*s1) when that lies outside the both-active region.
Vec solve_subproblem_dist(PerceptionMetric metric, const Vec& eigvals, const Vec& perc_alloc,
                          double s1);

struct SubproblemPercResult {
    Vec perc;
    std::vector<bool> at_boundary;  // no interior root: boundary of the active region returned
};

// Stationary perception allocation for fixed distortions: per-dimension root
// of dR_i/dP_i + s2*h_m'(P_i) on the region where the constraint binds, found
// by bracketing bisection. s2 = 0 returns the region boundary (the smallest
// perception level already achieving the rate-distortion value).
SubproblemPercResult solve_subproblem_perc(PerceptionMetric metric, const Vec& eigvals,
                                           const Vec& dist_alloc, double s2);

// Alternating minimization of sum_i R_i(D_i, P_i) + s1*sum D_i + s2*sum h(P_i),
// stopping when the iterate displacement drops to epsilon. Non-convergence
// within max_iters returns the partial solution with trace.converged = false.
MultiRdpSolution alternating_minimization(const GaussianSource& source, PerceptionMetric metric,
                                          LagrangePair lagrange, double epsilon, int max_iters,
                                          const AllocationState* init = nullptr);

// Default floor applied to s2 by the command-line driver for the metrics that
// blow up as the reconstruction variance vanishes (both KL directions, GJS).
double default_s2_floor(PerceptionMetric metric);

// Zero-perception distortion allocation: D_i = 2*lambda_i + 1/(2*s1)
// - sqrt(4*lambda_i^2 + 1/(4*s1^2)), evaluated in cancellation-free form.
// Always below 2*lambda_i; tends to it as s1 -> 0.
Vec perfect_realism_allocation(const Vec& eigvals, double s1);

struct WaterFillResult {
    Vec dist;     // min(1/(2*s1), lambda_i)
    double rate;  // nats
};

// Classical reverse water-filling baseline at water level 1/(2*s1).
WaterFillResult water_filling(const Vec& eigvals, double s1);

enum class ConvergenceClass { linear, sublinear };

struct RateEstimates {
    Vec gap_ratios;           // omega_{n+1} / omega_n
    double loglog_slope;      // power-model fit of log(gap) on log(n)
    double geometric_factor;  // exponential-model fit, exp(slope of log(gap) on n)
    double power_fit_r2 = 0.0;
    double exp_fit_r2 = 0.0;
    ConvergenceClass classification = ConvergenceClass::sublinear;
};

// Empirical decay classification of a gap trace; requires >= 5 usable gaps.
// Gaps at the floating-point floor (< 1e-13) are excluded from the fits.
RateEstimates measure_convergence_rate(const AlgorithmTrace& trace);

}  // namespace rdpf
