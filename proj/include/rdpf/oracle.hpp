#pragma once

#include <cstdint>

#include "rdpf/divergence.hpp"
#include "rdpf/gaussian.hpp"
#include "rdpf/multivar.hpp"

namespace rdpf {

// Brute-force search lattice over the design variables (a, sigma_W^2).
struct GridSpec {
    double gain_lo = 0.0;
    double gain_hi = 1.5;
    double noise_lo = 1e-6;
    double noise_hi = 2.0;
    double resolution = 1e-3;

    static GridSpec default_for(double var_x);
};

struct GridOracleResult {
    double rate = 0.0;
    double gain = 0.0;
    double noise_var = 0.0;
    bool feasible_found = false;  // distinguishes infeasibility from resolution starvation
};

// Minimum of 1/2 log(1 + a^2 var_x / w) over lattice points satisfying both
// the distortion and the perception constraint. An upper bound on the true
// optimum by restriction to the lattice.
GridOracleResult grid_oracle_scalar(PerceptionMetric metric, double var_x, double dist, double perc,
                                    const GridSpec& grid);

// Minimum of sum_i R_i(D_i, P_i) + s1 sum D_i + s2 sum h(P_i) over a
// per-dimension (D_i, P_i) lattice with the given step. The objective is
// separable, so the joint minimum is the sum of per-dimension lattice minima.
// Restricted to N <= 2 to keep its cost meaningful as a cross-check.
double joint_grid_oracle(PerceptionMetric metric, const Vec& eigvals, double s1, double s2,
                         double resolution);

struct McEstimate {
    double mse_hat = 0.0;
    double perception_hat = 0.0;
    long n_samples = 0;
    std::uint64_t seed = 0;
};

// Simulates the channel xhat = a x + w with the mean-matching noise offset and
// returns the sample MSE together with the divergence of the sample variances
// (the induced reconstruction is Gaussian, so the variance plug-in is the
// consistent estimate). Deterministic given the seed.
McEstimate monte_carlo_channel(PerceptionMetric metric, const ScalarRealization& realization,
                               const ScalarGaussian& source, long n, std::uint64_t seed);

// Vector version: the realization commutes with the source covariance, so the
// channel decouples in the eigenbasis; the plug-in divergence composes the
// per-dimension sample variances.
McEstimate monte_carlo_channel(PerceptionMetric metric, const VectorRealization& realization,
                               const GaussianSource& source, long n, std::uint64_t seed);

struct KktResidual {
    Vec stationarity_dist;           // dR_i/dD_i + s1
    Vec stationarity_perc;           // dR_i/dP_i + s2 h'(P_i)
    std::vector<bool> on_boundary;   // coordinates flagged instead of differentiated
};

KktResidual kkt_residual(PerceptionMetric metric, const Vec& eigvals, const Vec& dist_alloc,
                         const Vec& perc_alloc, LagrangePair lagrange);

// Adaptive-quadrature evaluation of the defining density integral over a
// +-12 sigma window. Rejects W2 (no density integral).
double quadrature_divergence(PerceptionMetric metric, double var_x, double var_xhat);

}  // namespace rdpf
