#pragma once

#include <optional>
#include <string_view>

#include "rdpf/linalg.hpp"

namespace rdpf {

// The five divergences with Gaussian closed forms used as perception metrics.
// All are evaluated between equal-mean Gaussians; "direct" KL puts the source
// distribution first, "reverse" puts the reconstruction first.
enum class PerceptionMetric { kl_direct, kl_reverse, gjs, hellinger_sq, wasserstein2_sq };

constexpr PerceptionMetric kAllMetrics[] = {
    PerceptionMetric::kl_direct, PerceptionMetric::kl_reverse, PerceptionMetric::gjs,
    PerceptionMetric::hellinger_sq, PerceptionMetric::wasserstein2_sq};

// CLI names: kl, rkl, gjs, h2, w2.
const char* metric_name(PerceptionMetric metric);
std::optional<PerceptionMetric> metric_from_name(std::string_view name);

// Whether the metric is an integral of densities (false only for W2, which is
// a coupling infimum and has no quadrature oracle).
bool metric_has_density_integral(PerceptionMetric metric);

// Least upper bound of the metric's range: 2 for squared Hellinger, +inf else.
double metric_upper_bound(PerceptionMetric metric);

// Divergence between N(m, var_x) and N(m, var_xhat). Nonnegative, zero iff the
// variances coincide; squared Hellinger stays below 2.
double divergence_scalar(PerceptionMetric metric, double var_x, double var_xhat);

// Divergence between zero-mean Gaussians whose covariances share an eigenbasis
// with aligned eigenvalue order. KL/GJS/W2 tensorize additively over the pairs;
// squared Hellinger composes as 2*(1 - prod(1 - H_i^2/2)).
double divergence_commuting(PerceptionMetric metric, const Vec& eigvals_x, const Vec& eigvals_xhat);

// Gelbrich trace formula Tr[Sx + Sxh - 2 (Sxh^1/2 Sx Sxh^1/2)^1/2] for
// arbitrary positive definite covariances.
double w2_full_matrix(const Matrix& cov_x, const Matrix& cov_xhat);

// Determinant form 2*(1 - 2^(N/2) |Sx Sxh|^(1/4) / |Sx + Sxh|^(1/2)).
double hellinger_sq_full_matrix(const Matrix& cov_x, const Matrix& cov_xhat);

}  // namespace rdpf
