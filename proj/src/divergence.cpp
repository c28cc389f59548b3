#include "rdpf/divergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rdpf {

namespace {

void require_positive_pair(double var_x, double var_xhat) {
    if (!(var_x > 0.0) || !(var_xhat > 0.0))
        throw std::domain_error("divergence: variances must be > 0");
}

double kl_gaussian(double var_first, double var_second) {
    // KL(N(m, var_first) || N(m, var_second))
    return 0.5 * (std::log(var_second / var_first) + var_first / var_second - 1.0);
}

// Product of eigenvalues of a symmetric matrix; inputs here are SPD so the
// log-domain sum avoids overflow for larger N.
double log_det_spd(const Matrix& m) {
    EighResult e = eigh_jacobi(m);
    double s = 0.0;
    for (double lam : e.values) {
        if (lam <= 0.0) throw std::domain_error("log_det_spd: matrix not positive definite");
        s += std::log(lam);
    }
    return s;
}

}  // namespace

const char* metric_name(PerceptionMetric metric) {
    switch (metric) {
        case PerceptionMetric::kl_direct: return "kl";
        case PerceptionMetric::kl_reverse: return "rkl";
        case PerceptionMetric::gjs: return "gjs";
        case PerceptionMetric::hellinger_sq: return "h2";
        case PerceptionMetric::wasserstein2_sq: return "w2";
    }
    return "?";
}

std::optional<PerceptionMetric> metric_from_name(std::string_view name) {
    for (PerceptionMetric m : kAllMetrics)
        if (name == metric_name(m)) return m;
    return std::nullopt;
}

bool metric_has_density_integral(PerceptionMetric metric) {
    return metric != PerceptionMetric::wasserstein2_sq;
}

double metric_upper_bound(PerceptionMetric metric) {
    return metric == PerceptionMetric::hellinger_sq ? 2.0
                                                    : std::numeric_limits<double>::infinity();
}

double divergence_scalar(PerceptionMetric metric, double var_x, double var_xhat) {
    require_positive_pair(var_x, var_xhat);
    switch (metric) {
        case PerceptionMetric::kl_direct:
            return kl_gaussian(var_x, var_xhat);
        case PerceptionMetric::kl_reverse:
            return kl_gaussian(var_xhat, var_x);
        case PerceptionMetric::gjs: {
            double t = (var_x + var_xhat) * (var_x + var_xhat) / (var_x * var_xhat);
            return 0.25 * (-std::log(0.25 * t) + 0.5 * t - 2.0);
        }
        case PerceptionMetric::hellinger_sq: {
            double bc = std::sqrt(2.0 * std::sqrt(var_x * var_xhat) / (var_x + var_xhat));
            return 2.0 * (1.0 - bc);
        }
        case PerceptionMetric::wasserstein2_sq: {
            double d = std::sqrt(var_x) - std::sqrt(var_xhat);
            return d * d;
        }
    }
    throw std::logic_error("divergence_scalar: unknown metric");
}

double divergence_commuting(PerceptionMetric metric, const Vec& eigvals_x, const Vec& eigvals_xhat) {
    if (eigvals_x.size() != eigvals_xhat.size())
        throw std::invalid_argument("divergence_commuting: length mismatch");
    if (metric == PerceptionMetric::hellinger_sq) {
        double prod = 1.0;
        for (std::size_t i = 0; i < eigvals_x.size(); ++i)
            prod *= 1.0 - 0.5 * divergence_scalar(metric, eigvals_x[i], eigvals_xhat[i]);
        return 2.0 * (1.0 - prod);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < eigvals_x.size(); ++i)
        sum += divergence_scalar(metric, eigvals_x[i], eigvals_xhat[i]);
    return sum;
}

double w2_full_matrix(const Matrix& cov_x, const Matrix& cov_xhat) {
    if (cov_x.rows() != cov_xhat.rows() || cov_x.cols() != cov_xhat.cols())
        throw std::invalid_argument("w2_full_matrix: shape mismatch");
    Matrix root_xhat = spd_sqrt(cov_xhat);
    Matrix inner = root_xhat * cov_x * root_xhat;
    Matrix cross = spd_sqrt(inner);
    double trace = 0.0;
    for (std::size_t i = 0; i < cov_x.rows(); ++i)
        trace += cov_x(i, i) + cov_xhat(i, i) - 2.0 * cross(i, i);
    return std::max(trace, 0.0);
}

double hellinger_sq_full_matrix(const Matrix& cov_x, const Matrix& cov_xhat) {
    if (cov_x.rows() != cov_xhat.rows() || cov_x.cols() != cov_xhat.cols())
        throw std::invalid_argument("hellinger_sq_full_matrix: shape mismatch");
    const double n = static_cast<double>(cov_x.rows());
    double log_bc = 0.5 * n * std::log(2.0) + 0.25 * (log_det_spd(cov_x) + log_det_spd(cov_xhat)) -
                    0.5 * log_det_spd(cov_x + cov_xhat);
    return 2.0 * (1.0 - std::exp(log_bc));
}

}  // namespace rdpf
