#pragma once

#include <string>

#include "rdpf/linalg.hpp"

namespace rdpf {

// Scalar source in power units. The mean is carried but the rate/distortion
// computations run on the zero-mean reduction; the channel's noise mean is
// chosen as (1-a)*mean so source and reconstruction means coincide.
struct ScalarGaussian {
    double mean = 0.0;
    double variance = 1.0;  // sigma_X^2 > 0

    ScalarGaussian() = default;
    ScalarGaussian(double mean_, double variance_);
};

// Multivariate source with cached eigendecomposition of its covariance,
// eigenvalues sorted descending. Covariance must be symmetric (1e-10) and
// positive definite (eigenvalues > 1e-12).
class GaussianSource {
  public:
    GaussianSource(Vec mean, Matrix covariance);

    // Diagonal shortcut: covariance = diag(eigenvalues), zero mean.
    static GaussianSource from_eigenvalues(const Vec& eigenvalues);

    // Accepts {"mean": [...], "covariance": [[...]]} or {"eigenvalues": [...]}.
    static GaussianSource from_json_text(const std::string& text);

    std::size_t dim() const { return mean_.size(); }
    const Vec& mean() const { return mean_; }
    const Matrix& covariance() const { return covariance_; }
    const Matrix& eigvecs() const { return eigvecs_; }
    const Vec& eigvals() const { return eigvals_; }

  private:
    Vec mean_;
    Matrix covariance_;
    Matrix eigvecs_;
    Vec eigvals_;
};

// Linear test channel xhat = a*x + w for the scalar problem.
struct ScalarRealization {
    double gain = 0.0;       // a, dimensionless
    double noise_var = 0.0;  // sigma_W^2 >= 0
};

// Linear test channel Xhat = A X + W whose matrices share the source
// eigenbasis, so A, Sigma_W and Sigma_X commute by pairs.
struct VectorRealization {
    Matrix eigvecs;
    Vec gains;       // eigenvalues of A
    Vec noise_vars;  // eigenvalues of Sigma_W, all >= 0

    Matrix gain_matrix() const { return sandwich_diagonal(eigvecs, gains); }
    Matrix noise_covariance() const { return sandwich_diagonal(eigvecs, noise_vars); }
    // A Sigma_X A^T + Sigma_W, with per-dimension eigenvalues a_i^2 lambda_i + w_i.
    Matrix reconstruction_covariance(const Matrix& cov_x) const;
};

VectorRealization assemble_realization(const GaussianSource& source, const Vec& gains,
                                       const Vec& noise_vars);

}  // namespace rdpf
