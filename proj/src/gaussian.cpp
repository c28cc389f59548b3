#include "rdpf/gaussian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "rdpf/errors.hpp"

namespace rdpf {

ScalarGaussian::ScalarGaussian(double mean_, double variance_) : mean(mean_), variance(variance_) {
    if (!(variance > 0.0)) throw std::invalid_argument("ScalarGaussian: variance must be > 0");
}

GaussianSource::GaussianSource(Vec mean, Matrix covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
    const std::size_t n = mean_.size();
    if (n == 0) throw std::invalid_argument("GaussianSource: dimension must be >= 1");
    if (covariance_.rows() != n || covariance_.cols() != n)
        throw std::invalid_argument("GaussianSource: covariance shape does not match mean length");
    if (!is_symmetric(covariance_))
        throw std::invalid_argument("GaussianSource: covariance not symmetric within 1e-10");

    EighResult e = eigh_jacobi(covariance_);
    for (double lam : e.values)
        if (lam <= 1e-12)
            throw std::invalid_argument("GaussianSource: covariance not positive definite (eigenvalue " +
                                        std::to_string(lam) + ")");
    eigvecs_ = std::move(e.vectors);
    eigvals_ = std::move(e.values);

    Matrix rebuilt = sandwich_diagonal(eigvecs_, eigvals_);
    if (frobenius_norm(rebuilt - covariance_) > 1e-8)
        throw NumericalError("GaussianSource: eigendecomposition reconstruction error above 1e-8");
}

GaussianSource GaussianSource::from_eigenvalues(const Vec& eigenvalues) {
    return GaussianSource(Vec(eigenvalues.size(), 0.0), Matrix::diagonal(eigenvalues));
}

GaussianSource GaussianSource::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.contains("eigenvalues")) {
        if (j.contains("covariance"))
            throw std::invalid_argument("source descriptor: give either eigenvalues or covariance, not both");
        return from_eigenvalues(j.at("eigenvalues").get<Vec>());
    }
    if (!j.contains("covariance"))
        throw std::invalid_argument("source descriptor: missing covariance or eigenvalues");
    auto rows = j.at("covariance").get<std::vector<Vec>>();
    const std::size_t n = rows.size();
    Matrix cov(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("source descriptor: covariance not square");
        for (std::size_t k = 0; k < n; ++k) cov(i, k) = rows[i][k];
    }
    Vec mean(n, 0.0);
    if (j.contains("mean")) {
        mean = j.at("mean").get<Vec>();
        if (mean.size() != n) throw std::invalid_argument("source descriptor: mean length mismatch");
    }
    return GaussianSource(std::move(mean), std::move(cov));
}

Matrix VectorRealization::reconstruction_covariance(const Matrix& cov_x) const {
    Matrix a = gain_matrix();
    return a * cov_x * a.transposed() + noise_covariance();
}

VectorRealization assemble_realization(const GaussianSource& source, const Vec& gains,
                                       const Vec& noise_vars) {
    const std::size_t n = source.dim();
    if (gains.size() != n || noise_vars.size() != n)
        throw std::invalid_argument("assemble_realization: length mismatch");
    for (double w : noise_vars)
        if (w < 0.0) throw std::invalid_argument("assemble_realization: negative noise variance");
    return VectorRealization{source.eigvecs(), gains, noise_vars};
}

}  // namespace rdpf
