#pragma once

#include <cstddef>
#include <vector>

namespace rdpf {

using Vec = std::vector<double>;

// Dense row-major matrix, sized for the small covariance problems handled here
// (N up to a few hundred).
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const Vec& d);

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Matrix transposed() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    Vec a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& a);
double max_abs_asymmetry(const Matrix& a);
bool is_symmetric(const Matrix& a, double tol = 1e-10);

// V * diag(d) * V^T
Matrix sandwich_diagonal(const Matrix& v, const Vec& d);

struct EighResult {
    Matrix vectors;  // orthonormal columns
    Vec values;      // sorted descending
};

// Cyclic Jacobi rotations for a symmetric matrix. Throws std::invalid_argument
// on asymmetric input (tolerance 1e-10) and NumericalError if the sweep limit
// is exhausted before the off-diagonal mass vanishes.
EighResult eigh_jacobi(const Matrix& a);

// Symmetric square root of a positive semi-definite matrix via eigh_jacobi.
// Eigenvalues below -1e-12 are rejected; small negatives are clamped to zero.
Matrix spd_sqrt(const Matrix& a);

double dot(const Vec& a, const Vec& b);
double l2_norm(const Vec& a);

}  // namespace rdpf
