#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpmpd {

// Central numeric tolerances.  Orthogonality checks and singularity guards
// across the library all reference these two constants so that behaviour can
// be audited in one place.
inline constexpr double kOrthoTol = 1e-10;
inline constexpr double kSingularTol = 1e-12;

struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Dense double-precision matrix, row major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {}
    Matrix(int rows, int cols, std::vector<double> entries);

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    friend Matrix operator*(double s, const Matrix& m);
    Matrix transpose() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

// Kronecker product.
Matrix kronecker(const Matrix& a, const Matrix& b);

// Determinant via LU decomposition with partial pivoting.  Square input only.
double det(const Matrix& m);

// Inverse via Gauss-Jordan elimination with partial pivoting.  Throws
// SingularMatrixError when a pivot falls below kSingularTol.
Matrix inverse(const Matrix& m);

// p x p Givens rotation acting in the (axis_i, axis_j) coordinate plane,
// 0-based axes with axis_i < axis_j.
Matrix givens(int p, int axis_i, int axis_j, double angle);

// max_ij | (R^T R - I)_ij |; a matrix is treated as orthogonal when this
// residual is below kOrthoTol.
double orthogonality_residual(const Matrix& r);

}  // namespace dpmpd
