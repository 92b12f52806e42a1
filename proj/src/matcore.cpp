#include "dpmpd/matcore.hpp"

#include <cmath>
#include <cstdlib>

namespace dpmpd {

Matrix::Matrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("Matrix: entry count does not match shape");
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch in *");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch in +");
    Matrix r = *this;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch in -");
    Matrix r = *this;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

Matrix operator*(double s, const Matrix& m) {
    Matrix r = m;
    for (int i = 0; i < r.rows_; ++i)
        for (int j = 0; j < r.cols_; ++j) r(i, j) *= s;
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

double det(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    const int n = m.rows();
    if (n == 0) return 1.0;
    Matrix w = m;
    double d = 1.0;
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        double best = std::abs(w(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(w(i, k));
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != k) {
            for (int j = 0; j < n; ++j) std::swap(w(k, j), w(pivot, j));
            d = -d;
        }
        d *= w(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = w(i, k) / w(k, k);
            if (f == 0.0) continue;
            for (int j = k; j < n; ++j) w(i, j) -= f * w(k, j);
        }
    }
    return d;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    const int n = m.rows();
    Matrix w = m;
    Matrix inv = Matrix::identity(n);
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        double best = std::abs(w(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(w(i, k));
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (best <= kSingularTol)
            throw SingularMatrixError("inverse: matrix is singular to working precision");
        if (pivot != k)
            for (int j = 0; j < n; ++j) {
                std::swap(w(k, j), w(pivot, j));
                std::swap(inv(k, j), inv(pivot, j));
            }
        const double pk = w(k, k);
        for (int j = 0; j < n; ++j) {
            w(k, j) /= pk;
            inv(k, j) /= pk;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = w(i, k);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                w(i, j) -= f * w(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

Matrix givens(int p, int axis_i, int axis_j, double angle) {
    if (axis_i < 0 || axis_j >= p || axis_i >= axis_j)
        throw std::invalid_argument("givens: need 0 <= axis_i < axis_j < p");
    Matrix g = Matrix::identity(p);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    g(axis_i, axis_i) = c;
    g(axis_j, axis_j) = c;
    g(axis_i, axis_j) = -s;
    g(axis_j, axis_i) = s;
    return g;
}

double orthogonality_residual(const Matrix& r) {
    if (r.rows() != r.cols()) throw std::invalid_argument("orthogonality_residual: matrix not square");
    const Matrix gram = r.transpose() * r;
    double worst = 0.0;
    for (int i = 0; i < gram.rows(); ++i)
        for (int j = 0; j < gram.cols(); ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(gram(i, j) - target));
        }
    return worst;
}

}  // namespace dpmpd
