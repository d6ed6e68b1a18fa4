#pragma once

#include <cstddef>
#include <vector>

// Small dense linear algebra for low-dimensional systems (d <= ~8).
// Row-major storage, value semantics throughout.

namespace slsq {

using Vec = std::vector<double>;

class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return a_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(double s, const Mat& a);
Vec operator*(const Mat& a, const Vec& v);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(double s, const Vec& v);

Mat transpose(const Mat& a);
double norm2(const Vec& v);
bool all_finite(const Mat& a);
bool all_finite(const Vec& v);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending order.
std::vector<double> sym_eigenvalues(const Mat& s);

// Largest singular value, via the symmetric eigenproblem of M^T M.
double spectral_norm(const Mat& m);

// Matrix measure: (1/2) lambda_max(M + M^T).
double log_norm(const Mat& m);

// Matrix exponential, scaling-and-squaring with a degree-13 Pade approximant.
Mat expm(const Mat& a);

// Solves a x = b (square a) by Gaussian elimination with partial pivoting.
Mat solve(Mat a, Mat b);

} // namespace slsq
