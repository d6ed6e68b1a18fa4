#include "slsq/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace slsq {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

static void check_same_shape(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
}

Mat operator+(const Mat& a, const Mat& b) {
    check_same_shape(a, b);
    Mat r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

Mat operator-(const Mat& a, const Mat& b) {
    check_same_shape(a, b);
    Mat r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    Mat r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Mat operator*(double s, const Mat& a) {
    Mat r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

Vec operator*(const Mat& a, const Vec& v) {
    if (a.cols() != static_cast<int>(v.size()))
        throw std::invalid_argument("matrix-vector shape mismatch");
    Vec r(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec operator*(double s, const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

Mat transpose(const Mat& a) {
    Mat r(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

bool all_finite(const Mat& a) {
    for (double x : a.data())
        if (!std::isfinite(x)) return false;
    return true;
}

bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

std::vector<double> sym_eigenvalues(const Mat& s) {
    if (s.rows() != s.cols()) throw std::invalid_argument("sym_eigenvalues: matrix not square");
    if (!all_finite(s)) throw std::invalid_argument("sym_eigenvalues: non-finite entries");
    const int n = s.rows();
    Mat a = s;
    // Symmetrize to wash out representation asymmetry in the input.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }

    double scale = 0.0;
    for (double x : a.data()) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return std::vector<double>(n, 0.0);

    const double tol = 1e-14 * scale;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= tol) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= tol * 1e-4) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - sn * aiq;
                    a(i, q) = sn * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const double apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - sn * aqj;
                    a(q, j) = sn * apj + c * aqj;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

double spectral_norm(const Mat& m) {
    if (!all_finite(m)) throw std::invalid_argument("spectral_norm: non-finite entries");
    const Mat g = transpose(m) * m;
    const auto ev = sym_eigenvalues(g);
    return std::sqrt(std::max(0.0, ev.back()));
}

double log_norm(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("log_norm: matrix not square");
    if (!all_finite(m)) throw std::invalid_argument("log_norm: non-finite entries");
    const auto ev = sym_eigenvalues(m + transpose(m));
    return 0.5 * ev.back();
}

Mat solve(Mat a, Mat b) {
    if (a.rows() != a.cols() || a.rows() != b.rows())
        throw std::invalid_argument("solve: shape mismatch");
    const int n = a.rows();
    const int m = b.cols();
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        if (a(piv, col) == 0.0) throw std::runtime_error("solve: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            for (int j = 0; j < m; ++j) std::swap(b(col, j), b(piv, j));
        }
        const double inv = 1.0 / a(col, col);
        for (int i = col + 1; i < n; ++i) {
            const double f = a(i, col) * inv;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
            for (int j = 0; j < m; ++j) b(i, j) -= f * b(col, j);
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        const double inv = 1.0 / a(col, col);
        for (int j = 0; j < m; ++j) b(col, j) *= inv;
        for (int i = 0; i < col; ++i) {
            const double f = a(i, col);
            if (f == 0.0) continue;
            for (int j = 0; j < m; ++j) b(i, j) -= f * b(col, j);
        }
    }
    return b;
}

static double norm1(const Mat& a) {
    double best = 0.0;
    for (int j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (int i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

Mat expm(const Mat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix not square");
    if (!all_finite(a)) throw std::invalid_argument("expm: non-finite entries");
    const int n = a.rows();
    if (n == 0) return Mat();

    static const double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    const double theta13 = 5.371920351148152;

    int squarings = 0;
    const double nrm = norm1(a);
    if (nrm > theta13) squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    const double scale = std::ldexp(1.0, -squarings);
    const Mat as = scale * a;

    const Mat id = Mat::identity(n);
    const Mat a2 = as * as;
    const Mat a4 = a2 * a2;
    const Mat a6 = a2 * a4;

    const Mat w = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                  (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const Mat u = as * w;
    const Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                  (b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id);

    Mat r = solve(v - u, v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

} // namespace slsq
