#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <stdexcept>
#include <vector>

namespace tubemc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline std::vector<double> sym_eigenvalues(const Mat& a) {
    if (a.rows() == 0) return {};
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    std::vector<double> out(size_t(a.rows()));
    for (Eigen::Index j = 0; j < a.rows(); ++j) out[size_t(j)] = es.eigenvalues()[j];
    return out;
}

/// Roots of the monic polynomial x^n + c[n-1] x^{n-1} + ... + c[0],
/// via the companion matrix. Returned sorted by (real, imag).
inline std::vector<std::complex<double>> monic_roots(const std::vector<double>& c) {
    const int n = int(c.size());
    if (n == 0) return {};
    Mat comp = Mat::Zero(n, n);
    for (int j = 1; j < n; ++j) comp(j, j - 1) = 1.0;
    for (int j = 0; j < n; ++j) comp(j, n - 1) = -c[size_t(j)];
    Eigen::EigenSolver<Mat> es(comp);
    if (es.info() != Eigen::Success) throw std::runtime_error("root finding failed");
    std::vector<std::complex<double>> roots(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) roots[size_t(j)] = es.eigenvalues()[j];
    std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

struct PolyFit {
    Vec coeffs;           // degree-ascending
    double condition;     // diagonal-ratio estimate from the QR factor
    double max_residual;  // max |fit - data| over the nodes
};

/// Least-squares polynomial fit of (t_j, y_j), degree-ascending coefficients.
inline PolyFit polyfit(const std::vector<double>& t, const std::vector<double>& y, int degree,
                       double condition_limit = 1e12) {
    if (t.size() != y.size() || t.empty()) throw std::invalid_argument("polyfit: bad data");
    if (degree + 1 > int(t.size())) throw std::invalid_argument("polyfit: underdetermined");
    const int rows = int(t.size()), cols = degree + 1;
    Mat v(rows, cols);
    Vec rhs(rows);
    for (int j = 0; j < rows; ++j) {
        double p = 1.0;
        for (int k = 0; k < cols; ++k) {
            v(j, k) = p;
            p *= t[size_t(j)];
        }
        rhs[j] = y[size_t(j)];
    }
    Eigen::ColPivHouseholderQR<Mat> qr(v);
    Mat r = qr.matrixR().topLeftCorner(cols, cols).template triangularView<Eigen::Upper>();
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < cols; ++k) {
        double d = std::abs(r(k, k));
        dmax = std::max(dmax, d);
        dmin = std::min(dmin, d);
    }
    PolyFit fit;
    fit.condition = dmin > 0 ? dmax / dmin : std::numeric_limits<double>::infinity();
    if (fit.condition > condition_limit)
        throw std::runtime_error("polyfit: ill-conditioned fit, condition estimate " +
                                 std::to_string(fit.condition));
    fit.coeffs = qr.solve(rhs);
    fit.max_residual = (v * fit.coeffs - rhs).cwiseAbs().maxCoeff();
    return fit;
}

/// Minimal dense matrix over an arbitrary scalar, for exact-arithmetic
/// cross-checks of the trace evaluations.
template <class Scalar>
struct DenseMat {
    int rows = 0, cols = 0;
    std::vector<Scalar> a;

    DenseMat() = default;
    DenseMat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c), Scalar(0)) {}
    Scalar& operator()(int i, int j) { return a[size_t(i) * size_t(cols) + size_t(j)]; }
    const Scalar& operator()(int i, int j) const { return a[size_t(i) * size_t(cols) + size_t(j)]; }

    static DenseMat identity(int n) {
        DenseMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
        return m;
    }
    friend DenseMat operator*(const DenseMat& x, const DenseMat& y) {
        if (x.cols != y.rows) throw std::invalid_argument("DenseMat: shape mismatch");
        DenseMat out(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const Scalar& xv = x(i, k);
                if (xv == Scalar(0)) continue;
                for (int j = 0; j < y.cols; ++j) out(i, j) = out(i, j) + xv * y(k, j);
            }
        return out;
    }
    friend DenseMat operator+(const DenseMat& x, const DenseMat& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw std::invalid_argument("DenseMat: shape mismatch");
        DenseMat out = x;
        for (size_t j = 0; j < out.a.size(); ++j) out.a[j] = out.a[j] + y.a[j];
        return out;
    }
    friend DenseMat operator*(const Scalar& s, DenseMat x) {
        for (auto& v : x.a) v = v * s;
        return x;
    }
    Scalar trace() const {
        Scalar t(0);
        for (int i = 0; i < std::min(rows, cols); ++i) t = t + (*this)(i, i);
        return t;
    }
};

}  // namespace tubemc
