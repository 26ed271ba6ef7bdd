#pragma once

#include "tubemc/ambient.hpp"
#include "tubemc/evaluate.hpp"

namespace tubemc {

/// Parametrized submanifold patch u in R^m -> ambient chart coordinates.
/// Derivative callbacks are optional; centered differences otherwise.
struct SubmanifoldChart {
    int m = 0;
    std::function<Vec(const Vec&)> embed;
    Vec dom_lo, dom_hi;
    std::function<Mat(const Vec&)> jacobian;  // (n+1) x m, optional
    double fd_step = 1e-5;
};

inline Mat submanifold_jacobian(const SubmanifoldChart& sub, const Vec& u) {
    if (sub.jacobian) return sub.jacobian(u);
    const Vec x0 = sub.embed(u);
    Mat j(x0.size(), sub.m);
    const double h = sub.fd_step;
    for (int a = 0; a < sub.m; ++a) {
        Vec up = u, um = u;
        up[a] += h;
        um[a] -= h;
        j.col(a) = (sub.embed(up) - sub.embed(um)) / (2.0 * h);
    }
    return j;
}

/// Second derivative d^2 f / du_a du_b by centered differences.
inline Vec submanifold_second_derivative(const SubmanifoldChart& sub, const Vec& u, int a, int b) {
    const double h = std::sqrt(sub.fd_step);  // second differences want a larger step
    if (a == b) {
        Vec up = u, um = u;
        up[a] += h;
        um[a] -= h;
        return (sub.embed(up) - 2.0 * sub.embed(u) + sub.embed(um)) / (h * h);
    }
    Vec upp = u, upm = u, ump = u, umm = u;
    upp[a] += h; upp[b] += h;
    upm[a] += h; upm[b] -= h;
    ump[a] -= h; ump[b] += h;
    umm[a] -= h; umm[b] -= h;
    return (sub.embed(upp) - sub.embed(upm) - sub.embed(ump) + sub.embed(umm)) / (4.0 * h * h);
}

/// Orthonormal frame at embed(u) adapted to the submanifold: the first m
/// columns span the tangent space, the rest the normal space.
struct AdaptedFrame {
    Vec x;
    Mat g;
    Mat frame;  // (n+1) x (n+1), tangent columns first
    int m = 0;

    Mat tangent() const { return frame.leftCols(m); }
    Mat normal() const { return frame.rightCols(frame.cols() - m); }
};

inline AdaptedFrame adapted_frame(const ChartMetric& chart, const SubmanifoldChart& sub,
                                  const Vec& u) {
    AdaptedFrame af;
    af.x = sub.embed(u);
    af.g = metric_at(chart, af.x);
    af.m = sub.m;
    Mat seed = sub.m > 0 ? submanifold_jacobian(sub, u) : Mat(chart.dim, 0);
    af.frame = orthonormal_frame(af.g, seed);
    return af;
}

/// Concrete numeric blocks of the shape operator and the (covariant) Jacobi
/// operator splittings at one (point, unit normal) pair.
struct SecondOrderData {
    int m = 0;  // tangent dimension
    int p = 0;  // restricted normal dimension (n - m)
    Mat S, Ktop, CKtop, Kbot, CKbot, B, CB;

    int n() const { return m + p; }
};

inline BlockAssignment block_assignment(const SecondOrderData& d) {
    return BlockAssignment{d.S, d.Ktop, d.CKtop, d.Kbot, d.CKbot, d.B, d.CB};
}

struct SplitBlocks {
    Mat top;  // m x m
    Mat bot;  // (n - m) x (n - m), the unit-normal row/column dropped
    Mat off;  // m x (n - m)
};

/// Index splitting of a full operator matrix given in an adapted orthonormal
/// frame with the distinguished normal last; its row/column must vanish.
inline SplitBlocks split_frame_matrix(const Mat& full, int m) {
    const int n1 = int(full.rows());
    SplitBlocks s;
    s.top = full.topLeftCorner(m, m);
    s.off = full.block(0, m, m, n1 - 1 - m);
    s.bot = full.block(m, m, n1 - 1 - m, n1 - 1 - m);
    return s;
}

/// Split a full operator against supplied orthonormal bases; `nu` must be the
/// last normal vector and annihilated by the operator.
inline SplitBlocks split_operators(const Mat& full, const Mat& tangent_basis,
                                   const Mat& normal_basis, const Vec& nu,
                                   double ortho_tol = 1e-8) {
    const int n1 = int(full.rows());
    const int m = int(tangent_basis.cols());
    if (m + normal_basis.cols() + 1 != n1)
        throw GeometryError("split_operators: bases do not span the ambient space");
    Mat frame(n1, n1);
    frame.leftCols(m) = tangent_basis;
    frame.block(0, m, n1, normal_basis.cols()) = normal_basis;
    frame.col(n1 - 1) = nu;
    if ((frame.transpose() * frame - Mat::Identity(n1, n1)).cwiseAbs().maxCoeff() > ortho_tol)
        throw GeometryError("split_operators: basis is not orthonormal");
    return split_frame_matrix(frame.transpose() * full * frame, m);
}

/// Expansion matrices of the scaled tube shape operator, n x n with
/// n = m + p, assembled from one SecondOrderData.
inline std::array<Mat, 4> assemble_A(const SecondOrderData& d) {
    const int m = d.m, p = d.p, n = m + p;
    auto check = [&](const Mat& x, int r, int c, const char* name) {
        if (x.rows() != r || x.cols() != c)
            throw EvalError(std::string("assemble_A: bad dimensions for ") + name);
    };
    check(d.S, m, m, "S");
    check(d.Ktop, m, m, "Ktop");
    check(d.CKtop, m, m, "CKtop");
    check(d.Kbot, p, p, "Kbot");
    check(d.CKbot, p, p, "CKbot");
    check(d.B, m, p, "B");
    check(d.CB, m, p, "CB");

    std::array<Mat, 4> a;
    for (auto& mat : a) mat = Mat::Zero(n, n);
    a[0].bottomRightCorner(p, p) = Mat::Identity(p, p);
    a[1].topLeftCorner(m, m) = d.S;
    a[2].topLeftCorner(m, m) = d.S * d.S + d.Ktop;
    a[2].topRightCorner(m, p) = d.B;
    a[2].bottomLeftCorner(p, m) = d.B.transpose() / 3.0;
    a[2].bottomRightCorner(p, p) = d.Kbot / 3.0;
    a[3].topLeftCorner(m, m) = 0.5 * d.CKtop + d.S * d.S * d.S + d.Ktop * d.S;
    a[3].topRightCorner(m, p) = 0.5 * d.CB;
    a[3].bottomLeftCorner(p, m) = 0.25 * d.CB.transpose() + d.B.transpose() * d.S / 3.0;
    a[3].bottomRightCorner(p, p) = 0.25 * d.CKbot;
    return a;
}

namespace detail {

inline Mat symmetrized(const Mat& x) { return 0.5 * (x + x.transpose()); }

}  // namespace detail

/// Numeric second-order data through the chart pipeline: shape operator from
/// the second fundamental form, Jacobi blocks from finite-difference
/// curvature, covariant blocks from the parallel-frame derivative.
/// `w` holds unit coefficients of nu against the frame's normal columns.
inline SecondOrderData second_order_data(const ChartMetric& chart, const SubmanifoldChart& sub,
                                         const Vec& u, const Vec& w, double cov_delta = 1e-2,
                                         double cov_step = 1e-3) {
    AdaptedFrame af = adapted_frame(chart, sub, u);
    const int n1 = chart.dim;
    const int m = sub.m;
    const int p = n1 - 1 - m;
    if (w.size() != p + 1) throw GeometryError("second_order_data: normal weight dimension");
    if (std::abs(w.norm() - 1.0) > 1e-10)
        throw GeometryError("second_order_data: normal weights must be unit");
    Vec nu = af.normal() * w;

    // re-adapt the normal block so nu sits last
    Mat adapted(n1, n1);
    adapted.leftCols(m) = af.tangent();
    {
        Mat seed(n1, m + 1);
        seed.leftCols(m) = af.tangent();
        seed.col(m) = nu;
        Mat f = orthonormal_frame(af.g, seed);
        adapted.block(0, m, n1, p) = f.rightCols(p);
        adapted.col(n1 - 1) = nu;
    }

    SecondOrderData d;
    d.m = m;
    d.p = p;

    // shape operator: S_ab = <II(e_a, e_b), nu> in the orthonormal tangent basis
    if (m > 0) {
        Mat j = submanifold_jacobian(sub, u);
        auto gamma = christoffel(chart, af.x);
        Mat h_uu(m, m);  // <II(f_a, f_b), nu> in parametrization coordinates
        for (int a = 0; a < m; ++a)
            for (int b = a; b < m; ++b) {
                Vec ii = submanifold_second_derivative(sub, u, a, b);
                for (int k = 0; k < n1; ++k) ii[k] += j.col(a).dot(gamma[size_t(k)] * j.col(b));
                double val = nu.dot(af.g * ii);
                h_uu(a, b) = val;
                h_uu(b, a) = val;
            }
        // change of basis: tangent frame columns = J * C
        Mat c = (j.transpose() * af.g * j).llt().solve(j.transpose() * af.g * af.tangent());
        d.S = detail::symmetrized(c.transpose() * h_uu * c);
    } else {
        d.S = Mat(0, 0);
    }

    AmbientModel model = chart;
    Mat kf = jacobi_operator(model, af.x, nu, adapted);
    auto ks = split_frame_matrix(kf, m);
    d.Ktop = detail::symmetrized(ks.top);
    d.Kbot = detail::symmetrized(ks.bot);
    d.B = ks.off;

    Mat ckf = covariant_jacobi(model, af.x, nu, adapted, cov_delta, cov_step);
    auto cks = split_frame_matrix(ckf, m);
    d.CKtop = detail::symmetrized(cks.top);
    d.CKbot = detail::symmetrized(cks.bot);
    d.CB = cks.off;
    return d;
}

}  // namespace tubemc
