#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "tubemc/linalg.hpp"
#include "tubemc/ode.hpp"

namespace tubemc {

/// Constant sectional curvature c; no chart, all operators closed-form.
/// `dim` is the dimension of the ambient manifold (n+1).
struct SpaceForm {
    double c = 1.0;
    int dim = 3;
};

/// Curvature-adapted scalar-flow model: Jacobi eigenvalues kappa in {c, 4c}
/// with the given multiplicities. Hypersurface parallels only; it carries no
/// chart geometry.
struct RankOneAdapted {
    double c = 1.0;
    int mult_c = 1;
    int mult_4c = 1;
};

/// Coordinate-chart metric with finite-difference derivatives.
struct ChartMetric {
    std::function<Mat(const Vec&)> metric;  // SPD (dim x dim) at a chart point
    int dim = 3;                            // ambient manifold dimension (n+1)
    double fd_step = 1e-4;
};

using AmbientModel = std::variant<SpaceForm, RankOneAdapted, ChartMetric>;

inline int ambient_dim(const AmbientModel& model) {
    return std::visit(
        [](const auto& m) -> int {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RankOneAdapted>)
                return m.mult_c + m.mult_4c + 1;
            else
                return m.dim;
        },
        model);
}

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// chart differential geometry
// ---------------------------------------------------------------------------

inline Mat metric_at(const ChartMetric& chart, const Vec& x) {
    Mat g = chart.metric(x);
    if (g.rows() != chart.dim || g.cols() != chart.dim)
        throw GeometryError("metric callback returned wrong dimensions");
    return g;
}

inline Mat metric_inverse(const ChartMetric& chart, const Vec& x) {
    Mat g = metric_at(chart, x);
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success) throw GeometryError("metric is not positive definite");
    return llt.solve(Mat::Identity(chart.dim, chart.dim));
}

/// Christoffel symbols Gamma[k](i,j) from centered differences of the metric.
inline std::vector<Mat> christoffel(const ChartMetric& chart, const Vec& x) {
    const int n1 = chart.dim;
    const double h = chart.fd_step;
    std::vector<Mat> dg(static_cast<size_t>(n1));  // dg[l] = d g / d x_l
    for (int l = 0; l < n1; ++l) {
        Vec xp = x, xm = x;
        xp[l] += h;
        xm[l] -= h;
        dg[size_t(l)] = (metric_at(chart, xp) - metric_at(chart, xm)) / (2.0 * h);
    }
    Mat ginv = metric_inverse(chart, x);
    std::vector<Mat> gamma(size_t(n1), Mat::Zero(n1, n1));
    for (int k = 0; k < n1; ++k)
        for (int i = 0; i < n1; ++i)
            for (int j = i; j < n1; ++j) {
                double acc = 0.0;
                for (int l = 0; l < n1; ++l)
                    acc += ginv(k, l) *
                           (dg[size_t(i)](j, l) + dg[size_t(j)](i, l) - dg[size_t(l)](i, j));
                gamma[size_t(k)](i, j) = 0.5 * acc;
                gamma[size_t(k)](j, i) = 0.5 * acc;
            }
    return gamma;
}

namespace detail {

/// Contractions of the Christoffel symbols used by the curvature operator:
/// u^l = Gamma^l_{im} xi^i xi^m and V^l_k = Gamma^l_{km} xi^m.
inline void gamma_contractions(const ChartMetric& chart, const Vec& x, const Vec& xi, Vec* u,
                               Mat* v) {
    auto gamma = christoffel(chart, x);
    const int n1 = chart.dim;
    if (u) {
        u->resize(n1);
        for (int l = 0; l < n1; ++l) (*u)[l] = xi.dot(gamma[size_t(l)] * xi);
    }
    if (v) {
        v->resize(n1, n1);
        for (int l = 0; l < n1; ++l) v->row(l) = (gamma[size_t(l)] * xi).transpose();
    }
}

}  // namespace detail

/// Jacobi operator of the chart metric in coordinate components:
/// M^l_k = xi^i xi^m R^l_{ikm} with the curvature sign convention
/// R(X,Y,Z) = (nabla_{[X,Y]} - [nabla_X, nabla_Y]) Z, which makes the unit
/// sphere's Jacobi eigenvalues +c.
inline Mat jacobi_in_coords(const ChartMetric& chart, const Vec& x, const Vec& xi) {
    const int n1 = chart.dim;
    const double h = chart.fd_step;

    // term 1: d_k (Gamma^l_{im} xi^i xi^m)
    Mat ju(n1, n1);
    for (int k = 0; k < n1; ++k) {
        Vec xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        Vec up, um;
        detail::gamma_contractions(chart, xp, xi, &up, nullptr);
        detail::gamma_contractions(chart, xm, xi, &um, nullptr);
        ju.col(k) = (up - um) / (2.0 * h);
    }
    // term 2: directional derivative along xi of V^l_k = Gamma^l_{km} xi^m
    double scale = std::max(1.0, xi.norm());
    Vec step = (h / scale) * xi;
    Mat vp, vm;
    detail::gamma_contractions(chart, x + step, xi, nullptr, &vp);
    detail::gamma_contractions(chart, x - step, xi, nullptr, &vm);
    Mat dv = (vp - vm) * (scale / (2.0 * h));

    Vec u;
    Mat v;
    detail::gamma_contractions(chart, x, xi, &u, &v);
    auto gamma = christoffel(chart, x);
    Mat gu(n1, n1);  // Gamma^l_{kp} u^p
    for (int l = 0; l < n1; ++l) gu.row(l) = (gamma[size_t(l)] * u).transpose();
    Mat xg(n1, n1);  // (xi Gamma)^l_p = Gamma^l_{ip} xi^i
    for (int l = 0; l < n1; ++l) xg.row(l) = (gamma[size_t(l)] * xi).transpose();

    return ju - dv + gu - xg * v;
}

/// Gram-Schmidt under the given metric; columns of `seed` are completed with
/// coordinate basis vectors, largest-residual-first for determinism.
inline Mat orthonormal_frame(const Mat& g, const Mat& seed) {
    const int n1 = int(g.rows());
    std::vector<Vec> basis;
    auto push = [&](Vec v) -> bool {
        for (const Vec& b : basis) v -= b.dot(g * v) * b;
        double norm2 = v.dot(g * v);
        if (norm2 < 1e-18) return false;
        basis.push_back(v / std::sqrt(norm2));
        return true;
    };
    for (int j = 0; j < seed.cols(); ++j) {
        if (!push(seed.col(j))) throw GeometryError("orthonormal_frame: rank-deficient seed");
    }
    while (int(basis.size()) < n1) {
        int best = -1;
        double best_norm = -1.0;
        for (int j = 0; j < n1; ++j) {
            Vec v = Vec::Unit(n1, j);
            for (const Vec& b : basis) v -= b.dot(g * v) * b;
            double norm2 = v.dot(g * v);
            if (norm2 > best_norm) {
                best_norm = norm2;
                best = j;
            }
        }
        if (!push(Vec::Unit(n1, best))) throw GeometryError("orthonormal_frame: completion failed");
    }
    Mat f(n1, n1);
    for (int j = 0; j < n1; ++j) f.col(j) = basis[size_t(j)];
    return f;
}

/// Components of a coordinate operator in a g-orthonormal frame:
/// F^T G M F (uses F^{-1} = F^T G).
inline Mat operator_in_frame(const Mat& m_coords, const Mat& frame, const Mat& g) {
    return frame.transpose() * g * m_coords * frame;
}

namespace detail {

inline void require_unit(double norm, double tol = 1e-6) {
    if (std::abs(norm - 1.0) > tol)
        throw GeometryError("direction vector is not unit length (|xi| = " +
                            std::to_string(norm) + ")");
}

}  // namespace detail

/// Jacobi operator K_xi as a symmetric matrix in a g-orthonormal frame.
/// For a space form xi is given directly in frame components and x is
/// ignored; for a chart both x and xi are coordinate expressions and the
/// caller may supply the frame (defaults to a Gram-Schmidt frame at x).
inline Mat jacobi_operator(const AmbientModel& model, const Vec& x, const Vec& xi,
                           std::optional<Mat> frame = std::nullopt) {
    if (const auto* sf = std::get_if<SpaceForm>(&model)) {
        detail::require_unit(xi.norm());
        return sf->c * (Mat::Identity(sf->dim, sf->dim) - xi * xi.transpose());
    }
    if (const auto* chart = std::get_if<ChartMetric>(&model)) {
        Mat g = metric_at(*chart, x);
        detail::require_unit(std::sqrt(xi.dot(g * xi)));
        Mat f = frame ? *frame : orthonormal_frame(g, Mat(chart->dim, 0));
        return operator_in_frame(jacobi_in_coords(*chart, x, xi), f, g);
    }
    throw GeometryError("jacobi_operator: model carries no pointwise geometry");
}

// ---------------------------------------------------------------------------
// geodesics and parallel transport (chart models)
// ---------------------------------------------------------------------------

/// Position, velocity, and a parallel-transported frame along a geodesic.
struct GeodesicFrame {
    Vec x;
    Vec v;
    Mat frame;  // columns transported g-orthonormally
};

inline GeodesicFrame transport_along_geodesic(const ChartMetric& chart, GeodesicFrame state,
                                              double s, double step = 1e-3) {
    const int n1 = chart.dim;
    const int cols = int(state.frame.cols());
    const int len = n1 * (2 + cols);
    Vec y(len);
    y.segment(0, n1) = state.x;
    y.segment(n1, n1) = state.v;
    for (int j = 0; j < cols; ++j) y.segment(n1 * (2 + j), n1) = state.frame.col(j);

    auto rhs = [&](double, const Vec& cur) {
        Vec out(len);
        Vec pos = cur.segment(0, n1);
        Vec vel = cur.segment(n1, n1);
        auto gamma = christoffel(chart, pos);
        out.segment(0, n1) = vel;
        for (int k = 0; k < n1; ++k) out[n1 + k] = -vel.dot(gamma[size_t(k)] * vel);
        for (int j = 0; j < cols; ++j) {
            Vec col = cur.segment(n1 * (2 + j), n1);
            for (int k = 0; k < n1; ++k) out[n1 * (2 + j) + k] = -vel.dot(gamma[size_t(k)] * col);
        }
        return out;
    };
    y = rk4_integrate(y, 0.0, s, step, rhs);

    state.x = y.segment(0, n1);
    state.v = y.segment(n1, n1);
    for (int j = 0; j < cols; ++j) state.frame.col(j) = y.segment(n1 * (2 + j), n1);
    return state;
}

/// Covariant Jacobi operator in a g-orthonormal frame: the derivative of the
/// Jacobi operator along the geodesic through (x, xi), evaluated in a
/// parallel-transported frame (valid since geodesics satisfy nabla_xi xi = 0).
/// Space forms are locally symmetric, so the operator vanishes there.
inline Mat covariant_jacobi(const AmbientModel& model, const Vec& x, const Vec& xi,
                            std::optional<Mat> frame = std::nullopt, double delta = 1e-2,
                            double step = 1e-3) {
    if (const auto* sf = std::get_if<SpaceForm>(&model)) {
        detail::require_unit(xi.norm());
        return Mat::Zero(sf->dim, sf->dim);
    }
    const auto* chart = std::get_if<ChartMetric>(&model);
    if (!chart) throw GeometryError("covariant_jacobi: model carries no pointwise geometry");
    Mat g = metric_at(*chart, x);
    detail::require_unit(std::sqrt(xi.dot(g * xi)));
    Mat f = frame ? *frame : orthonormal_frame(g, Mat(chart->dim, 0));

    auto sample = [&](double s) {
        GeodesicFrame gf{x, xi, f};
        gf = transport_along_geodesic(*chart, gf, s, step);
        Mat gs = metric_at(*chart, gf.x);
        return operator_in_frame(jacobi_in_coords(*chart, gf.x, gf.v), gf.frame, gs);
    };
    return (sample(delta) - sample(-delta)) / (2.0 * delta);
}

}  // namespace tubemc
