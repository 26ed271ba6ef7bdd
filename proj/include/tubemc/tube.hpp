#pragma once

#include <complex>

#include "tubemc/newton_identities.hpp"
#include "tubemc/submanifold.hpp"

namespace tubemc {

struct BlowUpError : std::runtime_error {
    double pole;
    explicit BlowUpError(double t)
        : std::runtime_error("focal blow-up at t = " + std::to_string(t)), pole(t) {}
};

/// Closed-form solution of mu' = mu^2 + kappa from mu(t0) = mu0, evaluated at
/// t1. Throws BlowUpError with the pole location if the solution blows up
/// inside the interval.
inline double riccati_scalar_flow(double mu0, double kappa, double t0, double t1) {
    const double dt = t1 - t0;
    if (dt == 0.0) return mu0;
    if (kappa > 0.0) {
        const double s = std::sqrt(kappa);
        const double phi0 = std::atan(mu0 / s);
        const double arg = s * dt + phi0;
        const double half_pi = std::asin(1.0);
        if (arg >= half_pi) throw BlowUpError(t0 + (half_pi - phi0) / s);
        if (arg <= -half_pi) throw BlowUpError(t0 + (-half_pi - phi0) / s);
        return s * std::tan(arg);
    }
    if (kappa == 0.0) {
        if (mu0 == 0.0) return 0.0;
        const double t_pole = t0 + 1.0 / mu0;
        if ((dt > 0 && t_pole > t0 && t_pole <= t1) || (dt < 0 && t_pole < t0 && t_pole >= t1))
            throw BlowUpError(t_pole);
        return mu0 / (1.0 - mu0 * dt);
    }
    // kappa < 0: -s tanh and -s coth both solve mu' = mu^2 - s^2
    const double s = std::sqrt(-kappa);
    const double ratio = mu0 / s;
    if (std::abs(std::abs(ratio) - 1.0) < 1e-14) return mu0;  // stationary branches
    if (std::abs(ratio) < 1.0) {
        return -s * std::tanh(s * dt - std::atanh(ratio));  // no poles on this branch
    }
    // coth branch: pole where the argument crosses zero
    const double alpha = 0.5 * std::log((ratio + 1.0) / (ratio - 1.0));  // acoth(ratio)
    const double arg = s * dt - alpha;
    if (arg == 0.0 || (arg > 0) == (alpha > 0)) throw BlowUpError(t0 + alpha / s);
    return -s * (std::cosh(arg) / std::sinh(arg));
}

/// The branch that emanates from the pole -1/t as t -> 0+ (tube fiber
/// directions). Throws past the first conjugate point.
inline double riccati_flow_from_pole(double kappa, double t) {
    if (t <= 0.0) throw std::invalid_argument("riccati_flow_from_pole: need t > 0");
    if (kappa > 0.0) {
        const double s = std::sqrt(kappa);
        const double period = 2.0 * std::asin(1.0) / s;  // pi / s
        if (t >= period) throw BlowUpError(period);
        return -s / std::tan(s * t);
    }
    if (kappa == 0.0) return -1.0 / t;
    const double s = std::sqrt(-kappa);
    return -s * (std::cosh(s * t) / std::sinh(s * t));
}

struct TubeOptions {
    double t0 = 1e-3;        // series initialization radius
    double h_max = 5e-4;     // fixed step bound away from the start
    double ramp = 2e-3;      // near the start, h <= ramp * t
    double blowup_norm = 1e6;
    int k_max = 6;
    bool richardson = true;  // coarse second pass for an error estimate
};

struct TubeSample {
    double t = 0.0;
    Mat S;                   // n x n in the parallel adapted frame
    std::vector<double> Q;   // Q_1 .. Q_kmax
    double step_error = 0.0; // Richardson estimate on S entries
    double series_trunc = 0.0;  // O(t0^3) initialization truncation scale
};

/// Launch data for one tube: second-order data at (p, nu), plus coordinate
/// data when the ambient is a chart (frame columns adapted, nu last).
struct TubePoint {
    SecondOrderData data;
    struct ChartLaunch {
        ChartMetric chart;
        Vec x;
        Vec nu;
        Mat frame;
    };
    std::optional<ChartLaunch> chart;
};

inline TubePoint tube_point_from_chart(const ChartMetric& chart, const SubmanifoldChart& sub,
                                       const Vec& u, const Vec& w) {
    TubePoint tp;
    tp.data = second_order_data(chart, sub, u, w);
    AdaptedFrame af = adapted_frame(chart, sub, u);
    Vec nu = af.normal() * w;
    Mat seed(chart.dim, sub.m + 1);
    seed.leftCols(sub.m) = af.tangent();
    seed.col(sub.m) = nu;
    Mat f = orthonormal_frame(af.g, seed);
    Mat adapted(chart.dim, chart.dim);
    adapted.leftCols(sub.m) = af.tangent();
    adapted.block(0, sub.m, chart.dim, chart.dim - 1 - sub.m) =
        f.rightCols(chart.dim - 1 - sub.m);
    adapted.col(chart.dim - 1) = nu;
    tp.chart = TubePoint::ChartLaunch{chart, af.x, nu, adapted};
    return tp;
}

namespace detail {

inline std::vector<double> power_traces(const Mat& s, int k_max) {
    std::vector<double> q(static_cast<size_t>(k_max), 0.0);
    Mat acc = s;
    for (int k = 1; k <= k_max; ++k) {
        q[size_t(k - 1)] = acc.trace();
        if (k < k_max) acc = acc * s;
    }
    return q;
}

/// Riccati integration S' = S^2 + R(s) with a step ramp near the singular
/// start. `curvature` returns R at radius s in the parallel frame.
template <class CurvatureFn>
Mat integrate_riccati(Mat s, double t0, double t1, const TubeOptions& opt, CurvatureFn&& r,
                      double step_scale = 1.0) {
    double t = t0;
    const double h_max = opt.h_max * step_scale;
    const double ramp = opt.ramp * step_scale;
    while (t < t1) {
        double h = std::min(h_max, ramp * t);
        if (t + h > t1) h = t1 - t;
        auto rhs = [&](double tt, const Mat& cur) -> Mat { return cur * cur + r(tt); };
        s = rk4_step(s, t, h, rhs);
        if (!s.allFinite() || s.cwiseAbs().maxCoeff() > opt.blowup_norm) throw BlowUpError(t + h);
        t += h;
    }
    return s;
}

}  // namespace detail

/// Tube shape operator at radius t by matrix Riccati integration in a
/// parallel-transported orthonormal frame, initialized at opt.t0 from the
/// truncated series (1/t0)(-A_0 + A_1 t0 + A_2 t0^2 + A_3 t0^3).
inline TubeSample tube_shape(const AmbientModel& model, const TubePoint& point, double t,
                             int k_max, TubeOptions opt = {}) {
    if (t <= opt.t0)
        throw std::invalid_argument("tube_shape: t must exceed the initialization radius");
    auto a = assemble_A(point.data);
    const int n = point.data.n();
    Mat s0 = (-a[0] + opt.t0 * a[1] + opt.t0 * opt.t0 * a[2] + opt.t0 * opt.t0 * opt.t0 * a[3]) /
             opt.t0;

    TubeSample sample;
    sample.t = t;
    sample.series_trunc = opt.t0 * opt.t0 * opt.t0;

    if (const auto* sf = std::get_if<SpaceForm>(&model)) {
        Mat r = sf->c * Mat::Identity(n, n);
        auto rf = [&](double) -> const Mat& { return r; };
        sample.S = detail::integrate_riccati(s0, opt.t0, t, opt, rf);
        if (opt.richardson) {
            Mat coarse = detail::integrate_riccati(s0, opt.t0, t, opt, rf, 2.0);
            sample.step_error = (sample.S - coarse).cwiseAbs().maxCoeff() / 15.0;
        }
    } else if (std::holds_alternative<ChartMetric>(model)) {
        if (!point.chart) throw GeometryError("tube_shape: chart launch data missing");
        const auto& launch = *point.chart;
        const ChartMetric& chart = launch.chart;
        // advance the geodesic frame jointly with the Riccati flow
        auto run = [&](double scale) {
            GeodesicFrame gf{launch.x, launch.nu, launch.frame};
            double s_at = 0.0;
            auto r = [&](double tt) -> Mat {
                if (tt != s_at) {
                    gf = transport_along_geodesic(chart, gf, tt - s_at, opt.h_max * scale);
                    s_at = tt;
                }
                Mat g = metric_at(chart, gf.x);
                Mat kf = operator_in_frame(jacobi_in_coords(chart, gf.x, gf.v), gf.frame, g);
                return kf.topLeftCorner(n, n);
            };
            return detail::integrate_riccati(s0, opt.t0, t, opt, r, scale);
        };
        sample.S = run(1.0);
        if (opt.richardson) {
            Mat coarse = run(2.0);
            sample.step_error = (sample.S - coarse).cwiseAbs().maxCoeff() / 15.0;
        }
    } else {
        throw GeometryError("tube_shape: model does not support tube integration");
    }
    sample.Q = detail::power_traces(sample.S, k_max);
    return sample;
}

/// Space-form alternate path: closed-form eigenvalue flows. Base directions
/// start at the eigenvalues of S_nu, fiber directions on the -1/t branch.
inline TubeSample tube_shape_closed(double c, const SecondOrderData& data, double t, int k_max) {
    TubeSample sample;
    sample.t = t;
    const int n = data.n();
    Vec eig = Vec::Zero(n);
    auto base = sym_eigenvalues(data.S);
    for (int j = 0; j < data.m; ++j) eig[j] = riccati_scalar_flow(base[size_t(j)], c, 0.0, t);
    double fiber = data.p > 0 ? riccati_flow_from_pole(c, t) : 0.0;
    for (int j = data.m; j < n; ++j) eig[j] = fiber;
    sample.S = eig.asDiagonal();
    sample.Q.assign(size_t(k_max), 0.0);
    for (int k = 1; k <= k_max; ++k) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += std::pow(eig[j], k);
        sample.Q[size_t(k - 1)] = acc;
    }
    return sample;
}

struct TaylorFit {
    Mat coeffs;           // row i-1 holds the t^0..t^3 coefficients of t^i Q_i(t)
    double condition = 0;
    double max_residual = 0;
};

/// Least-squares extraction of the low-order expansion coefficients of
/// t^i Q_i(t) from tube samples along a radius grid.
inline TaylorFit taylor_fit_invariants(const AmbientModel& model, const TubePoint& point,
                                       int i_max, const std::vector<double>& t_grid,
                                       TubeOptions opt = {}, int fit_degree = 8) {
    if (t_grid.size() < 6) throw std::invalid_argument("taylor_fit_invariants: need >= 6 radii");
    opt.richardson = false;
    std::vector<TubeSample> samples;
    samples.reserve(t_grid.size());
    for (double t : t_grid) samples.push_back(tube_shape(model, point, t, i_max, opt));
    TaylorFit out;
    out.coeffs = Mat::Zero(i_max, 4);
    const int degree = std::min(fit_degree, int(t_grid.size()) - 1);
    // fit in the scaled variable s = t / t_max to keep the system balanced
    const double scale = *std::max_element(t_grid.begin(), t_grid.end());
    std::vector<double> s_grid(t_grid.size());
    for (size_t j = 0; j < t_grid.size(); ++j) s_grid[j] = t_grid[j] / scale;
    for (int i = 1; i <= i_max; ++i) {
        std::vector<double> y(t_grid.size());
        for (size_t j = 0; j < t_grid.size(); ++j)
            y[j] = std::pow(t_grid[j], i) * samples[j].Q[size_t(i - 1)];
        PolyFit fit = polyfit(s_grid, y, degree);
        double unscale = 1.0;
        for (int r = 0; r <= 3 && r <= degree; ++r) {
            out.coeffs(i - 1, r) = fit.coeffs[r] * unscale;
            unscale /= scale;
        }
        out.condition = std::max(out.condition, fit.condition);
        out.max_residual = std::max(out.max_residual, fit.max_residual);
    }
    return out;
}

/// Per-curvature-class power sums of the tube principal curvatures; the
/// cascade needs p_{k-1} per class to advance Q_k' to Q_{k+1}.
struct CascadeState {
    std::vector<double> kappa;              // one entry per Jacobi eigenvalue class
    std::vector<std::vector<double>> p;     // p[class][k], k = 0..k_max

    static CascadeState from_class_eigenvalues(const std::vector<double>& kappa,
                                               const std::vector<std::vector<double>>& mu,
                                               int k_max) {
        CascadeState st;
        st.kappa = kappa;
        st.p.resize(kappa.size());
        for (size_t cls = 0; cls < kappa.size(); ++cls) {
            st.p[cls].resize(size_t(k_max) + 1, 0.0);
            for (int k = 0; k <= k_max; ++k) {
                double acc = 0.0;
                for (double m : mu[cls]) acc += std::pow(m, k);
                st.p[cls][size_t(k)] = acc;
            }
        }
        return st;
    }
};

/// Q_{k+1} = Q_k'/k - sum_cls kappa_cls * p_{k-1}^{(cls)}.
inline double cascade_step(const CascadeState& state, double qk_prime, int k) {
    if (k < 1) throw std::invalid_argument("cascade_step: need k >= 1");
    double acc = qk_prime / k;
    for (size_t cls = 0; cls < state.kappa.size(); ++cls) {
        if (state.p[cls].size() < size_t(k)) throw std::invalid_argument("cascade_step: state too short");
        acc -= state.kappa[cls] * state.p[cls][size_t(k - 1)];
    }
    return acc;
}

struct SpectrumReconstruction {
    std::vector<std::complex<double>> roots;  // sorted by (re, im)
    double residual = 0.0;                    // max_k |rho_k(roots) - Q_k|
};

/// Recover the principal-curvature multiset from Q_1..Q_n via the Newton
/// conversion and the characteristic polynomial.
inline SpectrumReconstruction reconstruct_principal_curvatures(const std::vector<double>& q) {
    const int n = int(q.size());
    if (n < 1) throw std::invalid_argument("reconstruct_principal_curvatures: empty input");
    auto sigma = power_sums_to_elementary(q);
    // x^n - sigma_1 x^{n-1} + sigma_2 x^{n-2} - ... ; monic_roots wants
    // ascending coefficients below the leading term.
    std::vector<double> coeffs(static_cast<size_t>(n), 0.0);
    for (int k = 1; k <= n; ++k) {
        double c = sigma[size_t(k - 1)] * ((k % 2 == 1) ? -1.0 : 1.0);
        coeffs[size_t(n - k)] = c;
    }
    SpectrumReconstruction rec;
    rec.roots = monic_roots(coeffs);
    for (int k = 1; k <= n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (const auto& r : rec.roots) acc += std::pow(r, k);
        rec.residual = std::max(rec.residual, std::abs(acc - std::complex<double>(q[size_t(k - 1)])));
    }
    return rec;
}

}  // namespace tubemc
