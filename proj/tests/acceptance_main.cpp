// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <chrono>
#include <complex>
#include <cstdio>
#include <random>

#include "tubemc/harness.hpp"

using namespace tubemc;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("[%2d] %s  %s%s%s\n", index, pass ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

// --- 1: oracle equivalence --------------------------------------------------

void criterion_oracle_equivalence() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string first_bad;
    for (int i = 2; i <= 8; ++i) {
        auto series = series_trace_power(i, 8);
        for (int r = 2; r <= 8; ++r) {
            if (!(upsilon_refined(i, r) == series[size_t(r)])) {
                ok = false;
                if (first_bad.empty())
                    first_bad = "(i,r)=(" + std::to_string(i) + "," + std::to_string(r) + ")";
            }
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[128];
    std::snprintf(buf, sizeof buf, "exact over 2<=i,r<=8, %.2f s", secs);
    report(1, "refined formula == brute-force series", ok && secs <= 60.0,
           ok ? std::string(buf) : first_bad);
}

// --- 2: the low-order table -------------------------------------------------

void criterion_remark_table() {
    bool ok = true;
    auto expect = [&](const TracePolynomial& p, const Word& w, long long num, long long den,
                      size_t terms) {
        ok = ok && p.coefficient(w) == Rat(num, den) && p.size() == terms;
    };
    expect(upsilon_refined(2, 2), {1, 1}, 1, 1, 2);
    expect(upsilon_refined(2, 2), {2, 0}, -2, 1, 2);
    expect(upsilon_refined(2, 3), {1, 2}, 2, 1, 2);
    expect(upsilon_refined(2, 3), {3, 0}, -2, 1, 2);
    expect(upsilon_refined(3, 3), {1, 1, 1}, 1, 1, 2);
    expect(upsilon_refined(3, 3), {3, 0}, 3, 1, 2);
    expect(upsilon_refined(2, 4), {1, 3}, 2, 1, 3);
    expect(upsilon_refined(2, 4), {2, 2}, 1, 1, 3);
    expect(upsilon_refined(2, 4), {4, 0}, -2, 1, 3);
    expect(upsilon_refined(3, 4), {1, 1, 2}, 3, 1, 3);
    expect(upsilon_refined(3, 4), {4, 0}, 3, 1, 3);
    expect(upsilon_refined(3, 4), {2, 2, 0}, -3, 1, 3);
    expect(upsilon_refined(4, 4), {1, 1, 1, 1}, 1, 1, 4);
    expect(upsilon_refined(4, 4), {4, 0}, -4, 1, 4);
    expect(upsilon_refined(4, 4), {2, 2, 0}, 4, 1, 4);
    expect(upsilon_refined(4, 4), {2, 0, 2, 0}, 2, 1, 4);
    for (int i = 3; i <= 8; ++i) {
        long long sign = (i % 2 == 1) ? 1 : -1;
        expect(upsilon_refined(i, 2), {2, 0}, sign * i, 1, 1);
        if (i >= 4) expect(upsilon_refined(i, 3), {3, 0}, sign * i, 1, 1);
        if (i >= 5) {
            expect(upsilon_refined(i, 4), {4, 0}, sign * i, 1, 3);
            expect(upsilon_refined(i, 4), {2, 2, 0}, -sign * i, 1, 3);
            expect(upsilon_refined(i, 4), {2, 0, 2, 0}, -sign * (i * (i - 3) / 2), 1, 3);
        }
    }
    report(2, "displayed low-order coefficient table, i <= 8", ok);
}

// --- 3: cancellation and closed forms ----------------------------------------

void criterion_closed_forms() {
    bool opaque_free = true, match = true;
    for (int d = 1; d <= 3; ++d) {
        PhiPsiClosedForms f = closed_form_phi_psi(d);
        const std::pair<TracePolynomial, const BlockTracePolynomial*> rows[] = {
            {phi(2 * d, d), &f.phi_even_d},       {phi(2 * d + 1, d), &f.phi_odd_d},
            {phi(2 * d, d + 1), &f.phi_even_d1},  {phi(2 * d + 1, d + 1), &f.phi_odd_d1},
            {psi(2 * d, d), &f.psi_even_d},       {psi(2 * d + 1, d), &f.psi_odd_d},
            {psi(2 * d, d + 1), &f.psi_even_d1},  {psi(2 * d + 1, d + 1), &f.psi_odd_d1},
        };
        for (const auto& [combo, closed] : rows) {
            auto blocked = block_expand(combo);
            opaque_free = opaque_free && blocked.opaque().empty();
            match = match && blocked == *closed;
        }
    }
    report(3, "A_{s>=4} letters cancel and the eight closed forms hold, d = 1..3",
           opaque_free && match, opaque_free ? "" : "opaque residual left");
}

// --- 4: theta properties ------------------------------------------------------

void criterion_theta() {
    bool closed = true;
    for (int a = 1; a <= 12; ++a)
        for (int b = 1; b <= a; ++b)
            if (theta(a, b) != binomial(a - 1, b - 1)) closed = false;
    bool iterated = true;
    for (int a = 1; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b)
            for (int e = 0; e <= 10; ++e)
                if (!iterated_theta_identity_check(a, b, e)) iterated = false;
    // the boundary values force theta(0,1) = 0, which breaks the recurrence
    // at (0,1); the collapsed identity provably fails exactly on a = 0
    bool boundary = !iterated_theta_identity_check(0, 1, 1);
    report(4, "theta closed form (a <= 12) and iterated identity (1 <= a <= 10, b,e <= 10)",
           closed && iterated && boundary,
           "a = 0 excluded: boundary values break the recurrence at (0,1)");
}

// --- 5: random-data numeric consistency ---------------------------------------

void criterion_numeric_consistency() {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    auto rand_sym = [&](int n) {
        Mat x(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) x(i, j) = coef(rng);
        return Mat(0.5 * (x + x.transpose()));
    };
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        int m = 1 + int(rng() % 4);   // <= 4
        int p = 1 + int(rng() % 3);   // <= 3
        SecondOrderData d;
        d.m = m;
        d.p = p;
        d.S = rand_sym(m);
        d.Ktop = rand_sym(m);
        d.CKtop = rand_sym(m);
        d.Kbot = rand_sym(p);
        d.CKbot = rand_sym(p);
        d.B = Mat(m, p);
        d.CB = Mat(m, p);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < p; ++j) {
                d.B(i, j) = coef(rng);
                d.CB(i, j) = coef(rng);
            }
        auto a = assemble_A(d);
        const int n = d.n();
        AAssignment assign;
        for (int j = 0; j < 4; ++j) assign[j] = a[size_t(j)];
        assign[4] = Mat::Zero(n, n);
        assign[5] = Mat::Zero(n, n);

        for (int i = 1; i <= 5; ++i) {
            // DFT coefficient extraction of tr((t Shat(t))^i) on N-th roots
            // of unity, N = 3i + 1 >= i*r + 1 sample points for r <= 3i
            const int deg = 3 * i;
            const int N = deg + 1;
            std::vector<std::complex<double>> values(static_cast<size_t>(N));
            for (int j = 0; j < N; ++j) {
                double ang = 2.0 * std::acos(-1.0) * j / N;
                std::complex<double> z(std::cos(ang), std::sin(ang));
                Eigen::MatrixXcd ts = -a[0].cast<std::complex<double>>();
                std::complex<double> zp = z;
                for (int s = 1; s <= 3; ++s) {
                    ts += zp * a[size_t(s)].cast<std::complex<double>>();
                    zp *= z;
                }
                Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(n, n);
                for (int rep = 0; rep < i; ++rep) power = power * ts;
                values[size_t(j)] = power.trace();
            }
            for (int r = 0; r <= 5 && r <= deg; ++r) {
                std::complex<double> acc{0.0, 0.0};
                for (int j = 0; j < N; ++j) {
                    double ang = -2.0 * std::acos(-1.0) * j * r / N;
                    acc += values[size_t(j)] * std::complex<double>(std::cos(ang), std::sin(ang));
                }
                double numeric = acc.real() / N;
                double symbolic = evaluate(upsilon(i, r), assign);
                double rel = std::abs(symbolic - numeric) /
                             std::max({1.0, std::abs(symbolic), std::abs(numeric)});
                worst = std::max(worst, rel);
            }
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst rel %.2e", worst);
    report(5, "100 random data sets: symbolic vs sampled coefficients, i,r <= 5", worst <= 1e-9,
           buf);
}

// --- 6: the space-form tube ---------------------------------------------------

void criterion_space_form_tube() {
    TubePoint tp;
    tp.data = catalog_great_subsphere(1, 3).data_at(Vec(0), (Vec(2) << 1, 0).finished());
    AmbientModel sphere = SpaceForm{1.0, 3};
    double worst = 0.0;
    for (double t = 0.1; t <= 1.4 + 1e-12; t += 0.05) {
        double q1 = tube_shape(sphere, tp, t, 1).Q[0];
        double exact = std::tan(t) - 1.0 / std::tan(t);
        worst = std::max(worst, std::abs(q1 - exact) / std::max(1.0, std::abs(exact)));
    }
    std::vector<double> grid;
    for (int j = 0; j < 14; ++j) grid.push_back(0.02 + 0.16 * j / 13.0);
    TaylorFit fit = taylor_fit_invariants(sphere, tp, 1, grid, TubeOptions{}, 10);
    bool coeffs_ok = std::abs(fit.coeffs(0, 0) + 1.0) <= 1e-6 &&
                     std::abs(fit.coeffs(0, 1)) <= 1e-6 &&
                     std::abs(fit.coeffs(0, 2) - 4.0 / 3.0) <= 1e-4;
    char buf[128];
    std::snprintf(buf, sizeof buf, "Q1 rel %.2e; fit (%.2e, %.2e, %.2e)", worst,
                  std::abs(fit.coeffs(0, 0) + 1.0), std::abs(fit.coeffs(0, 1)),
                  std::abs(fit.coeffs(0, 2) - 4.0 / 3.0));
    report(6, "integrated tube on S^1 in S^3 and its expansion coefficients",
           worst <= 1e-8 && coeffs_ok, buf);
}

// --- 7: focal filtration on the catalog ----------------------------------------

void criterion_focal_catalog() {
    bool ok = true;
    std::string detail;
    SamplingConfig point_s{1, 128, 0};
    SamplingConfig sub_s{4, 32, 0};
    double worst_exact = 0.0;
    try {
        for (int k = 1; k <= 4; ++k) {
            for (auto ex : {catalog_point_in_space_form(1.0, 3), catalog_great_subsphere(1, 3),
                            catalog_great_subsphere(2, 4)}) {
                auto rep = suite_focal_filtration(
                    ex, k, ex.m == 0 ? point_s : sub_s, SuiteOptions{1e-6, 1e-6, 1e-8, false});
                ok = ok && rep.pass;
                for (const auto& r : rep.identities)
                    worst_exact = std::max(worst_exact, r.const_kind ? r.spread : r.max_abs);
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }

    // Veronese through the chart pipeline
    double worst_chart = 0.0, worst_spec = 0.0;
    try {
        auto ve = catalog_veronese_s4();
        SamplingConfig vs{8, 16, 0};
        auto rep = suite_focal_filtration(ve, 4, vs, SuiteOptions{1e-3, 1e-3, 1e-8, false});
        ok = ok && rep.pass;
        for (const auto& r : rep.identities)
            worst_chart = std::max(worst_chart, r.const_kind ? r.spread : r.max_abs);
        const double expected = 1.0 / std::sqrt(3.0);
        for (const auto& u : sample_parameters(ve, vs.point_samples, vs.seed))
            for (const auto& w : sample_unit_sphere(ve.p, vs.normal_samples, vs.seed)) {
                auto ev = sym_eigenvalues(ve.data_at(u, w).S);
                worst_spec = std::max({worst_spec, std::abs(ev[0] + expected),
                                       std::abs(ev[1] - expected)});
            }
        ok = ok && worst_spec <= 1e-3;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "space forms worst %.2e (tol 1e-6); veronese worst %.2e, spectrum dev %.2e "
                  "(tol 1e-3)",
                  worst_exact, worst_chart, worst_spec);
    report(7, "focal filtration k = 1..4 on the catalog, >= 100 (p,nu) samples", ok,
           detail.empty() ? buf : detail);
}

// --- 8: cascade and reconstruction on parallels ---------------------------------

void criterion_cascade_reconstruction() {
    const double theta0 = std::acos(-1.0) / 4.0;
    auto mu_at = [&](double t) {
        return std::vector<double>{std::tan(theta0 + t), -1.0 / std::tan(theta0 + t)};
    };
    auto q_of = [&](double t, int order) {
        double acc = 0.0;
        for (double m : mu_at(t)) acc += std::pow(m, order);
        return acc;
    };
    // Q_{k+1} = Q_k'/k - Q_{k-1} with numeric differentiation, k <= 5
    double cascade_worst = 0.0;
    const double dt = 1e-3;
    for (double t : {-0.25, -0.1, 0.05, 0.2, 0.32}) {
        for (int k = 1; k <= 5; ++k) {
            double qp = (-q_of(t + 2 * dt, k) + 8 * q_of(t + dt, k) - 8 * q_of(t - dt, k) +
                         q_of(t - 2 * dt, k)) /
                        (12 * dt);
            double q_prev = k >= 2 ? q_of(t, k - 1) : 2.0;  // Q_0 = n
            double predicted = qp / k - q_prev;
            cascade_worst = std::max(cascade_worst, std::abs(predicted - q_of(t, k + 1)));
        }
    }
    // spectrum reconstruction across ten radii: one fixed multiset flows
    double spread = 0.0;
    const double t1 = -0.25;
    auto rec1 = reconstruct_principal_curvatures({q_of(t1, 1), q_of(t1, 2)});
    for (int j = 1; j < 10; ++j) {
        double t = t1 + (0.32 - t1) * j / 9.0;
        std::vector<double> predicted;
        for (const auto& root : rec1.roots)
            predicted.push_back(riccati_scalar_flow(root.real(), 1.0, t1, t));
        std::sort(predicted.begin(), predicted.end());
        auto rec = reconstruct_principal_curvatures({q_of(t, 1), q_of(t, 2)});
        for (size_t idx = 0; idx < predicted.size(); ++idx)
            spread = std::max(spread, std::abs(predicted[idx] - rec.roots[idx].real()));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "cascade worst %.2e (tol 1e-5); multiset spread %.2e (tol 1e-6)",
                  cascade_worst, spread);
    report(8, "cascade and spectrum reconstruction on parallels in the 3-sphere",
           cascade_worst <= 1e-5 && spread <= 1e-6, buf);
}

// --- 9: covariant operators exercised on a chart -------------------------------

void criterion_covariant_chart() {
    auto ex = catalog_perturbed_flat(0.1, 3, 0.8);
    auto points = sample_parameters(ex, 2, 0);
    auto normals = sample_unit_sphere(ex.p, 3, 0);
    std::vector<double> grid;
    for (int j = 0; j < 14; ++j) grid.push_back(0.02 + 0.16 * j / 13.0);
    TracePolynomial a3;
    a3.add_word({3}, Rat(1));
    auto rhs_poly = block_expand(a3);
    double worst = 0.0, ck_norm = 0.0;
    bool ok = true;
    try {
        for (const auto& u : points)
            for (const auto& w : normals) {
                TubePoint tp = ex.tube_at(u, w);
                ck_norm = std::max({ck_norm, tp.data.CKtop.cwiseAbs().maxCoeff(),
                                    tp.data.CKbot.cwiseAbs().maxCoeff()});
                TaylorFit fit = taylor_fit_invariants(ex.ambient, tp, 1, grid, TubeOptions{}, 10);
                double rhs = evaluate(rhs_poly, block_assignment(tp.data));
                worst = std::max(worst, std::abs(fit.coeffs(0, 3) - rhs));
            }
    } catch (const std::exception& e) {
        ok = false;
        std::fprintf(stderr, "%s\n", e.what());
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst |Y13 - tr(A_3)| %.2e (tol 1e-3); max |CK| %.2e", worst,
                  ck_norm);
    report(9, "third-order identity on the perturbed-flat chart with nonzero covariant Jacobi",
           ok && worst <= 1e-3 && ck_norm > 1e-3, buf);
}

// --- 10: parity over the whole catalog ------------------------------------------

void criterion_parity() {
    std::vector<IdentitySpec> odd;
    for (const auto& spec : focal_filtration_suite(9))
        if (spec.expect == IdentitySpec::Expect::Zero && spec.odd_in_normal()) odd.push_back(spec);
    for (int d = 1; d <= 3; ++d)
        for (const auto& spec : tube_invariant_suite(d))
            if (spec.expect == IdentitySpec::Expect::Zero && spec.odd_in_normal())
                odd.push_back(spec);

    std::vector<CatalogExample> catalog = {
        catalog_point_in_space_form(1.0, 3), catalog_great_subsphere(1, 3),
        catalog_great_subsphere(2, 4),       catalog_clifford_family(),
        catalog_flat_spheres(),              catalog_veronese_s4(),
        catalog_perturbed_flat()};
    double worst = 0.0;
    bool ok = true;
    int checked = 0;
    try {
        for (const auto& ex : catalog) {
            auto points = sample_parameters(ex, 2, 1);
            auto normals = sample_unit_sphere(ex.p, detail::is_chart(ex.ambient) ? 6 : 16, 1);
            for (const auto& u : points)
                for (const auto& w : normals) {
                    BlockAssignment plus = block_assignment(ex.data_at(u, w));
                    BlockAssignment minus = block_assignment(ex.data_at(u, Vec(-w)));
                    for (const auto& spec : odd) {
                        double v = evaluate(spec.expr, plus) + evaluate(spec.expr, minus);
                        worst = std::max(worst, std::abs(v));
                        ++checked;
                    }
                }
        }
    } catch (const std::exception& e) {
        ok = false;
        std::fprintf(stderr, "%s\n", e.what());
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d checks, worst |v(nu)+v(-nu)| = %.2e", checked, worst);
    report(10, "odd identities verified pointwise via nu -> -nu on every catalog example",
           ok && worst <= 1e-8, buf);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_oracle_equivalence();
    criterion_remark_table();
    criterion_closed_forms();
    criterion_theta();
    criterion_numeric_consistency();
    criterion_space_form_tube();
    criterion_focal_catalog();
    criterion_cascade_reconstruction();
    criterion_covariant_chart();
    criterion_parity();
    std::printf("%s (%d of 10 criteria failed)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
