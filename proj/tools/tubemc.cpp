// Command-line front end: symbolic expansion dumps, tube samples, and the
// verification suites over JSON-described examples.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tubemc/harness.hpp"

namespace {

using namespace tubemc;

std::string resolve_descriptor(const std::string& arg) {
    namespace fs = std::filesystem;
    if (fs::exists(arg)) return arg;
    std::vector<std::string> candidates;
    if (arg.find('/') == std::string::npos) {
        if (const char* dir = std::getenv("TUBEMC_CATALOG_DIR")) {
            candidates.push_back(std::string(dir) + "/" + arg);
            candidates.push_back(std::string(dir) + "/" + arg + ".json");
        }
        candidates.push_back("descriptors/" + arg);
        candidates.push_back("descriptors/" + arg + ".json");
    }
    for (const auto& c : candidates)
        if (fs::exists(c)) return c;
    return arg;  // let the loader report the failure
}

int cmd_expand(int i, int r) {
    TracePolynomial refined = upsilon(i, r, UpsilonSource::Refined);
    TracePolynomial brute = upsilon(i, r, UpsilonSource::Brute);
    std::cout << "refined:\n" << refined.dump();
    std::cout << "brute force:\n" << brute.dump();
    bool match = refined == brute;
    std::cout << (match ? "MATCH" : "MISMATCH") << "\n";
    return match ? 0 : 1;
}

int cmd_phi_psi(int d, bool brute_source) {
    const UpsilonSource src = brute_source ? UpsilonSource::Brute : UpsilonSource::Refined;
    PhiPsiClosedForms forms = closed_form_phi_psi(d);
    struct Row {
        std::string name;
        TracePolynomial combo;
        const BlockTracePolynomial* closed;
    };
    const Row rows[] = {
        {"Phi_{2d}(d)", phi(2 * d, d, src), &forms.phi_even_d},
        {"Phi_{2d+1}(d)", phi(2 * d + 1, d, src), &forms.phi_odd_d},
        {"Phi_{2d}(d+1)", phi(2 * d, d + 1, src), &forms.phi_even_d1},
        {"Phi_{2d+1}(d+1)", phi(2 * d + 1, d + 1, src), &forms.phi_odd_d1},
        {"Psi_{2d}(d)", psi(2 * d, d, src), &forms.psi_even_d},
        {"Psi_{2d+1}(d)", psi(2 * d + 1, d, src), &forms.psi_odd_d},
        {"Psi_{2d}(d+1)", psi(2 * d, d + 1, src), &forms.psi_even_d1},
        {"Psi_{2d+1}(d+1)", psi(2 * d + 1, d + 1, src), &forms.psi_odd_d1},
    };
    std::cout << "upsilon source: " << (brute_source ? "brute force" : "refined") << "\n";
    bool all = true;
    for (const auto& row : rows) {
        auto blocked = block_expand(row.combo);
        bool opaque_free = blocked.opaque().empty();
        bool match = blocked == *row.closed;
        all = all && opaque_free && match;
        std::cout << "== " << row.name << " (d=" << d << ")\n";
        std::cout << row.combo.dump();
        std::cout << "block form:\n" << blocked.dump();
        std::cout << "closed form:\n" << row.closed->dump();
        std::cout << (opaque_free ? "no opaque letters" : "OPAQUE RESIDUAL PRESENT") << ", "
                  << (match ? "MATCH" : "MISMATCH") << "\n";
    }
    return all ? 0 : 1;
}

int cmd_tube(const std::string& path, std::vector<double> radii, int k_max) {
    Descriptor desc = load_descriptor_file(resolve_descriptor(path));
    const CatalogExample& ex = desc.example;
    if (!ex.tube_at) {
        std::cerr << "example '" << ex.name << "' has no tube launch data\n";
        return 2;
    }
    auto points = sample_parameters(ex, 1, desc.sampling.seed);
    auto normals = sample_unit_sphere(ex.p, 1, desc.sampling.seed);
    TubePoint tp = ex.tube_at(points[0], normals[0]);
    std::cout << "example " << ex.name << ", first sampled (point, normal)\n";
    std::cout << std::setw(10) << "t";
    for (int k = 1; k <= k_max; ++k) std::cout << std::setw(16) << ("Q_" + std::to_string(k));
    std::cout << std::setw(14) << "step_err" << "\n";
    for (double t : radii) {
        try {
            TubeSample s = tube_shape(ex.ambient, tp, t, k_max);
            std::cout << std::setw(10) << std::fixed << std::setprecision(4) << t;
            for (double q : s.Q)
                std::cout << std::setw(16) << std::scientific << std::setprecision(6) << q;
            std::cout << std::setw(14) << std::scientific << std::setprecision(2) << s.step_error
                      << "\n";
        } catch (const BlowUpError& e) {
            std::cout << std::setw(10) << std::fixed << std::setprecision(4) << t
                      << "  focal blow-up near t = " << e.pole << "\n";
        }
    }
    return 0;
}

int cmd_verify(const std::string& path, const std::string& suite, int d, int k,
               const std::string& format, const std::string& out_path, int samples, int points,
               double tol, unsigned seed) {
    Descriptor desc = load_descriptor_file(resolve_descriptor(path));
    if (samples > 0) desc.sampling.normal_samples = samples;
    if (points > 0) desc.sampling.point_samples = points;
    desc.sampling.seed = seed;
    SuiteOptions opt;
    if (tol > 0) {
        opt.tol_zero = tol;
        opt.tol_const = tol;
        opt.auto_tolerance = false;
    }
    Report rep;
    if (suite == "subm-d")
        rep = suite_tube_invariants(desc.example, d, desc.sampling, {}, opt);
    else if (suite == "focal")
        rep = suite_focal_filtration(desc.example, k, desc.sampling, opt);
    else if (suite == "hypersurface")
        rep = suite_hypersurface(desc.example, k, desc.sampling, opt);
    else if (suite == "austere")
        rep = suite_austere_norm(desc.example, desc.sampling, opt);
    else {
        std::cerr << "unknown suite: " << suite << "\n";
        return 2;
    }
    std::string rendered = format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text();
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << rendered;
    } else {
        std::cout << rendered;
    }
    return rep.pass ? 0 : 1;
}

int cmd_selftest() {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "pass  " : "FAIL  ") << name << "\n";
        if (!ok) ++failures;
    };

    bool oracle = true;
    for (int i = 2; i <= 6 && oracle; ++i) {
        auto series = series_trace_power(i, 6);
        for (int r = 2; r <= 6; ++r)
            if (!(upsilon_refined(i, r) == series[size_t(r)])) oracle = false;
    }
    check("refined formula == brute force for 2 <= i,r <= 6", oracle);

    bool theta_ok = true;
    for (int a = 1; a <= 12; ++a)
        for (int b = 1; b <= a; ++b)
            if (theta(a, b) != binomial(a - 1, b - 1)) theta_ok = false;
    for (int a = 1; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b)
            for (int e = 0; e <= 8; ++e)
                if (!iterated_theta_identity_check(a, b, e)) theta_ok = false;
    check("theta closed form and iterated identity", theta_ok);

    bool phipsi = true;
    for (int dd = 1; dd <= 3; ++dd) {
        PhiPsiClosedForms f = closed_form_phi_psi(dd);
        phipsi = phipsi && block_expand(phi(2 * dd, dd)).opaque().empty() &&
                 block_expand(phi(2 * dd, dd)) == f.phi_even_d &&
                 block_expand(psi(2 * dd + 1, dd + 1)) == f.psi_odd_d1;
    }
    check("phi/psi closed forms, opaque cancellation (d <= 3)", phipsi);

    SamplingConfig s;
    s.point_samples = 2;
    s.normal_samples = 32;
    bool focal_ok = true;
    try {
        for (int kk = 1; kk <= 4; ++kk) {
            focal_ok = focal_ok &&
                       suite_focal_filtration(catalog_point_in_space_form(1.0, 3), kk, s).pass &&
                       suite_focal_filtration(catalog_great_subsphere(1, 3), kk, s).pass;
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        focal_ok = false;
    }
    check("focal filtration on closed-form catalog, k = 1..4", focal_ok);

    bool tube_ok = true;
    try {
        TubePoint tp;
        tp.data = catalog_great_subsphere(1, 3).data_at(Vec(0), (Vec(2) << 1, 0).finished());
        for (double t = 0.2; t <= 1.4; t += 0.3) {
            double q1 = tube_shape(SpaceForm{1.0, 3}, tp, t, 1).Q[0];
            double exact = std::tan(t) - 1.0 / std::tan(t);
            if (std::abs(q1 - exact) > 1e-8 * std::max(1.0, std::abs(exact))) tube_ok = false;
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        tube_ok = false;
    }
    check("integrated tube matches the closed form on S^1 in S^3", tube_ok);

    bool hyper_ok = true;
    try {
        hyper_ok = suite_hypersurface(catalog_clifford_family(), 2, s).pass &&
                   suite_hypersurface(catalog_rank_one_toy(), 1, s).pass;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        hyper_ok = false;
    }
    check("hypersurface parallels: flows, cascade, reconstruction", hyper_ok);

    std::cout << (failures == 0 ? "selftest PASS" : "selftest FAIL") << "\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher-order mean curvatures of tubes: expansion engine and verifier"};
    app.require_subcommand(1);

    int exp_i = 2, exp_r = 2;
    auto* expand = app.add_subcommand("expand", "print Upsilon_{ir} from both engines");
    expand->add_option("i", exp_i, "power of the shape operator")->required();
    expand->add_option("r", exp_r, "expansion order")->required();

    int pp_d = 1;
    bool pp_brute = false;
    auto* phipsi = app.add_subcommand("phi-psi", "binomial combinations and closed forms");
    phipsi->add_option("d", pp_d, "order parameter")->required();
    phipsi->add_flag("--brute", pp_brute, "source Upsilon values from the brute-force engine");

    std::string tube_desc;
    std::vector<double> tube_t{0.3};
    int tube_kmax = 4;
    auto* tube = app.add_subcommand("tube", "sample tube mean curvatures");
    tube->add_option("descriptor", tube_desc, "descriptor JSON")->required();
    tube->add_option("--t", tube_t, "radii");
    tube->add_option("--kmax", tube_kmax, "highest mean curvature order");

    std::string ver_desc, ver_suite, ver_format = "text", ver_out;
    int ver_d = 1, ver_k = 1, ver_samples = 0, ver_points = 0;
    double ver_tol = 0.0;
    unsigned ver_seed = 0;
    auto* verify = app.add_subcommand("verify", "run an identity suite and write a report");
    verify->add_option("descriptor", ver_desc, "descriptor JSON")->required();
    verify->add_option("--suite", ver_suite, "subm-d | focal | hypersurface | austere")
        ->required()
        ->check(CLI::IsMember({"subm-d", "focal", "hypersurface", "austere"}));
    verify->add_option("--d", ver_d, "order parameter for subm-d");
    verify->add_option("--k", ver_k, "filtration level / starting order");
    verify->add_option("--samples", ver_samples, "normal samples per point");
    verify->add_option("--points", ver_points, "parameter samples");
    verify->add_option("--tol", ver_tol, "override tolerance");
    verify->add_option("--seed", ver_seed, "sampling seed");
    verify->add_option("--format", ver_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--out", ver_out, "write the report to a file");

    app.add_subcommand("selftest", "run the property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (expand->parsed()) return cmd_expand(exp_i, exp_r);
        if (phipsi->parsed()) return cmd_phi_psi(pp_d, pp_brute);
        if (tube->parsed()) return cmd_tube(tube_desc, tube_t, tube_kmax);
        if (verify->parsed())
            return cmd_verify(ver_desc, ver_suite, ver_d, ver_k, ver_format, ver_out, ver_samples,
                              ver_points, ver_tol, ver_seed);
        return cmd_selftest();
    } catch (const DescriptorError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
