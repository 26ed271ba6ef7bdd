#pragma once

#include <fstream>

#include <json.hpp>

#include "tubemc/tube.hpp"

namespace tubemc {

using json = nlohmann::json;

struct SamplingConfig {
    int point_samples = 4;
    int normal_samples = 32;
    unsigned seed = 0;
};

inline void from_json_sampling(const json& j, SamplingConfig& s) {
    if (j.contains("points")) s.point_samples = j.at("points").get<int>();
    if (j.contains("normals")) s.normal_samples = j.at("normals").get<int>();
    if (j.contains("seed")) s.seed = j.at("seed").get<unsigned>();
}

/// Scalar-flow description of a hypersurface parallel family: per-class
/// Jacobi curvatures and initial principal curvatures.
struct HypersurfaceFamily {
    std::vector<double> kappa;
    std::vector<std::vector<double>> mu0;
    double t_min = -0.4;
    double t_max = 0.4;

    int n() const {
        int total = 0;
        for (const auto& cls : mu0) total += int(cls.size());
        return total;
    }
};

/// One catalog entry: an ambient model, a submanifold with data access at
/// sampled (point, normal) pairs, and the metadata the verification suites
/// require as preconditions.
struct CatalogExample {
    std::string name;
    AmbientModel ambient;
    int m = 0;
    int p = 0;  // restricted normal dimension; fiber sphere is S^p

    std::function<SecondOrderData(const Vec& u, const Vec& w)> data_at;
    std::function<TubePoint(const Vec& u, const Vec& w)> tube_at;
    Vec dom_lo, dom_hi;  // parameter box, size m

    // metadata consumed by suite preconditions
    bool tubes_constant_Q = false;  // every Q_l(t) constant on nearby tubes
    bool focal = false;             // focal submanifold of an isoparametric family
    int focal_k_max = 0;            // largest filtration level claimed
    bool austere_cpc = false;       // austere with constant principal curvatures
    std::optional<HypersurfaceFamily> family;

    int n() const { return m + p; }
};

// ---------------------------------------------------------------------------
// closed-form space-form entries
// ---------------------------------------------------------------------------

namespace detail {

inline SecondOrderData totally_geodesic_data(double c, int m, int p) {
    SecondOrderData d;
    d.m = m;
    d.p = p;
    d.S = Mat::Zero(m, m);
    d.Ktop = c * Mat::Identity(m, m);
    d.CKtop = Mat::Zero(m, m);
    d.Kbot = c * Mat::Identity(p, p);
    d.CKbot = Mat::Zero(p, p);
    d.B = Mat::Zero(m, p);
    d.CB = Mat::Zero(m, p);
    return d;
}

}  // namespace detail

/// A point of the round sphere (or any space form): m = 0 focal example.
inline CatalogExample catalog_point_in_space_form(double c = 1.0, int dim = 3) {
    CatalogExample e;
    e.name = "point_in_s" + std::to_string(dim);
    e.ambient = SpaceForm{c, dim};
    e.m = 0;
    e.p = dim - 1;
    e.dom_lo = Vec(0);
    e.dom_hi = Vec(0);
    double cc = c;
    int p = e.p;
    e.data_at = [cc, p](const Vec&, const Vec&) { return detail::totally_geodesic_data(cc, 0, p); };
    e.tube_at = [cc, p](const Vec&, const Vec&) {
        TubePoint tp;
        tp.data = detail::totally_geodesic_data(cc, 0, p);
        return tp;
    };
    e.tubes_constant_Q = true;
    e.focal = true;
    e.focal_k_max = 99;  // tubes are totally isoparametric geodesic spheres
    e.austere_cpc = true;
    return e;
}

/// Great totally geodesic subsphere S^m of the round S^{n}, ambient dim = n.
inline CatalogExample catalog_great_subsphere(int m, int dim, double c = 1.0) {
    if (m < 1 || m >= dim - 1)
        throw std::invalid_argument("catalog_great_subsphere: need 1 <= m <= dim-2");
    CatalogExample e;
    e.name = "great_subsphere_s" + std::to_string(m) + "_in_s" + std::to_string(dim);
    e.ambient = SpaceForm{c, dim};
    e.m = m;
    e.p = dim - 1 - m;
    e.dom_lo = Vec::Zero(m);
    e.dom_hi = Vec::Constant(m, 1.0);  // homogeneous: the parameter is immaterial
    double cc = c;
    int mm = m, pp = e.p;
    e.data_at = [cc, mm, pp](const Vec&, const Vec&) {
        return detail::totally_geodesic_data(cc, mm, pp);
    };
    e.tube_at = [cc, mm, pp](const Vec&, const Vec&) {
        TubePoint tp;
        tp.data = detail::totally_geodesic_data(cc, mm, pp);
        return tp;
    };
    e.tubes_constant_Q = true;
    e.focal = true;
    e.focal_k_max = 99;
    e.austere_cpc = true;
    return e;
}

/// Minimal Clifford torus parallels in the round 3-sphere: the hypersurface
/// family with principal curvatures tan(theta), -cot(theta).
inline CatalogExample catalog_clifford_family(double theta0 = 0.78539816339744831, double c = 1.0) {
    CatalogExample e;
    e.name = "clifford_family_s3";
    e.ambient = SpaceForm{c, 3};
    e.m = 2;
    e.p = 0;
    e.dom_lo = Vec::Zero(2);
    e.dom_hi = Vec::Constant(2, 1.0);
    const double s = std::sqrt(c);
    const double l1 = s * std::tan(s * theta0), l2 = -s / std::tan(s * theta0);
    double cc = c;
    e.data_at = [cc, l1, l2](const Vec&, const Vec& w) {
        SecondOrderData d;
        d.m = 2;
        d.p = 0;
        d.S = Mat::Zero(2, 2);
        d.S(0, 0) = w[0] * l1;
        d.S(1, 1) = w[0] * l2;
        d.Ktop = cc * Mat::Identity(2, 2);
        d.CKtop = Mat::Zero(2, 2);
        d.Kbot = Mat(0, 0);
        d.CKbot = Mat(0, 0);
        d.B = Mat(2, 0);
        d.CB = Mat(2, 0);
        return d;
    };
    auto data = e.data_at;
    e.tube_at = [data](const Vec& u, const Vec& w) {
        TubePoint tp;
        tp.data = data(u, w);
        return tp;
    };
    e.tubes_constant_Q = true;
    HypersurfaceFamily fam;
    fam.kappa = {c};
    fam.mu0 = {{l1, l2}};
    const double margin = 0.4;
    fam.t_min = -theta0 + margin;
    fam.t_max = std::acos(-1.0) / (2.0 * s) - theta0 - margin;
    e.family = fam;
    return e;
}

/// Geodesic spheres in flat space: mu(t) = -1/(t + r0) in both normal
/// directions of the sphere of radius r0.
inline CatalogExample catalog_flat_spheres(double r0 = 1.0, int dim = 3) {
    CatalogExample e;
    e.name = "flat_spheres_r" + std::to_string(dim);
    e.ambient = SpaceForm{0.0, dim};
    e.m = dim - 1;
    e.p = 0;
    e.dom_lo = Vec::Zero(e.m);
    e.dom_hi = Vec::Constant(e.m, 1.0);
    int mm = e.m;
    e.data_at = [mm, r0](const Vec&, const Vec& w) {
        SecondOrderData d;
        d.m = mm;
        d.p = 0;
        d.S = (w[0] * (-1.0 / r0)) * Mat::Identity(mm, mm);
        d.Ktop = Mat::Zero(mm, mm);
        d.CKtop = Mat::Zero(mm, mm);
        d.Kbot = Mat(0, 0);
        d.CKbot = Mat(0, 0);
        d.B = Mat(mm, 0);
        d.CB = Mat(mm, 0);
        return d;
    };
    auto data = e.data_at;
    e.tube_at = [data](const Vec& u, const Vec& w) {
        TubePoint tp;
        tp.data = data(u, w);
        return tp;
    };
    e.tubes_constant_Q = true;
    HypersurfaceFamily fam;
    fam.kappa = {0.0};
    fam.mu0 = {std::vector<double>(size_t(e.m), -1.0 / r0)};
    fam.t_min = -0.4 * r0;
    fam.t_max = 2.0 * r0;
    e.family = fam;
    return e;
}

/// Curvature-adapted toy in a rank-one model: two Jacobi classes {c, 4c}
/// with one constant initial principal curvature each.
inline CatalogExample catalog_rank_one_toy(double c = 1.0, double mu_c = 0.5,
                                           double mu_4c = -0.3) {
    CatalogExample e;
    e.name = "rank_one_toy";
    e.ambient = RankOneAdapted{c, 1, 1};
    e.m = 2;
    e.p = 0;
    e.dom_lo = Vec::Zero(2);
    e.dom_hi = Vec::Constant(2, 1.0);
    HypersurfaceFamily fam;
    fam.kappa = {c, 4.0 * c};
    fam.mu0 = {{mu_c}, {mu_4c}};
    fam.t_min = -0.25;
    fam.t_max = 0.45;
    e.family = fam;
    e.tubes_constant_Q = true;
    return e;
}

// ---------------------------------------------------------------------------
// chart-metric entries
// ---------------------------------------------------------------------------

/// Stereographic chart of the round unit sphere of the given manifold
/// dimension: g = 4/(1+|y|^2)^2 * I.
inline ChartMetric stereographic_sphere_chart(int dim) {
    ChartMetric chart;
    chart.dim = dim;
    chart.metric = [dim](const Vec& y) {
        double s = 2.0 / (1.0 + y.squaredNorm());
        return Mat(s * s * Mat::Identity(dim, dim));
    };
    return chart;
}

/// Conformally perturbed flat chart: g = (1 + a x_1^2) * I. Not locally
/// symmetric, so the covariant Jacobi operator is exercised for real.
inline ChartMetric perturbed_flat_chart(int dim, double a) {
    ChartMetric chart;
    chart.dim = dim;
    chart.metric = [dim, a](const Vec& y) {
        return Mat((1.0 + a * y[0] * y[0]) * Mat::Identity(dim, dim));
    };
    return chart;
}

/// The Veronese surface in the round 4-sphere, through the stereographic
/// chart. Its shape spectrum is {+1/sqrt3, -1/sqrt3} in every unit normal
/// direction.
inline CatalogExample catalog_veronese_s4() {
    CatalogExample e;
    e.name = "veronese_s4";
    ChartMetric chart = stereographic_sphere_chart(4);
    e.ambient = chart;
    e.m = 2;
    e.p = 1;

    SubmanifoldChart sub;
    sub.m = 2;
    sub.embed = [](const Vec& uv) {
        // sphere of radius sqrt(3), angles (theta, phi)
        const double r = std::sqrt(3.0);
        double th = uv[0], ph = uv[1];
        double u1 = r * std::sin(th) * std::cos(ph);
        double u2 = r * std::sin(th) * std::sin(ph);
        double u3 = r * std::cos(th);
        // classical quadratic embedding into the unit 4-sphere
        Vec x(5);
        x << u2 * u3 / r, u1 * u3 / r, u1 * u2 / r, (u1 * u1 - u2 * u2) / (2.0 * r),
            (u1 * u1 + u2 * u2 - 2.0 * u3 * u3) / 6.0;
        // stereographic projection from the north pole (x5 <= 1/2 < 1)
        Vec y(4);
        for (int j = 0; j < 4; ++j) y[j] = x[j] / (1.0 - x[4]);
        return y;
    };
    sub.dom_lo = (Vec(2) << 0.6, 0.2).finished();
    sub.dom_hi = (Vec(2) << 2.4, 5.9).finished();

    auto chart_copy = chart;
    e.data_at = [chart_copy, sub](const Vec& u, const Vec& w) {
        return second_order_data(chart_copy, sub, u, w);
    };
    e.tube_at = [chart_copy, sub](const Vec& u, const Vec& w) {
        return tube_point_from_chart(chart_copy, sub, u, w);
    };
    e.dom_lo = sub.dom_lo;
    e.dom_hi = sub.dom_hi;
    e.tubes_constant_Q = true;
    e.focal = true;
    e.focal_k_max = 99;  // focal surface of a totally isoparametric family
    e.austere_cpc = true;
    return e;
}

/// A round circle in the perturbed flat chart; no constancy metadata, used
/// to exercise the covariant machinery and the refusal paths.
inline CatalogExample catalog_perturbed_flat(double a = 0.1, int dim = 3, double radius = 0.8) {
    CatalogExample e;
    e.name = "perturbed_flat";
    ChartMetric chart = perturbed_flat_chart(dim, a);
    e.ambient = chart;
    e.m = 1;
    e.p = dim - 2;

    SubmanifoldChart sub;
    sub.m = 1;
    sub.embed = [dim, radius](const Vec& u) {
        Vec y = Vec::Zero(dim);
        y[0] = radius * std::cos(u[0]);
        y[1] = radius * std::sin(u[0]);
        return y;
    };
    sub.dom_lo = Vec::Constant(1, 0.0);
    sub.dom_hi = Vec::Constant(1, 6.28);

    auto chart_copy = chart;
    e.data_at = [chart_copy, sub](const Vec& u, const Vec& w) {
        return second_order_data(chart_copy, sub, u, w);
    };
    e.tube_at = [chart_copy, sub](const Vec& u, const Vec& w) {
        return tube_point_from_chart(chart_copy, sub, u, w);
    };
    e.dom_lo = sub.dom_lo;
    e.dom_hi = sub.dom_hi;
    return e;
}

// ---------------------------------------------------------------------------
// JSON descriptor ingestion
// ---------------------------------------------------------------------------

struct Descriptor {
    CatalogExample example;
    SamplingConfig sampling;
};

struct DescriptorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Descriptor layout:
///   {"ambient": {"type": "space_form", "c": 1.0, "dim": 3}
///              | {"type": "chart", "builtin": "veronese_s4" | "perturbed_flat",
///                 "params": {...}}
///              | {"type": "rank_one", "c": 1.0},
///    "submanifold": {"builtin": "point" | "great_subsphere" | "clifford_family"
///                    | "flat_spheres" | "veronese" | "circle" | "toy", ...},
///    "sampling": {"points": 4, "normals": 32, "seed": 0}}
/// "dim" is the dimension of the ambient manifold.
inline Descriptor parse_descriptor(const json& j) {
    Descriptor d;
    if (j.contains("sampling")) from_json_sampling(j.at("sampling"), d.sampling);
    if (!j.contains("ambient") || !j.contains("submanifold"))
        throw DescriptorError("descriptor needs \"ambient\" and \"submanifold\"");
    const json& amb = j.at("ambient");
    const json& sub = j.at("submanifold");
    const std::string atype = amb.value("type", "space_form");
    const std::string builtin = sub.value("builtin", "");

    if (atype == "space_form") {
        double c = amb.value("c", 1.0);
        int dim = amb.value("dim", 3);
        if (builtin == "point") {
            d.example = catalog_point_in_space_form(c, dim);
        } else if (builtin == "great_subsphere") {
            d.example = catalog_great_subsphere(sub.value("m", 1), dim, c);
        } else if (builtin == "clifford_family") {
            if (dim != 3 || c <= 0) throw DescriptorError("clifford_family lives in the round 3-sphere");
            d.example = catalog_clifford_family(sub.value("theta0", 0.78539816339744831), c);
        } else if (builtin == "flat_spheres") {
            if (c != 0.0) throw DescriptorError("flat_spheres needs c = 0");
            d.example = catalog_flat_spheres(sub.value("r0", 1.0), dim);
        } else {
            throw DescriptorError("unknown space-form submanifold builtin: " + builtin);
        }
    } else if (atype == "chart") {
        const std::string which = amb.value("builtin", "");
        json params = amb.value("params", json::object());
        if (which == "veronese_s4") {
            d.example = catalog_veronese_s4();
        } else if (which == "perturbed_flat") {
            d.example = catalog_perturbed_flat(params.value("a", 0.1), params.value("dim", 3),
                                               sub.value("radius", 0.8));
        } else {
            throw DescriptorError("unknown chart builtin: " + which);
        }
    } else if (atype == "rank_one") {
        d.example = catalog_rank_one_toy(amb.value("c", 1.0), sub.value("mu_c", 0.5),
                                         sub.value("mu_4c", -0.3));
    } else {
        throw DescriptorError("unknown ambient type: " + atype);
    }
    return d;
}

/// Reads a descriptor file; malformed JSON reports line and column.
inline Descriptor load_descriptor_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DescriptorError("cannot open descriptor: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        size_t line = 1, col = 1;
        for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw DescriptorError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                              ": malformed JSON: " + e.what());
    }
    return parse_descriptor(j);
}

}  // namespace tubemc
