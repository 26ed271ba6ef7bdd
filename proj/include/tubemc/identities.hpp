#pragma once

#include "tubemc/upsilon.hpp"

namespace tubemc {

/// One verifiable curvature-invariant identity: a block trace expression
/// together with its expected behavior over the unit normal bundle.
struct IdentitySpec {
    enum class Expect { Zero, Const };

    std::string name;
    BlockTracePolynomial expr;
    Expect expect = Expect::Zero;
    std::string tag;  // which suite/case produced it
    // tube preconditions: Q_l(t) must be constant for l in [q_lo, q_hi]
    int q_lo = 0, q_hi = 0;

    bool odd_in_normal() const {
        for (const auto& [w, c] : expr.terms())
            if (!w.odd_in_normal()) return false;
        return !expr.terms().empty();
    }
};

namespace detail {

inline std::vector<BlockLetter> word_s_pow(int k) {
    return std::vector<BlockLetter>(size_t(k), BlockLetter::S);
}
inline std::vector<BlockLetter> word_s_pow_ktop(int k) {
    auto w = word_s_pow(k);
    w.push_back(BlockLetter::Ktop);
    return w;
}
inline std::vector<BlockLetter> word_kbot_pow(int k, bool ck_tail = false) {
    std::vector<BlockLetter> w(size_t(k), BlockLetter::Kbot);
    if (ck_tail) w.push_back(BlockLetter::CKbot);
    return w;
}

inline BlockTracePolynomial bpoly(
    std::initializer_list<std::pair<std::vector<BlockLetter>, Rat>> terms) {
    BlockTracePolynomial p;
    for (const auto& [w, c] : terms) p.add_word(w, c);
    return p;
}

}  // namespace detail

/// The eight tube-invariant statements at order d, as identities on the
/// submanifold data. Expressions are exactly the closed forms of the
/// binomial combinations; preconditions are the constant-Q ranges each
/// combination consumes.
inline std::vector<IdentitySpec> tube_invariant_suite(int d,
                                                      const std::vector<int>& cases = {}) {
    if (d < 1) throw std::invalid_argument("tube_invariant_suite: need d >= 1");
    PhiPsiClosedForms f = closed_form_phi_psi(d);
    auto wanted = [&](int c) {
        return cases.empty() || std::find(cases.begin(), cases.end(), c) != cases.end();
    };
    using E = IdentitySpec::Expect;
    std::string t = "subm-d d=" + std::to_string(d);
    std::vector<IdentitySpec> out;
    auto add = [&](int c, std::string name, BlockTracePolynomial expr, E e, int qlo, int qhi) {
        if (!wanted(c)) return;
        out.push_back({std::move(name), std::move(expr), e, t + " case " + std::to_string(c),
                       qlo, qhi});
    };
    add(1, "Q_" + std::to_string(2 * d) + " + 3^-d rho_d(Kbot)", f.phi_even_d, E::Const, 2 * d,
        3 * d);
    add(2, "Q_" + std::to_string(2 * d + 1) + " - d 3^{1-d}/4 tr(Kbot^{d-1} CKbot)", f.phi_odd_d,
        E::Zero, 2 * d + 1, 3 * d + 1);
    add(3, "Q_" + std::to_string(2 * d), f.phi_even_d1, E::Const, 2 * d, 3 * d + 1);
    add(4, "Q_" + std::to_string(2 * d + 1), f.phi_odd_d1, E::Zero, 2 * d + 1, 3 * d + 2);
    add(5, "(2d-1) tr(S^{2d-2} Ktop) + (3d-1) Q_{2d} - 3^-d rho_d(Kbot)", f.psi_even_d, E::Const,
        2 * d - 1, 3 * d - 1);
    add(6, "2d tr(S^{2d-1} Ktop) + 3d Q_{2d+1} + d 3^{1-d}/4 tr(Kbot^{d-1} CKbot)", f.psi_odd_d,
        E::Zero, 2 * d, 3 * d);
    add(7, "(2d-1) tr(S^{2d-2} Ktop) + 3d Q_{2d}", f.psi_even_d1, E::Const, 2 * d - 1, 3 * d);
    add(8, "2d tr(S^{2d-1} Ktop) + (3d+1) Q_{2d+1}", f.psi_odd_d1, E::Zero, 2 * d, 3 * d + 1);
    return out;
}

/// The cumulative focal filtration identity set at level k.
inline std::vector<IdentitySpec> focal_filtration_suite(int k) {
    if (k < 1) throw std::invalid_argument("focal_filtration_suite: need k >= 1");
    using E = IdentitySpec::Expect;
    using L = BlockLetter;
    namespace dd = detail;
    std::vector<IdentitySpec> out;
    auto add = [&](int level, std::string name, BlockTracePolynomial expr, E e) {
        out.push_back({std::move(name), std::move(expr), e,
                       "focal k=" + std::to_string(level), 1, level});
    };

    add(1, "Q_1", dd::bpoly({{dd::word_s_pow(1), Rat(1)}}), E::Zero);
    add(1, "Q_2 + tr(Ktop) + tr(Kbot)/3",
        dd::bpoly({{dd::word_s_pow(2), Rat(1)}, {{L::Ktop}, Rat(1)}, {{L::Kbot}, Rat(1, 3)}}),
        E::Const);
    add(1, "Q_3 + tr(S Ktop) + tr(CKtop)/2 + tr(CKbot)/4",
        dd::bpoly({{dd::word_s_pow(3), Rat(1)},
                   {dd::word_s_pow_ktop(1), Rat(1)},
                   {{L::CKtop}, Rat(1, 2)},
                   {{L::CKbot}, Rat(1, 4)}}),
        E::Zero);
    if (k >= 2) {
        add(2, "Q_2 - 2 tr(Kbot)/3",
            dd::bpoly({{dd::word_s_pow(2), Rat(1)}, {{L::Kbot}, Rat(-2, 3)}}), E::Const);
        add(2, "Q_3 + tr(S Ktop) - tr(CKbot)/4",
            dd::bpoly({{dd::word_s_pow(3), Rat(1)},
                       {dd::word_s_pow_ktop(1), Rat(1)},
                       {{L::CKbot}, Rat(-1, 4)}}),
            E::Zero);
        add(2, "Ric(nu) = tr(Ktop) + tr(Kbot)",
            dd::bpoly({{{L::Ktop}, Rat(1)}, {{L::Kbot}, Rat(1)}}), E::Const);
        add(2, "tr(CKtop) + tr(CKbot)",
            dd::bpoly({{{L::CKtop}, Rat(1)}, {{L::CKbot}, Rat(1)}}), E::Zero);
    }
    if (k >= 3) {
        add(3, "tr(Kbot)", dd::bpoly({{{L::Kbot}, Rat(1)}}), E::Const);
        add(3, "Q_3 + 3 tr(CKbot)/4",
            dd::bpoly({{dd::word_s_pow(3), Rat(1)}, {{L::CKbot}, Rat(3, 4)}}), E::Zero);
        add(3, "Q_2", dd::bpoly({{dd::word_s_pow(2), Rat(1)}}), E::Const);
        add(3, "tr(S Ktop) - tr(CKbot)",
            dd::bpoly({{dd::word_s_pow_ktop(1), Rat(1)}, {{L::CKbot}, Rat(-1)}}), E::Zero);
    }
    if (k >= 4) {
        add(4, "tr(CKbot)", dd::bpoly({{{L::CKbot}, Rat(1)}}), E::Zero);
        add(4, "Q_3", dd::bpoly({{dd::word_s_pow(3), Rat(1)}}), E::Zero);
        add(4, "tr(S Ktop)", dd::bpoly({{dd::word_s_pow_ktop(1), Rat(1)}}), E::Zero);
    }
    if (k >= 5) {
        add(5, "Q_4 - 2 rho_2(Kbot)/9",
            dd::bpoly({{dd::word_s_pow(4), Rat(1)}, {dd::word_kbot_pow(2), Rat(-2, 9)}}),
            E::Const);
        add(5, "3 tr(S^2 Ktop) + rho_2(Kbot)",
            dd::bpoly({{dd::word_s_pow_ktop(2), Rat(3)}, {dd::word_kbot_pow(2), Rat(1)}}),
            E::Const);
    }
    if (k >= 6) {
        add(6, "rho_2(Kbot)", dd::bpoly({{dd::word_kbot_pow(2), Rat(1)}}), E::Const);
        add(6, "2 tr(S^3 Ktop) + 3 Q_5 + tr(Kbot CKbot)/12",
            dd::bpoly({{dd::word_s_pow_ktop(3), Rat(2)},
                       {dd::word_s_pow(5), Rat(3)},
                       {dd::word_kbot_pow(1, true), Rat(1, 12)}}),
            E::Zero);
        add(6, "Q_4", dd::bpoly({{dd::word_s_pow(4), Rat(1)}}), E::Const);
        add(6, "tr(S^2 Ktop)", dd::bpoly({{dd::word_s_pow_ktop(2), Rat(1)}}), E::Const);
    }
    for (int level = 7; level <= k; ++level) {
        int d = (level - 1) / 3;
        long long p3 = 1;
        for (int j = 0; j < d; ++j) p3 *= 3;
        switch (level % 3) {
            case 1:  // level = 3d+1
                add(level, "Q_" + std::to_string(2 * d),
                    dd::bpoly({{dd::word_s_pow(2 * d), Rat(1)}}), E::Const);
                add(level, "rho_" + std::to_string(d) + "(Kbot)",
                    dd::bpoly({{dd::word_kbot_pow(d), Rat(1)}}), E::Const);
                add(level, "tr(S^" + std::to_string(2 * d - 2) + " Ktop)",
                    dd::bpoly({{dd::word_s_pow_ktop(2 * d - 2), Rat(1)}}), E::Const);
                add(level, "Q_" + std::to_string(2 * d + 1) + " - d 3^{1-d}/4 tr(Kbot^{d-1} CKbot)",
                    dd::bpoly({{dd::word_s_pow(2 * d + 1), Rat(1)},
                               {dd::word_kbot_pow(d - 1, true), -Rat(3 * d) / Rat(4 * p3)}}),
                    E::Zero);
                add(level, "2d tr(S^{2d-1} Ktop) + (3d+1) Q_{2d+1}",
                    dd::bpoly({{dd::word_s_pow_ktop(2 * d - 1), Rat(2 * d)},
                               {dd::word_s_pow(2 * d + 1), Rat(3 * d + 1)}}),
                    E::Zero);
                break;
            case 2:  // level = 3d+2
                add(level, "Q_" + std::to_string(2 * d + 1),
                    dd::bpoly({{dd::word_s_pow(2 * d + 1), Rat(1)}}), E::Zero);
                add(level, "tr(S^" + std::to_string(2 * d - 1) + " Ktop)",
                    dd::bpoly({{dd::word_s_pow_ktop(2 * d - 1), Rat(1)}}), E::Zero);
                add(level, "tr(Kbot^" + std::to_string(d - 1) + " CKbot)",
                    dd::bpoly({{dd::word_kbot_pow(d - 1, true), Rat(1)}}), E::Zero);
                add(level,
                    "(2d+1) tr(S^{2d} Ktop) + (3d+2) Q_{2d+2} - 3^{-d-1} rho_{d+1}(Kbot)",
                    dd::bpoly({{dd::word_s_pow_ktop(2 * d), Rat(2 * d + 1)},
                               {dd::word_s_pow(2 * d + 2), Rat(3 * d + 2)},
                               {dd::word_kbot_pow(d + 1), -Rat(1) / Rat(3 * p3)}}),
                    E::Const);
                break;
            case 0:  // level = 3d+3
                add(level, "Q_{2d+2} + 3^{-d-1} rho_{d+1}(Kbot)",
                    dd::bpoly({{dd::word_s_pow(2 * d + 2), Rat(1)},
                               {dd::word_kbot_pow(d + 1), Rat(1) / Rat(3 * p3)}}),
                    E::Const);
                add(level, "2 tr(S^{2d+1} Ktop) + 3 Q_{2d+3} + 3^{-d}/4 tr(Kbot^d CKbot)",
                    dd::bpoly({{dd::word_s_pow_ktop(2 * d + 1), Rat(2)},
                               {dd::word_s_pow(2 * d + 3), Rat(3)},
                               {dd::word_kbot_pow(d, true), Rat(1) / Rat(4 * p3)}}),
                    E::Zero);
                break;
        }
    }
    return out;
}

/// The squared norm of the shape operator, constant on austere submanifolds
/// of constant principal curvatures.
inline IdentitySpec austere_norm_spec() {
    return {"|S|^2 = tr(S^2)", detail::bpoly({{detail::word_s_pow(2), Rat(1)}}),
            IdentitySpec::Expect::Const, "austere", 0, 0};
}

}  // namespace tubemc
