#include "doctest.h"

#include <random>

#include "tubemc/evaluate.hpp"
#include "tubemc/submanifold.hpp"
#include "tubemc/upsilon.hpp"

using namespace tubemc;

namespace {

SecondOrderData random_second_order(std::mt19937& rng, int m, int p) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    auto rand_mat = [&](int r, int c) {
        Mat x(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) x(i, j) = coef(rng);
        return x;
    };
    auto rand_sym = [&](int r) {
        Mat x = rand_mat(r, r);
        return Mat(0.5 * (x + x.transpose()));
    };
    SecondOrderData d;
    d.m = m;
    d.p = p;
    d.S = rand_sym(m);
    d.Ktop = rand_sym(m);
    d.CKtop = rand_sym(m);
    d.Kbot = rand_sym(p);
    d.CKbot = rand_sym(p);
    d.B = rand_mat(m, p);
    d.CB = rand_mat(m, p);
    return d;
}

}  // namespace

TEST_CASE("evaluate trace polynomials on concrete matrices") {
    AAssignment a;
    a[0] = Mat::Zero(2, 2);
    a[0](1, 1) = 1.0;  // diag(0_1, I_1)
    TracePolynomial p;
    p.add_word({0}, Rat(-1));
    CHECK(evaluate(p, a) == doctest::Approx(-1.0));

    CHECK(evaluate(TracePolynomial{}, a) == 0.0);

    AAssignment b;
    b[1] = Mat::Zero(2, 2);
    b[1](0, 0) = 2.0;
    TracePolynomial q;
    q.add_word({1, 1}, Rat(1));
    CHECK(evaluate(q, b) == doctest::Approx(4.0));

    CHECK_THROWS_AS(evaluate(q, a), EvalError);  // A_1 missing
    AAssignment bad = b;
    bad[1] = Mat::Zero(2, 3);
    CHECK_THROWS_AS(evaluate(q, bad), EvalError);
}

TEST_CASE("block evaluation agrees with the A-matrix evaluation") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 1 + int(rng() % 3), p = 1 + int(rng() % 2);
        SecondOrderData d = random_second_order(rng, m, p);
        auto a_mats = assemble_A(d);
        AAssignment assign;
        for (int j = 0; j < 4; ++j) assign[j] = a_mats[size_t(j)];
        BlockAssignment blocks = block_assignment(d);

        TracePolynomial poly;
        poly.add_word({2, 3}, Rat(1));
        poly.add_word({0, 2, 2}, Rat(-2));
        poly.add_word({1, 1, 3}, Rat(1, 3));
        poly.add_word({3}, Rat(2));
        double via_blocks = evaluate(block_expand(poly), blocks);
        double via_mats = evaluate(poly, assign);
        CHECK(via_blocks == doctest::Approx(via_mats).epsilon(1e-10));
    }
}

TEST_CASE("opaque residual needs an A-assignment") {
    TracePolynomial poly;
    poly.add_word({4, 0}, Rat(1));
    auto blocked = block_expand(poly);
    BlockAssignment blocks = block_assignment(SecondOrderData{
        1, 1, Mat::Zero(1, 1), Mat::Zero(1, 1), Mat::Zero(1, 1), Mat::Zero(1, 1), Mat::Zero(1, 1),
        Mat::Zero(1, 1), Mat::Zero(1, 1)});
    CHECK_THROWS_AS(evaluate(blocked, blocks), EvalError);
    AAssignment extra;
    extra[0] = Mat::Identity(2, 2);
    extra[4] = 3.0 * Mat::Identity(2, 2);
    CHECK(evaluate(blocked, blocks, &extra) == doctest::Approx(6.0));
}

TEST_CASE("exact evaluation matches the double path") {
    std::map<int, DenseMat<Rat>> exact;
    AAssignment dbl;
    DenseMat<Rat> a0(2, 2), a2(2, 2);
    a0(1, 1) = Rat(1);
    a2(0, 0) = Rat(1, 2);
    a2(0, 1) = Rat(1, 3);
    a2(1, 0) = Rat(1, 3);
    a2(1, 1) = Rat(2);
    exact[0] = a0;
    exact[2] = a2;
    dbl[0] = Mat::Zero(2, 2);
    dbl[0](1, 1) = 1.0;
    dbl[2] = Mat(2, 2);
    dbl[2] << 0.5, 1.0 / 3.0, 1.0 / 3.0, 2.0;
    TracePolynomial p;
    p.add_word({2, 0, 2, 0}, Rat(5, 7));
    Rat ev = evaluate_exact(p, exact);
    CHECK(ev == Rat(5, 7) * Rat(4));  // (a2(1,1))^2 * 5/7
    CHECK(evaluate(p, dbl) == doctest::Approx(ev.to_double()));
}
