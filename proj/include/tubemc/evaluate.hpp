#pragma once

#include <map>

#include "tubemc/block_algebra.hpp"
#include "tubemc/linalg.hpp"
#include "tubemc/trace_algebra.hpp"

namespace tubemc {

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Concrete matrices for the expansion letters A_r, all n x n.
using AAssignment = std::map<int, Mat>;

inline double evaluate(const TracePolynomial& poly, const AAssignment& a) {
    double total = 0.0;
    for (const auto& [mono, coeff] : poly.terms()) {
        Mat prod;
        bool first = true;
        for (int letter : mono.word()) {
            auto it = a.find(letter);
            if (it == a.end())
                throw EvalError("no matrix assigned to A_" + std::to_string(letter) + " in " +
                                mono.str());
            if (it->second.rows() != it->second.cols())
                throw EvalError("non-square matrix for A_" + std::to_string(letter));
            if (first) {
                prod = it->second;
                first = false;
            } else {
                if (prod.cols() != it->second.rows())
                    throw EvalError("dimension mismatch in " + mono.str());
                prod = prod * it->second;
            }
        }
        total += coeff.to_double() * prod.trace();
    }
    return total;
}

/// Exact-arithmetic variant over an arbitrary scalar (rationals in tests).
template <class Scalar>
Scalar evaluate_exact(const TracePolynomial& poly, const std::map<int, DenseMat<Scalar>>& a) {
    Scalar total(0);
    for (const auto& [mono, coeff] : poly.terms()) {
        const DenseMat<Scalar>* first = nullptr;
        DenseMat<Scalar> prod;
        for (int letter : mono.word()) {
            auto it = a.find(letter);
            if (it == a.end())
                throw EvalError("no matrix assigned to A_" + std::to_string(letter) + " in " +
                                mono.str());
            if (!first) {
                first = &it->second;
                prod = it->second;
            } else {
                prod = prod * it->second;
            }
        }
        total = total + Scalar(coeff.num()) / Scalar(coeff.den()) * prod.trace();
    }
    return total;
}

/// Concrete second-order blocks at one (point, unit normal) pair.
/// S, Ktop, CKtop are m x m; Kbot, CKbot are p x p; B, CB are m x p,
/// where p = n - m is the restricted normal dimension.
struct BlockAssignment {
    Mat S, Ktop, CKtop, Kbot, CKbot, B, CB;

    int m() const { return int(S.rows()); }
    int p() const { return int(Kbot.rows()); }
};

inline double evaluate(const BlockTracePolynomial& poly, const BlockAssignment& blocks,
                       const AAssignment* opaque = nullptr) {
    const int m = blocks.m(), p = blocks.p();
    auto letter_matrix = [&](BlockLetter l) -> Mat {
        switch (l) {
            case BlockLetter::It: return Mat::Identity(m, m);
            case BlockLetter::In: return Mat::Identity(p, p);
            case BlockLetter::S: return blocks.S;
            case BlockLetter::Ktop: return blocks.Ktop;
            case BlockLetter::CKtop: return blocks.CKtop;
            case BlockLetter::Kbot: return blocks.Kbot;
            case BlockLetter::CKbot: return blocks.CKbot;
            case BlockLetter::B: return blocks.B;
            case BlockLetter::Bt: return blocks.B.transpose();
            case BlockLetter::CB: return blocks.CB;
            case BlockLetter::CBt: return blocks.CB.transpose();
        }
        throw EvalError("unknown block letter");
    };
    auto space_dim = [&](Space s) { return s == Space::Tangent ? m : p; };

    double total = 0.0;
    for (const auto& [word, coeff] : poly.terms()) {
        Mat prod;
        bool first = true;
        for (BlockLetter l : word.letters()) {
            Mat ml = letter_matrix(l);
            if (ml.rows() != space_dim(row_space(l)) || ml.cols() != space_dim(col_space(l)))
                throw EvalError("block dimension mismatch for " +
                                std::string(block_letter_name(l)) + " in " + word.str());
            if (first) {
                prod = ml;
                first = false;
            } else {
                prod = prod * ml;
            }
        }
        total += coeff.to_double() * prod.trace();
    }
    if (!poly.opaque().empty()) {
        if (!opaque)
            throw EvalError("polynomial has opaque letters but no A-assignment was supplied");
        total += evaluate(poly.opaque(), *opaque);
    }
    return total;
}

}  // namespace tubemc
