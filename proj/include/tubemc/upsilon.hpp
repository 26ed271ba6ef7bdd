#pragma once

#include <map>
#include <vector>

#include "tubemc/block_algebra.hpp"
#include "tubemc/compositions.hpp"
#include "tubemc/theta.hpp"
#include "tubemc/trace_algebra.hpp"

namespace tubemc {
namespace detail {

/// Tilde-blocks: words that start and end with a heavy letter (index >= 2)
/// and alternate heavy letters with nonempty runs of A_1 between them.
/// Heavy-heavy adjacency never occurs inside a block; it is a block cut.
inline const std::vector<Word>& tilde_blocks(int letters, int degree) {
    static std::map<std::pair<int, int>, std::vector<Word>> memo;
    auto key = std::make_pair(letters, degree);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Word> out;
    if (letters >= 1 && degree >= 2) {
        Word acc;
        // acc holds a partial block ending with a heavy letter.
        auto rec = [&](auto&& self, int letters_left, int degree_left) -> void {
            if (letters_left == 0) {
                if (degree_left == 0) out.push_back(acc);
                return;
            }
            // continue with a run of 1s then another heavy letter
            for (int run = 1; run + 1 <= letters_left; ++run) {
                for (int h = 2; h + run <= degree_left; ++h) {
                    acc.insert(acc.end(), size_t(run), 1);
                    acc.push_back(h);
                    self(self, letters_left - run - 1, degree_left - run - h);
                    acc.resize(acc.size() - size_t(run) - 1);
                }
            }
        };
        for (int h = 2; h <= degree; ++h) {
            acc.assign(1, h);
            rec(rec, letters - 1, degree - h);
        }
    }
    return memo.emplace(key, std::move(out)).first->second;
}

/// Enumerate ordered sequences of c tilde-blocks with the given total letter
/// count and degree, invoking fn(blocks).
template <class Fn>
void for_each_block_sequence(int c, int letters, int degree, Fn&& fn) {
    std::vector<const Word*> seq(static_cast<size_t>(c), nullptr);
    auto rec = [&](auto&& self, int pos, int letters_left, int degree_left) -> void {
        if (pos == c) {
            if (letters_left == 0 && degree_left == 0) fn(seq);
            return;
        }
        int reserve_letters = c - pos - 1;          // at least one letter per later block
        int reserve_degree = 2 * (c - pos - 1);     // at least degree two per later block
        for (int l = 1; l <= letters_left - reserve_letters; ++l) {
            for (int d = 2; d <= degree_left - reserve_degree; ++d) {
                for (const Word& blk : tilde_blocks(l, d)) {
                    seq[size_t(pos)] = &blk;
                    self(self, pos + 1, letters_left - l, degree_left - d);
                }
            }
        }
    };
    rec(rec, 0, letters, degree);
}

/// Emit every subset of {0..slots-1} of the given size as a boolean mask.
template <class Fn>
void for_each_gap_subset(int slots, int picks, Fn&& fn) {
    if (picks < 0 || picks > slots) return;
    std::vector<char> mask(size_t(slots), 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (slots - pos < left) return;
        if (pos == slots) {
            if (left == 0) fn(mask);
            return;
        }
        mask[size_t(pos)] = 0;
        self(self, pos + 1, left);
        if (left > 0) {
            mask[size_t(pos)] = 1;
            self(self, pos + 1, left - 1);
            mask[size_t(pos)] = 0;
        }
    };
    rec(rec, 0, picks);
}

inline bool omega_args_admissible(int i, int r, int c, int a, int b) {
    if (i < 2 || r < 2 || c < 1 || c > cap_d_bound(i, r)) return false;
    if (b < 1 || b > c || a < 1) return false;
    auto adm = admissible_separations(i, r, c);
    return std::find(adm.begin(), adm.end(), a) != adm.end();
}

}  // namespace detail

/// Sum of all degree-r trace-word arrangements with i total letters, a copies
/// of A_0 reduced to b separated singletons among c tilde-blocks, whose
/// linear seam is not adjacent to an A_0 run: either the seam falls on a
/// block-block cut, or strictly inside a block (splitting it head/tail).
/// One term per distinct arrangement, coefficient +1; inadmissible arguments
/// yield the empty polynomial.
inline TracePolynomial omega(int i, int r, int c, int a, int b) {
    TracePolynomial out;
    if (!detail::omega_args_admissible(i, r, c, a, b)) return out;
    const int letters = i - a;
    Word line;
    detail::for_each_block_sequence(c, letters, r, [&](const std::vector<const Word*>& seq) {
        // seam on the cut between the last and first block: b zeros among the
        // c-1 interior gaps
        detail::for_each_gap_subset(c - 1, b, [&](const std::vector<char>& gaps) {
            line.clear();
            for (int j = 0; j < c; ++j) {
                line.insert(line.end(), seq[size_t(j)]->begin(), seq[size_t(j)]->end());
                if (j < c - 1 && gaps[size_t(j)]) line.push_back(0);
            }
            out.add_word(line, Rat(1));
        });
        // seam strictly inside the first block: all c gaps are interior
        const Word& split = *seq[0];
        for (size_t p = 1; p < split.size(); ++p) {
            detail::for_each_gap_subset(c, b, [&](const std::vector<char>& gaps) {
                line.assign(split.begin() + long(p), split.end());
                if (gaps[0]) line.push_back(0);
                for (int j = 1; j < c; ++j) {
                    line.insert(line.end(), seq[size_t(j)]->begin(), seq[size_t(j)]->end());
                    if (gaps[size_t(j)]) line.push_back(0);
                }
                line.insert(line.end(), split.begin(), split.begin() + long(p));
                out.add_word(line, Rat(1));
            });
        }
    });
    return out;
}

/// As omega, but for arrangements whose seam lies in an A_0 run: the run at
/// the seam is represented by a single trailing A_0 (the remaining b-1
/// singletons occupy interior gaps).
inline TracePolynomial omega_bar(int i, int r, int c, int a, int b) {
    TracePolynomial out;
    if (!detail::omega_args_admissible(i, r, c, a, b)) return out;
    const int letters = i - a;
    Word line;
    detail::for_each_block_sequence(c, letters, r, [&](const std::vector<const Word*>& seq) {
        detail::for_each_gap_subset(c - 1, b - 1, [&](const std::vector<char>& gaps) {
            line.clear();
            for (int j = 0; j < c; ++j) {
                line.insert(line.end(), seq[size_t(j)]->begin(), seq[size_t(j)]->end());
                if (j < c - 1 && gaps[size_t(j)]) line.push_back(0);
            }
            line.push_back(0);
            out.add_word(line, Rat(1));
        });
    });
    return out;
}

/// Coefficient of t^r in tr((t Shat(t))^i) by the refined combinatorial
/// formula: the zero-A_0 tuples plus theta-weighted arrangement sums.
inline TracePolynomial upsilon_refined(int i, int r) {
    if (i < 1 || r < 0) throw std::invalid_argument("upsilon_refined: need i>=1, r>=0");
    TracePolynomial out;
    if (r == 0) {
        out.add_word(Word{0}, Rat(i % 2 == 0 ? 1 : -1));
        return out;
    }
    if (r == 1) {
        if (i == 1) out.add_word(Word{1}, Rat(1));
        return out;
    }
    if (i == 1) {
        out.add_word(Word{r}, Rat(1));
        return out;
    }
    // tuples with no A_0 at all
    if (i <= r) {
        Word tuple(size_t(i), 0);
        auto rec = [&](auto&& self, int pos, int degree_left) -> void {
            int rest = i - pos - 1;
            if (pos == i) {
                if (degree_left == 0) out.add_word(tuple, Rat(1));
                return;
            }
            for (int v = 1; v <= degree_left - rest; ++v) {
                tuple[size_t(pos)] = v;
                self(self, pos + 1, degree_left - v);
            }
        };
        rec(rec, 0, r);
    }
    for (int c = 1; c <= cap_d_bound(i, r); ++c) {
        for (int a : admissible_separations(i, r, c)) {
            Rat sign(a % 2 == 0 ? 1 : -1);
            for (int b = 1; b <= c; ++b) {
                long long t = theta(a, b);
                long long tb = theta_bar(a, b);
                if (t != 0) out += omega(i, r, c, a, b) * (sign * Rat(t));
                if (tb != 0) out += omega_bar(i, r, c, a, b) * (sign * Rat(tb));
            }
        }
    }
    return out;
}

enum class UpsilonSource { Refined, Brute };

inline TracePolynomial upsilon(int i, int r, UpsilonSource src = UpsilonSource::Refined) {
    if (src == UpsilonSource::Brute) return series_trace_power(i, r)[size_t(r)];
    return upsilon_refined(i, r);
}

/// phi(r,e) = sum_j C(e,j) Upsilon_{r+j, r}
inline TracePolynomial phi(int r, int e, UpsilonSource src = UpsilonSource::Refined) {
    if (r < 2 || e < 0) throw std::invalid_argument("phi: need r>=2, e>=0");
    TracePolynomial out;
    for (int j = 0; j <= e; ++j) out += upsilon(r + j, r, src) * Rat(binomial(e, j));
    return out;
}

/// psi(r,e) = sum_j C(e,j) Upsilon_{r-1+j, r}
inline TracePolynomial psi(int r, int e, UpsilonSource src = UpsilonSource::Refined) {
    if (r < 2 || e < 0) throw std::invalid_argument("psi: need r>=2, e>=0");
    TracePolynomial out;
    for (int j = 0; j <= e; ++j) out += upsilon(r - 1 + j, r, src) * Rat(binomial(e, j));
    return out;
}

/// The eight closed forms of the binomially combined expansion coefficients,
/// as block trace polynomials.
struct PhiPsiClosedForms {
    BlockTracePolynomial phi_even_d;   // Phi_{2d}(d)
    BlockTracePolynomial phi_odd_d;    // Phi_{2d+1}(d)
    BlockTracePolynomial phi_even_d1;  // Phi_{2d}(d+1)
    BlockTracePolynomial phi_odd_d1;   // Phi_{2d+1}(d+1)
    BlockTracePolynomial psi_even_d;   // Psi_{2d}(d)
    BlockTracePolynomial psi_odd_d;    // Psi_{2d+1}(d)
    BlockTracePolynomial psi_even_d1;  // Psi_{2d}(d+1)
    BlockTracePolynomial psi_odd_d1;   // Psi_{2d+1}(d+1)
};

inline PhiPsiClosedForms closed_form_phi_psi(int d) {
    if (d < 1) throw std::invalid_argument("closed_form_phi_psi: need d>=1");
    using L = BlockLetter;
    auto s_pow = [](int k, L tail = L::S, bool with_tail = false) {
        std::vector<L> w(size_t(k), L::S);
        if (with_tail) w.push_back(tail);
        return w;
    };
    auto kbot_pow = [](int k, bool ck_tail) {
        std::vector<L> w(size_t(k), L::Kbot);
        if (ck_tail) w.push_back(L::CKbot);
        return w;
    };
    long long p3 = 1;
    for (int j = 0; j < d; ++j) p3 *= 3;
    const Rat inv3d(1, p3);
    const Rat ck_coef = Rat(3LL * d) / Rat(4 * p3);  // d * 3^{-d+1} / 4

    PhiPsiClosedForms f;
    f.phi_even_d.add_word(s_pow(2 * d), Rat(1));
    f.phi_even_d.add_word(kbot_pow(d, false), inv3d);

    f.phi_odd_d.add_word(s_pow(2 * d + 1), Rat(1));
    f.phi_odd_d.add_word(kbot_pow(d - 1, true), -ck_coef);

    f.phi_even_d1.add_word(s_pow(2 * d), Rat(1));
    f.phi_odd_d1.add_word(s_pow(2 * d + 1), Rat(1));

    f.psi_even_d.add_word(s_pow(2 * d - 2, L::Ktop, true), Rat(2 * d - 1));
    f.psi_even_d.add_word(s_pow(2 * d), Rat(3 * d - 1));
    f.psi_even_d.add_word(kbot_pow(d, false), -inv3d);

    f.psi_odd_d.add_word(s_pow(2 * d - 1, L::Ktop, true), Rat(2 * d));
    f.psi_odd_d.add_word(s_pow(2 * d + 1), Rat(3 * d));
    f.psi_odd_d.add_word(kbot_pow(d - 1, true), ck_coef);

    f.psi_even_d1.add_word(s_pow(2 * d - 2, L::Ktop, true), Rat(2 * d - 1));
    f.psi_even_d1.add_word(s_pow(2 * d), Rat(3 * d));

    f.psi_odd_d1.add_word(s_pow(2 * d - 1, L::Ktop, true), Rat(2 * d));
    f.psi_odd_d1.add_word(s_pow(2 * d + 1), Rat(3 * d + 1));
    return f;
}

}  // namespace tubemc
