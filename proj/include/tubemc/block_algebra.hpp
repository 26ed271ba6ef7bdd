#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tubemc/trace_algebra.hpp"

namespace tubemc {

/// Letters of the block alphabet. The fixed total order below is the
/// tie-breaking order used by canonicalization.
enum class BlockLetter : uint8_t {
    It = 0,   // identity on the tangent block
    S,        // shape operator
    Ktop,     // tangent Jacobi block
    CKtop,    // covariant tangent Jacobi block
    In,       // identity on the normal block
    Kbot,     // restricted vertical Jacobi block
    CKbot,    // covariant vertical Jacobi block
    B,        // tangent-to-normal Jacobi block
    Bt,
    CB,       // covariant analogue of B
    CBt,
};

enum class Space : uint8_t { Tangent, Normal };

inline Space row_space(BlockLetter l) {
    switch (l) {
        case BlockLetter::It:
        case BlockLetter::S:
        case BlockLetter::Ktop:
        case BlockLetter::CKtop:
        case BlockLetter::B:
        case BlockLetter::CB:
            return Space::Tangent;
        default:
            return Space::Normal;
    }
}
inline Space col_space(BlockLetter l) {
    switch (l) {
        case BlockLetter::B:
        case BlockLetter::CB:
            return Space::Normal;
        case BlockLetter::Bt:
        case BlockLetter::CBt:
            return Space::Tangent;
        default:
            return row_space(l);
    }
}
inline BlockLetter transpose_letter(BlockLetter l) {
    switch (l) {
        case BlockLetter::B: return BlockLetter::Bt;
        case BlockLetter::Bt: return BlockLetter::B;
        case BlockLetter::CB: return BlockLetter::CBt;
        case BlockLetter::CBt: return BlockLetter::CB;
        default: return l;  // the square blocks are symmetric
    }
}
inline bool is_identity(BlockLetter l) { return l == BlockLetter::It || l == BlockLetter::In; }

inline const char* block_letter_name(BlockLetter l) {
    switch (l) {
        case BlockLetter::It: return "It";
        case BlockLetter::S: return "S";
        case BlockLetter::Ktop: return "Ktop";
        case BlockLetter::CKtop: return "CKtop";
        case BlockLetter::In: return "In";
        case BlockLetter::Kbot: return "Kbot";
        case BlockLetter::CKbot: return "CKbot";
        case BlockLetter::B: return "B";
        case BlockLetter::Bt: return "Bt";
        case BlockLetter::CB: return "CB";
        case BlockLetter::CBt: return "CBt";
    }
    return "?";
}

/// Cyclic, traceable word over the block alphabet. Canonical form is the
/// least sequence over all rotations of the word and of its
/// transpose-reversal (tr W = tr W^t), with identity letters absorbed.
class BlockWord {
public:
    static std::optional<BlockWord> make(std::vector<BlockLetter> letters) {
        if (letters.empty()) throw std::invalid_argument("BlockWord: empty word");
        const size_t n = letters.size();
        for (size_t j = 0; j < n; ++j) {
            if (col_space(letters[j]) != row_space(letters[(j + 1) % n])) return std::nullopt;
        }
        // Absorb identities; a pure-identity word collapses to one letter.
        std::vector<BlockLetter> w;
        for (BlockLetter l : letters)
            if (!is_identity(l)) w.push_back(l);
        if (w.empty()) w.push_back(letters.front());
        BlockWord b;
        b.letters_ = canonical(w);
        return b;
    }

    const std::vector<BlockLetter>& letters() const { return letters_; }

    /// True when every letter flips sign under nu -> -nu an odd number of
    /// times in total (S, CKtop, CKbot, CB, CBt are odd; K blocks, B, I even).
    bool odd_in_normal() const {
        int parity = 0;
        for (BlockLetter l : letters_) {
            switch (l) {
                case BlockLetter::S:
                case BlockLetter::CKtop:
                case BlockLetter::CKbot:
                case BlockLetter::CB:
                case BlockLetter::CBt:
                    parity ^= 1;
                    break;
                default:
                    break;
            }
        }
        return parity != 0;
    }

    friend bool operator==(const BlockWord& a, const BlockWord& b) {
        return a.letters_ == b.letters_;
    }
    friend bool operator<(const BlockWord& a, const BlockWord& b) {
        if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
        return a.letters_ < b.letters_;
    }

    std::string str() const {
        std::string s = "tr(";
        for (size_t j = 0; j < letters_.size(); ++j) {
            if (j) s += " ";
            s += block_letter_name(letters_[j]);
        }
        return s + ")";
    }

private:
    static std::vector<BlockLetter> canonical(const std::vector<BlockLetter>& w) {
        std::vector<BlockLetter> rev(w.rbegin(), w.rend());
        for (auto& l : rev) l = transpose_letter(l);
        std::vector<BlockLetter> best = w;
        auto scan = [&best](std::vector<BlockLetter> cur) {
            for (size_t j = 0; j < cur.size(); ++j) {
                if (cur < best) best = cur;
                std::rotate(cur.begin(), cur.begin() + 1, cur.end());
            }
        };
        scan(w);
        scan(rev);
        return best;
    }

    std::vector<BlockLetter> letters_;
};

/// Rational combination of block trace words, plus an opaque residual for
/// monomials containing letters A_s, s >= 4, which have no block structure.
class BlockTracePolynomial {
public:
    using Terms = std::map<BlockWord, Rat>;

    void add_term(const BlockWord& w, const Rat& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add_word(const std::vector<BlockLetter>& letters, const Rat& c) {
        if (c.is_zero()) return;
        auto w = BlockWord::make(letters);
        if (!w) throw std::invalid_argument("BlockTracePolynomial: untraceable block word");
        add_term(*w, c);
    }

    BlockTracePolynomial& operator+=(const BlockTracePolynomial& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        opaque_ += o.opaque_;
        return *this;
    }
    BlockTracePolynomial& operator-=(const BlockTracePolynomial& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        opaque_ -= o.opaque_;
        return *this;
    }
    BlockTracePolynomial& operator*=(const Rat& s) {
        if (s.is_zero()) {
            terms_.clear();
            opaque_ = TracePolynomial{};
            return *this;
        }
        for (auto& [w, c] : terms_) c *= s;
        opaque_ *= s;
        return *this;
    }
    friend bool operator==(const BlockTracePolynomial& a, const BlockTracePolynomial& b) {
        return a.terms_ == b.terms_ && a.opaque_ == b.opaque_;
    }

    const Terms& terms() const { return terms_; }
    TracePolynomial& opaque() { return opaque_; }
    const TracePolynomial& opaque() const { return opaque_; }
    bool empty() const { return terms_.empty() && opaque_.empty(); }

    Rat coefficient(const std::vector<BlockLetter>& letters) const {
        auto w = BlockWord::make(letters);
        if (!w) return Rat(0);
        auto it = terms_.find(*w);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    std::string dump() const {
        std::string s;
        for (const auto& [w, c] : terms_) s += c.str() + " * " + w.str() + "\n";
        for (const auto& [m, c] : opaque_.terms()) s += c.str() + " * " + m.str() + "\n";
        if (s.empty()) s = "0\n";
        return s;
    }

private:
    Terms terms_;
    TracePolynomial opaque_;
};

namespace detail {

/// One block entry of an expansion matrix: a sum of block words with
/// rational coefficients.
using BlockEntry = std::vector<std::pair<std::vector<BlockLetter>, Rat>>;

/// 2x2 block forms of A_0..A_3 over {tangent, normal}.
inline const BlockEntry& a_entry(int letter, Space row, Space col) {
    using L = BlockLetter;
    using Table = std::array<std::array<std::array<BlockEntry, 2>, 2>, 4>;
    static const Table table = [] {
        Table t{};
        auto at = [&t](int a, Space r, Space c) -> BlockEntry& {
            return t[size_t(a)][size_t(r)][size_t(c)];
        };
        at(0, Space::Normal, Space::Normal) = {{{L::In}, Rat(1)}};
        at(1, Space::Tangent, Space::Tangent) = {{{L::S}, Rat(1)}};
        at(2, Space::Tangent, Space::Tangent) = {{{L::S, L::S}, Rat(1)}, {{L::Ktop}, Rat(1)}};
        at(2, Space::Tangent, Space::Normal) = {{{L::B}, Rat(1)}};
        at(2, Space::Normal, Space::Tangent) = {{{L::Bt}, Rat(1, 3)}};
        at(2, Space::Normal, Space::Normal) = {{{L::Kbot}, Rat(1, 3)}};
        at(3, Space::Tangent, Space::Tangent) = {{{L::CKtop}, Rat(1, 2)},
                                                 {{L::S, L::S, L::S}, Rat(1)},
                                                 {{L::Ktop, L::S}, Rat(1)}};
        at(3, Space::Tangent, Space::Normal) = {{{L::CB}, Rat(1, 2)}};
        at(3, Space::Normal, Space::Tangent) = {{{L::CBt}, Rat(1, 4)}, {{L::Bt, L::S}, Rat(1, 3)}};
        at(3, Space::Normal, Space::Normal) = {{{L::CKbot}, Rat(1, 4)}};
        return t;
    }();
    return table[size_t(letter)][size_t(row)][size_t(col)];
}

}  // namespace detail

/// Expand every monomial whose letters are all A_0..A_3 into block trace
/// words by substituting the 2x2 block forms and distributing over all
/// block paths around the cycle. Monomials containing A_{s>=4} pass through
/// into the opaque residual unchanged.
inline BlockTracePolynomial block_expand(const TracePolynomial& poly) {
    BlockTracePolynomial out;
    for (const auto& [mono, coeff] : poly.terms()) {
        if (mono.max_letter() >= 4) {
            out.opaque().add_term(mono, coeff);
            continue;
        }
        const Word& w = mono.word();
        const size_t k = w.size();
        // Choose a space for each cyclic position, then distribute the
        // per-entry sums.
        for (uint32_t mask = 0; mask < (1u << k); ++mask) {
            auto space_at = [&](size_t j) {
                return (mask >> (j % k)) & 1 ? Space::Normal : Space::Tangent;
            };
            std::vector<const detail::BlockEntry*> entries(k);
            bool feasible = true;
            for (size_t j = 0; j < k && feasible; ++j) {
                entries[j] = &detail::a_entry(w[j], space_at(j), space_at(j + 1));
                feasible = !entries[j]->empty();
            }
            if (!feasible) continue;
            std::vector<BlockLetter> acc;
            auto rec = [&](auto&& self, size_t j, Rat c) -> void {
                if (j == k) {
                    out.add_word(acc, coeff * c);
                    return;
                }
                for (const auto& [letters, ec] : *entries[j]) {
                    size_t mark = acc.size();
                    acc.insert(acc.end(), letters.begin(), letters.end());
                    self(self, j + 1, c * ec);
                    acc.resize(mark);
                }
            };
            rec(rec, 0, Rat(1));
        }
    }
    return out;
}

}  // namespace tubemc
