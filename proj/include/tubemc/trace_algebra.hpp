#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tubemc/rational.hpp"

namespace tubemc {

/// A word in the expansion letters A_0, A_1, A_2, ...; entry r means A_r.
using Word = std::vector<int>;

/// Cyclic trace word tr(A_{w0} A_{w1} ...) in canonical form:
/// no two cyclically adjacent 0-letters, and the stored rotation is the
/// lexicographically least one. Words with a cyclically adjacent {0,1}
/// pair are the zero monomial and are never stored.
class TraceMonomial {
public:
    /// Reduce a raw word. Returns nullopt for the zero monomial.
    static std::optional<TraceMonomial> reduced(const Word& raw) {
        if (raw.empty()) throw std::invalid_argument("reduce_word: empty word");
        const size_t n = raw.size();
        for (size_t j = 0; j < n; ++j) {
            int x = raw[j], y = raw[(j + 1) % n];
            if ((x == 0 && y == 1) || (x == 1 && y == 0)) return std::nullopt;
        }
        // Collapse cyclic runs of 0s to a single 0.
        Word w;
        bool all_zero = std::all_of(raw.begin(), raw.end(), [](int v) { return v == 0; });
        if (all_zero) {
            w = {0};
        } else {
            size_t start = 0;
            while (raw[start] == 0) ++start;  // begin at a nonzero letter
            bool prev_zero = false;
            for (size_t j = 0; j < n; ++j) {
                int v = raw[(start + j) % n];
                if (v == 0 && prev_zero) continue;
                w.push_back(v);
                prev_zero = (v == 0);
            }
        }
        TraceMonomial m;
        m.word_ = least_rotation(w);
        return m;
    }

    const Word& word() const { return word_; }
    int length() const { return int(word_.size()); }
    int degree() const {
        int d = 0;
        for (int v : word_) d += v;
        return d;
    }
    int max_letter() const { return *std::max_element(word_.begin(), word_.end()); }

    friend bool operator==(const TraceMonomial& a, const TraceMonomial& b) {
        return a.word_ == b.word_;
    }
    friend bool operator<(const TraceMonomial& a, const TraceMonomial& b) {
        if (a.word_.size() != b.word_.size()) return a.word_.size() < b.word_.size();
        return a.word_ < b.word_;
    }

    std::string str() const {
        std::string s = "tr(";
        for (size_t j = 0; j < word_.size(); ++j) {
            if (j) s += " ";
            s += "A_" + std::to_string(word_[j]);
        }
        return s + ")";
    }

private:
    static Word least_rotation(const Word& w) {
        Word best = w;
        Word cur = w;
        for (size_t j = 1; j < w.size(); ++j) {
            std::rotate(cur.begin(), cur.begin() + 1, cur.end());
            if (cur < best) best = cur;
        }
        return best;
    }

    Word word_;
};

inline std::optional<TraceMonomial> reduce_word(const Word& raw) {
    return TraceMonomial::reduced(raw);
}

/// Finite rational linear combination of canonical trace monomials.
class TracePolynomial {
public:
    using Terms = std::map<TraceMonomial, Rat>;

    TracePolynomial() = default;

    void add_term(const TraceMonomial& m, const Rat& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Reduce a raw word and accumulate; zero monomials vanish.
    void add_word(const Word& raw, const Rat& c) {
        if (c.is_zero()) return;
        if (auto m = reduce_word(raw)) add_term(*m, c);
    }

    TracePolynomial& operator+=(const TracePolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    TracePolynomial& operator-=(const TracePolynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    TracePolynomial& operator*=(const Rat& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend TracePolynomial operator+(TracePolynomial a, const TracePolynomial& b) { return a += b; }
    friend TracePolynomial operator-(TracePolynomial a, const TracePolynomial& b) { return a -= b; }
    friend TracePolynomial operator*(TracePolynomial a, const Rat& s) { return a *= s; }

    friend bool operator==(const TracePolynomial& a, const TracePolynomial& b) {
        return a.terms_ == b.terms_;
    }

    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    Rat coefficient(const Word& raw) const {
        auto m = reduce_word(raw);
        if (!m) return Rat(0);
        auto it = terms_.find(*m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    int max_letter() const {
        int r = -1;
        for (const auto& [m, c] : terms_) r = std::max(r, m.max_letter());
        return r;
    }

    /// Debug dump: one term per line, "coeff * tr(A_i A_j ...)".
    std::string dump() const {
        if (terms_.empty()) return "0\n";
        std::string s;
        for (const auto& [m, c] : terms_) s += c.str() + " * " + m.str() + "\n";
        return s;
    }

private:
    Terms terms_;
};

/// Degree-r coefficients of tr((-A_0 + sum_{s>=1} A_s t^s)^i) for r = 0..r_max,
/// by direct enumeration of all i-tuples of letter indices with the given
/// total degree. Each tuple contributes (-1)^{#zeros} times its reduced word.
inline std::vector<TracePolynomial> series_trace_power(int i, int r_max) {
    if (i < 1) throw std::invalid_argument("series_trace_power: i must be >= 1");
    if (r_max < 0) throw std::invalid_argument("series_trace_power: r_max must be >= 0");
    std::vector<TracePolynomial> out(size_t(r_max) + 1);
    Word tuple(size_t(i), 0);
    auto rec = [&](auto&& self, int pos, int budget, int zeros) -> void {
        if (pos == i) {
            out[size_t(r_max - budget)].add_word(tuple, Rat((zeros % 2 == 0) ? 1 : -1));
            return;
        }
        for (int v = 0; v <= budget; ++v) {
            tuple[size_t(pos)] = v;
            self(self, pos + 1, budget - v, zeros + (v == 0 ? 1 : 0));
        }
    };
    rec(rec, 0, r_max, 0);
    return out;
}

}  // namespace tubemc
