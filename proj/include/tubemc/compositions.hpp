#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace tubemc {

/// A weighted composition sigma = (sigma_0..sigma_r) with sum sigma_s = i
/// and sum s*sigma_s = r: the multiset of letter indices of an i-letter,
/// degree-r tuple.
struct Composition {
    std::vector<int> sigma;
    int i = 0;
    int r = 0;
};

inline std::vector<Composition> enumerate_compositions(int i, int r) {
    if (i < 1 || r < 0) throw std::invalid_argument("enumerate_compositions: need i>=1, r>=0");
    std::vector<Composition> out;
    std::vector<int> sigma(size_t(r) + 1, 0);
    // Choose sigma_r..sigma_1, then sigma_0 absorbs the remaining count.
    auto rec = [&](auto&& self, int s, int count_left, int degree_left) -> void {
        if (s == 0) {
            if (degree_left == 0) {
                sigma[0] = count_left;
                out.push_back({sigma, i, r});
            }
            return;
        }
        for (int v = 0; v <= count_left && v * s <= degree_left; ++v) {
            sigma[size_t(s)] = v;
            self(self, s - 1, count_left - v, degree_left - v * s);
        }
        sigma[size_t(s)] = 0;
    };
    rec(rec, r, i, r);
    return out;
}

inline int d_bound(int i, int r) { return std::min(i / 2, r / 2); }
inline int cap_d_bound(int i, int r) { return std::min(i - 1, r / 2); }

/// The set of separated-A_0 counts a for which degree-r words with i letters
/// and c tilde-blocks exist.
inline std::vector<int> admissible_separations(int i, int r, int c) {
    if (i < 2 || r < 2) throw std::invalid_argument("admissible_separations: need i>=2, r>=2");
    if (c < 1 || c > cap_d_bound(i, r))
        throw std::invalid_argument("admissible_separations: c out of range");
    if (i == 2) return {1};
    if (r <= 2 * c + 2) return {i - c};
    std::vector<int> out;
    for (int a = std::max(1, i - r + c + 1); a <= i - c - 2; ++a) out.push_back(a);
    out.push_back(i - c);
    return out;
}

}  // namespace tubemc
