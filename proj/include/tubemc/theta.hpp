#pragma once

#include <array>
#include <stdexcept>

#include "tubemc/rational.hpp"

namespace tubemc {

/// Multiplicity tables for the separated-A_0 run counts. Both satisfy
/// T(a+1,b) - T(a,b) = T(a,b-1); boundary values take precedence over the
/// recurrence.
///
/// theta:     0 for a<b or b<=0;  theta(a,1) = 1 for a>=1.
/// theta_bar: 0 for a<b or b<0;   theta_bar(a,0) = 1 for a>=0;
///            theta_bar(a,1) = a+1 for a>=1.
///
/// Values are tabulated once up the recurrence (read-only afterwards, safe
/// to share across threads); the closed forms stay available to the tests
/// as an independent check.
namespace detail {

constexpr int theta_table_extent = 64;

struct ThetaTables {
    std::array<std::array<long long, theta_table_extent + 1>, theta_table_extent + 1> plain{};
    std::array<std::array<long long, theta_table_extent + 1>, theta_table_extent + 1> bar{};

    ThetaTables() {
        for (int a = 0; a <= theta_table_extent; ++a) {
            for (int b = 0; b <= a; ++b) {
                if (b == 0) {
                    plain[size_t(a)][0] = 0;
                    bar[size_t(a)][0] = 1;
                } else if (b == 1) {
                    plain[size_t(a)][1] = a >= 1 ? 1 : 0;
                    bar[size_t(a)][1] = a >= 1 ? a + 1 : 0;
                } else {
                    plain[size_t(a)][size_t(b)] =
                        plain[size_t(a - 1)][size_t(b)] + plain[size_t(a - 1)][size_t(b - 1)];
                    bar[size_t(a)][size_t(b)] =
                        bar[size_t(a - 1)][size_t(b)] + bar[size_t(a - 1)][size_t(b - 1)];
                }
            }
        }
    }
};

inline const ThetaTables& theta_tables() {
    static const ThetaTables tables;
    return tables;
}

}  // namespace detail

inline long long theta(int a, int b) {
    if (b <= 0 || a < b) return 0;
    if (a > detail::theta_table_extent)
        throw std::overflow_error("theta: argument beyond the tabulated range");
    return detail::theta_tables().plain[size_t(a)][size_t(b)];
}

inline long long theta_bar(int a, int b) {
    if (b < 0 || a < b) return 0;
    if (b == 0) return 1;
    if (a > detail::theta_table_extent)
        throw std::overflow_error("theta_bar: argument beyond the tabulated range");
    return detail::theta_tables().bar[size_t(a)][size_t(b)];
}

/// Checks the alternating binomial sum identity
///   sum_j (-1)^j C(e,j) T(a+j, b) == (-1)^e T(a, b-e)
/// for both tables.
inline bool iterated_theta_identity_check(int a, int b, int e) {
    long long lhs = 0, lhs_bar = 0;
    for (int j = 0; j <= e; ++j) {
        long long w = binomial(e, j) * ((j % 2 == 0) ? 1 : -1);
        lhs += w * theta(a + j, b);
        lhs_bar += w * theta_bar(a + j, b);
    }
    long long sign = (e % 2 == 0) ? 1 : -1;
    return lhs == sign * theta(a, b - e) && lhs_bar == sign * theta_bar(a, b - e);
}

}  // namespace tubemc
