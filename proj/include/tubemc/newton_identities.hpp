#pragma once

#include <stdexcept>
#include <vector>

namespace tubemc {

/// Power sums rho_1..rho_n  ->  elementary symmetric sigma_1..sigma_n,
/// via k*sigma_k = sum_{j=1..k} (-1)^{j-1} sigma_{k-j} rho_j.
template <class Scalar>
std::vector<Scalar> power_sums_to_elementary(const std::vector<Scalar>& rho) {
    if (rho.empty()) throw std::invalid_argument("newton_convert: need n >= 1");
    const int n = int(rho.size());
    std::vector<Scalar> sigma(size_t(n) + 1, Scalar(0));
    sigma[0] = Scalar(1);
    for (int k = 1; k <= n; ++k) {
        Scalar acc(0);
        for (int j = 1; j <= k; ++j) {
            Scalar t = sigma[size_t(k - j)] * rho[size_t(j - 1)];
            acc = (j % 2 == 1) ? acc + t : acc - t;
        }
        sigma[size_t(k)] = acc / Scalar(k);
    }
    return {sigma.begin() + 1, sigma.end()};
}

/// Inverse conversion: elementary symmetric -> power sums,
/// rho_k = (-1)^{k-1} k sigma_k - sum_{j=1..k-1} (-1)^{k+j} sigma_{k-j} rho_j.
template <class Scalar>
std::vector<Scalar> elementary_to_power_sums(const std::vector<Scalar>& sigma) {
    if (sigma.empty()) throw std::invalid_argument("newton_convert: need n >= 1");
    const int n = int(sigma.size());
    std::vector<Scalar> rho(size_t(n), Scalar(0));
    for (int k = 1; k <= n; ++k) {
        Scalar acc = sigma[size_t(k - 1)] * Scalar(k);
        if (k % 2 == 0) acc = Scalar(0) - acc;
        for (int j = 1; j < k; ++j) {
            Scalar t = sigma[size_t(k - j - 1)] * rho[size_t(j - 1)];
            acc = ((k + j) % 2 == 0) ? acc - t : acc + t;
        }
        rho[size_t(k - 1)] = acc;
    }
    return rho;
}

/// A list of real values together with exact symmetric-function access;
/// power sums and elementary symmetric functions of the same list satisfy
/// the Newton identities by construction.
template <class Scalar>
struct SymmetricFunctionValues {
    std::vector<Scalar> values;

    Scalar power_sum(int k) const {
        Scalar acc(0);
        for (const Scalar& v : values) acc = acc + pow_k(v, k);
        return acc;
    }
    Scalar elementary(int k) const {
        const int n = int(values.size());
        if (k < 0 || k > n) return Scalar(0);
        if (k == 0) return Scalar(1);
        // dynamic program over prefixes
        std::vector<Scalar> e(size_t(k) + 1, Scalar(0));
        e[0] = Scalar(1);
        for (int j = 0; j < n; ++j)
            for (int q = std::min(k, j + 1); q >= 1; --q)
                e[size_t(q)] = e[size_t(q)] + values[size_t(j)] * e[size_t(q - 1)];
        return e[size_t(k)];
    }

private:
    static Scalar pow_k(Scalar v, int k) {
        Scalar r(1);
        for (int j = 0; j < k; ++j) r = r * v;
        return r;
    }
};

}  // namespace tubemc
