#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tubemc {

/// Exact rational number over a signed integer type.
///
/// Invariants: den > 0, gcd(|num|, den) == 1. All arithmetic is checked;
/// overflow throws instead of wrapping, so symbolic identities can never
/// silently degrade.
template <class Int>
class RationalT {
public:
    RationalT() = default;
    RationalT(Int n) : num_(n), den_(1) {}
    RationalT(Int n, Int d) : num_(n), den_(d) { normalize(); }

    Int num() const { return num_; }
    Int den() const { return den_; }

    bool is_zero() const { return num_ == 0; }

    RationalT operator-() const {
        RationalT r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    RationalT& operator+=(const RationalT& o) {
        Int g = gcd_int(den_, o.den_);
        Int lhs_scale = o.den_ / g;
        Int rhs_scale = den_ / g;
        num_ = add(mul(num_, lhs_scale), mul(o.num_, rhs_scale));
        den_ = mul(den_, lhs_scale);
        normalize();
        return *this;
    }
    RationalT& operator-=(const RationalT& o) { return *this += -o; }
    RationalT& operator*=(const RationalT& o) {
        // Cross-reduce before multiplying to keep intermediates small.
        Int g1 = gcd_int(abs_int(num_), o.den_);
        Int g2 = gcd_int(abs_int(o.num_), den_);
        num_ = mul(num_ / g1, o.num_ / g2);
        den_ = mul(den_ / g2, o.den_ / g1);
        return *this;
    }
    RationalT& operator/=(const RationalT& o) {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        RationalT inv;
        inv.num_ = o.den_;
        inv.den_ = o.num_;
        if (inv.den_ < 0) {
            inv.num_ = -inv.num_;
            inv.den_ = -inv.den_;
        }
        return *this *= inv;
    }

    friend RationalT operator+(RationalT a, const RationalT& b) { return a += b; }
    friend RationalT operator-(RationalT a, const RationalT& b) { return a -= b; }
    friend RationalT operator*(RationalT a, const RationalT& b) { return a *= b; }
    friend RationalT operator/(RationalT a, const RationalT& b) { return a /= b; }

    friend bool operator==(const RationalT& a, const RationalT& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalT& a, const RationalT& b) { return !(a == b); }
    friend bool operator<(const RationalT& a, const RationalT& b) {
        return wide(a.num_) * wide(b.den_) < wide(b.num_) * wide(a.den_);
    }

    double to_double() const { return double(num_) / double(den_); }

    /// "p" or "p/q".
    std::string str() const {
        std::string s = int_to_string(num_);
        if (den_ != 1) s += "/" + int_to_string(den_);
        return s;
    }

private:
#ifdef __SIZEOF_INT128__
    using Wide = __int128;
#else
    using Wide = long long;
#endif
    static Wide wide(Int v) { return Wide(v); }
    static Int abs_int(Int v) { return v < 0 ? -v : v; }
    static Int gcd_int(Int a, Int b) {
        a = abs_int(a);
        b = abs_int(b);
        while (b != 0) {
            Int t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }
    static Int mul(Int a, Int b) {
        Wide w = wide(a) * wide(b);
        if (!fits(w)) throw std::overflow_error("rational overflow in multiply");
        return Int(w);
    }
    static Int add(Int a, Int b) {
        Wide w = wide(a) + wide(b);
        if (!fits(w)) throw std::overflow_error("rational overflow in add");
        return Int(w);
    }
    static bool fits(Wide w) {
        if constexpr (sizeof(Int) >= sizeof(Wide)) {
            return true;  // no headroom to check with; rely on range discipline
        } else {
            return w >= Wide(std::numeric_limits<Int>::min()) &&
                   w <= Wide(std::numeric_limits<Int>::max());
        }
    }
    static std::string int_to_string(Int v) {
        if constexpr (sizeof(Int) > sizeof(long long)) {
            if (v == 0) return "0";
            bool neg = v < 0;
            std::string digits;
            while (v != 0) {
                int d = int(neg ? -(v % 10) : (v % 10));
                digits.insert(digits.begin(), char('0' + d));
                v /= 10;
            }
            return neg ? "-" + digits : digits;
        } else {
            return std::to_string((long long)v);
        }
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = gcd_int(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    Int num_ = 0;
    Int den_ = 1;
};

using Rat = RationalT<long long>;
#ifdef __SIZEOF_INT128__
using Rat128 = RationalT<__int128>;
#endif

inline long long binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

}  // namespace tubemc
