#pragma once

// Exact arithmetic over Z[w], w = exp(i*pi/4), the eighth root of unity.
// Elements are stored as a + b*w + c*w^2 + d*w^3 with w^4 = -1.
// Squared magnitudes of such elements live in Z[sqrt(2)] and are kept
// exact as A + B*sqrt(2); ratios of those are kept exact as
// (p + q*sqrt(2)) / r.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace entlab {

struct Error : std::runtime_error {
    enum class Kind { parse, guard, domain, cross_check };
    Kind kind;
    Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void parse_error(const std::string& m) { throw Error(Error::Kind::parse, m); }
[[noreturn]] inline void guard_error(const std::string& m) { throw Error(Error::Kind::guard, m); }
[[noreturn]] inline void domain_error(const std::string& m) { throw Error(Error::Kind::domain, m); }
[[noreturn]] inline void cross_check_error(const std::string& m) { throw Error(Error::Kind::cross_check, m); }

using i64 = long long;
using i128 = __int128;

// A + B*sqrt(2), exact.
struct QuadVal {
    i64 a = 0;
    i64 b = 0;

    QuadVal() = default;
    QuadVal(i64 a_, i64 b_) : a(a_), b(b_) {}

    QuadVal operator+(const QuadVal& o) const { return {a + o.a, b + o.b}; }
    QuadVal operator-(const QuadVal& o) const { return {a - o.a, b - o.b}; }
    QuadVal& operator+=(const QuadVal& o) { a += o.a; b += o.b; return *this; }
    bool operator==(const QuadVal& o) const { return a == o.a && b == o.b; }
    bool is_zero() const { return a == 0 && b == 0; }

    // sign of a + b*sqrt(2)
    int sign() const {
        if (a == 0 && b == 0) return 0;
        if (a >= 0 && b >= 0) return 1;
        if (a <= 0 && b <= 0) return -1;
        // opposite signs: compare a^2 with 2 b^2
        i128 aa = (i128)a * a, bb2 = (i128)2 * b * b;
        if (a > 0) return aa > bb2 ? 1 : (aa < bb2 ? -1 : 0);
        return aa < bb2 ? 1 : (aa > bb2 ? -1 : 0);
    }
    bool operator<(const QuadVal& o) const { return (*this - o).sign() < 0; }
    bool operator>(const QuadVal& o) const { return (*this - o).sign() > 0; }

    double to_double() const { return (double)a + (double)b * std::sqrt(2.0); }
};

// Element of Z[w], w = exp(i*pi/4).
struct CycInt {
    i64 a = 0, b = 0, c = 0, d = 0;  // a + b w + c w^2 + d w^3

    CycInt() = default;
    CycInt(i64 a_, i64 b_, i64 c_, i64 d_) : a(a_), b(b_), c(c_), d(d_) {}
    static CycInt one() { return {1, 0, 0, 0}; }

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
    bool operator==(const CycInt& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

    CycInt operator+(const CycInt& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    CycInt operator-(const CycInt& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    CycInt operator-() const { return {-a, -b, -c, -d}; }

    CycInt operator*(const CycInt& o) const {
        // convolution with w^4 = -1 wraparound
        return {
            a * o.a - b * o.d - c * o.c - d * o.b,
            a * o.b + b * o.a - c * o.d - d * o.c,
            a * o.c + b * o.b + c * o.a - d * o.d,
            a * o.d + b * o.c + c * o.b + d * o.a,
        };
    }

    // multiply by w^k, k in 0..7
    CycInt times_w_pow(int k) const {
        CycInt r = *this;
        k = ((k % 8) + 8) % 8;
        if (k >= 4) { r = -r; k -= 4; }
        for (int i = 0; i < k; ++i) r = CycInt{-r.d, r.a, r.b, r.c};
        return r;
    }

    CycInt conj() const { return {a, -d, -c, -b}; }

    // |z|^2 as an exact element of Z[sqrt(2)]
    QuadVal norm_sq() const {
        return {a * a + b * b + c * c + d * d, a * b + b * c + c * d - a * d};
    }

    bool all_even() const { return !((a | b | c | d) & 1); }
    CycInt half() const { return {a / 2, b / 2, c / 2, d / 2}; }

    std::complex<double> to_complex() const {
        static const double s = std::sqrt(0.5);
        // w = (1+i)/sqrt(2), w^2 = i, w^3 = (-1+i)/sqrt(2)
        return {(double)a + s * (double)(b - d), (double)c + s * (double)(b + d)};
    }
};

// (p + q*sqrt(2)) / r with r > 0, fully reduced; or a plain double.
// Used for PARs, probabilities, and anything else that is a ratio of
// squared magnitudes.
struct RatioValue {
    bool exact = true;
    i64 p = 0, q = 0, r = 1;
    double f = 0.0;

    RatioValue() = default;

    static RatioValue from_int(i64 v) { RatioValue x; x.p = v; return x; }

    static RatioValue from_double(double v) {
        RatioValue x;
        x.exact = false;
        x.f = v;
        return x;
    }

    // (n.a + n.b sqrt2) / (d.a + d.b sqrt2), exact; denominator must be nonzero.
    static RatioValue from_quad_ratio(QuadVal num, QuadVal den) {
        if (den.is_zero()) domain_error("ratio with zero denominator");
        // rationalise: multiply by (den.a - den.b sqrt2)
        i128 P = (i128)num.a * den.a - (i128)2 * num.b * den.b;
        i128 Q = (i128)num.b * den.a - (i128)num.a * den.b;
        i128 R = (i128)den.a * den.a - (i128)2 * den.b * den.b;
        if (R < 0) { P = -P; Q = -Q; R = -R; }
        if (R == 0) domain_error("degenerate quadratic denominator");
        i128 g = gcd128(gcd128(P < 0 ? -P : P, Q < 0 ? -Q : Q), R);
        if (g > 1) { P /= g; Q /= g; R /= g; }
        RatioValue x;
        x.p = narrow(P);
        x.q = narrow(Q);
        x.r = narrow(R);
        return x;
    }

    double to_double() const {
        if (!exact) return f;
        return ((double)p + (double)q * std::sqrt(2.0)) / (double)r;
    }

    bool is_rational() const { return exact && q == 0; }

    // exact power-of-two test; returns exponent (may be negative) via out param
    bool log2_exact(int& e) const {
        if (!exact || q != 0 || p <= 0) return false;
        i64 num = p, den = r;
        int ep = 0, er = 0;
        while (!(num & 1)) { num >>= 1; ++ep; }
        while (!(den & 1)) { den >>= 1; ++er; }
        if (num != 1 || den != 1) return false;
        e = ep - er;
        return true;
    }

    int compare(const RatioValue& o) const {
        if (exact && o.exact) {
            // (p + q s)/r vs (P + Q s)/R  <=>  (pR - Pr) + (qR - Qr) s vs 0
            i128 da = (i128)p * o.r - (i128)o.p * r;
            i128 db = (i128)q * o.r - (i128)o.q * r;
            return sign_quad(da, db);
        }
        double x = to_double(), y = o.to_double();
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    bool operator==(const RatioValue& o) const { return compare(o) == 0; }
    bool operator<(const RatioValue& o) const { return compare(o) < 0; }
    bool operator>(const RatioValue& o) const { return compare(o) > 0; }

    std::string to_string() const {
        if (!exact) return std::to_string(f);
        std::string s;
        if (q == 0) {
            s = std::to_string(p);
            if (r != 1) s += "/" + std::to_string(r);
        } else {
            s = "(" + std::to_string(p) + "+" + std::to_string(q) + "*sqrt2)/" + std::to_string(r);
        }
        return s;
    }

private:
    static i128 gcd128(i128 x, i128 y) {
        while (y) { i128 t = x % y; x = y; y = t; }
        return x < 0 ? -x : x;
    }
    static i64 narrow(i128 v) {
        if (v > (i128)INT64_MAX || v < (i128)INT64_MIN) domain_error("exact ratio overflow");
        return (i64)v;
    }
    static int sign_quad(i128 a, i128 b) {
        if (a == 0 && b == 0) return 0;
        if (a >= 0 && b >= 0) return 1;
        if (a <= 0 && b <= 0) return -1;
        // opposite signs: compare a^2 with 2 b^2
        i128 lim = (i128)1 << 62;
        if (a > -lim && a < lim && b > -lim && b < lim) {
            i128 aa = a * a, bb2 = 2 * b * b;
            if (a > 0) return aa > bb2 ? 1 : (aa < bb2 ? -1 : 0);
            return aa < bb2 ? 1 : (aa > bb2 ? -1 : 0);
        }
        long double aa = (long double)a * (long double)a;
        long double bb2 = 2.0L * (long double)b * (long double)b;
        if (a > 0) return aa > bb2 ? 1 : (aa < bb2 ? -1 : 0);
        return aa < bb2 ? 1 : (aa > bb2 ? -1 : 0);
    }
};

}  // namespace entlab
