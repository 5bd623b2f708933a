#pragma once
// Exact arithmetic in Q(sqrt k): values a + b*sqrt(k) with rational a, b and
// square-free k >= 2. Rationals are the b == 0 case and are compatible with
// every field. Signs, floors and comparisons are decided with integer
// arithmetic only (clear denominators, square once), so they never need a
// precision cap.

#include <cmath>
#include <optional>
#include <string>

#include "exact.hpp"
#include "prime_engine.hpp"

namespace beatty {

class QuadraticNumber {
public:
    QuadraticNumber() : k_(1) {}
    QuadraticNumber(const Rational& a) : a_(a), k_(1) {} // NOLINT(google-explicit-constructor)

    /// a + b*sqrt(radicand); the radicand is reduced to its square-free part.
    static QuadraticNumber with_root(const Rational& a, const Rational& b, const Integer& radicand) {
        if (radicand < 0) throw ParameterError("negative radicand");
        if (radicand == 0 || b == 0) return QuadraticNumber(a);
        Integer outside = 1, core = radicand;
        if (core.fits_ulong_p()) {
            const auto fac = factorize(core.get_ui());
            core = 1;
            for (const auto& pp : fac) {
                Integer p(static_cast<unsigned long>(pp.prime));
                for (unsigned e = 0; e + 1 < pp.exponent; e += 2) outside *= p;
                if (pp.exponent % 2) core *= p;
            }
        } else if (is_perfect_square(core)) {
            outside = isqrt(core);
            core = 1;
        } else {
            throw GuardError("radicand too large to normalize");
        }
        if (core == 1) return QuadraticNumber(a + b * Rational(outside));
        QuadraticNumber q;
        q.a_ = a;
        q.b_ = b * Rational(outside);
        q.k_ = core;
        return q;
    }

    const Rational& rational_part() const { return a_; }
    const Rational& root_coefficient() const { return b_; }
    const Integer& radicand() const { return k_; }
    bool is_rational() const { return b_ == 0; }

    /// Common field of two numbers, if any (1 means both rational).
    static std::optional<Integer> common_field(const QuadraticNumber& x, const QuadraticNumber& y) {
        if (x.is_rational()) return y.k_;
        if (y.is_rational() || x.k_ == y.k_) return x.k_;
        return std::nullopt;
    }

    friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
        const auto k = field_or_throw(x, y);
        return make(x.a_ + y.a_, x.b_ + y.b_, k);
    }
    friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
        const auto k = field_or_throw(x, y);
        return make(x.a_ - y.a_, x.b_ - y.b_, k);
    }
    QuadraticNumber operator-() const { return make(-a_, -b_, k_); }

    friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
        const auto k = field_or_throw(x, y);
        return make(x.a_ * y.a_ + x.b_ * y.b_ * Rational(k), x.a_ * y.b_ + x.b_ * y.a_, k);
    }

    QuadraticNumber reciprocal() const {
        if (is_rational()) {
            if (a_ == 0) throw ParameterError("division by zero");
            return QuadraticNumber(Rational(1) / a_);
        }
        // (a - b sqrt k) / (a^2 - b^2 k); the norm is nonzero because k is not a square.
        const Rational norm = a_ * a_ - b_ * b_ * Rational(k_);
        return make(a_ / norm, -b_ / norm, k_);
    }

    friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
        return x * y.reciprocal();
    }

    /// Exact sign of a + b*sqrt(k).
    int sign() const {
        const int sa = sgn(a_), sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        // opposite signs: compare a^2 with b^2 k
        const int c = cmp(a_ * a_, b_ * b_ * Rational(k_));
        return c > 0 ? sa : sb; // c == 0 impossible for non-square k
    }

    int compare(const QuadraticNumber& other) const { return (*this - other).sign(); }

    /// Exact floor: write as (A + B sqrt k)/C with C > 0, then
    /// floor = floor((A + floor(B sqrt k)) / C).
    Integer floor() const {
        if (is_rational()) return floor_of(a_);
        const Integer C = lcm_den(a_, b_);
        const Integer A = a_.get_num() * (C / a_.get_den());
        const Integer B = b_.get_num() * (C / b_.get_den());
        return floor_div(A + floor_root(B, k_), C);
    }

    Integer ceil() const { return -(-*this).floor(); }

    /// floor(B * sqrt(k)) for integer B and non-square k.
    static Integer floor_root(const Integer& B, const Integer& k) {
        if (B == 0) return 0;
        const Integer r = isqrt(B * B * k);
        return B > 0 ? r : Integer(-r - 1);
    }

    /// Rational enclosure [lo, hi] of width |b| / 2^bits (a point if rational).
    std::pair<Rational, Rational> enclosure(unsigned bits) const {
        if (is_rational()) return {a_, a_};
        Integer scale = 1;
        scale <<= bits;
        const Integer m = isqrt(k_ * scale * scale); // floor(sqrt(k) 2^bits)
        Rational lo_root(m, scale), hi_root(Integer(m + 1), scale);
        lo_root.canonicalize();
        hi_root.canonicalize();
        Rational lo = a_ + b_ * lo_root, hi = a_ + b_ * hi_root;
        if (b_ < 0) std::swap(lo, hi);
        return {lo, hi};
    }

    double to_double() const {
        return a_.get_d() + b_.get_d() * std::sqrt(k_.get_d());
    }

    std::string to_string() const {
        if (is_rational()) return ratio_string(a_);
        return ratio_string(a_) + "+" + ratio_string(b_) + "*sqrt(" + k_.get_str() + ")";
    }

    bool operator==(const QuadraticNumber& o) const {
        return a_ == o.a_ && b_ == o.b_ && (is_rational() || k_ == o.k_);
    }

private:
    Rational a_, b_;
    Integer k_; // square-free >= 2, or 1 when rational

    static int sgn(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

    static QuadraticNumber make(const Rational& a, const Rational& b, const Integer& k) {
        QuadraticNumber q;
        q.a_ = a;
        if (b != 0 && k != 1) {
            q.b_ = b;
            q.k_ = k;
        }
        return q;
    }

    static Integer field_or_throw(const QuadraticNumber& x, const QuadraticNumber& y) {
        auto k = common_field(x, y);
        if (!k) throw ParameterError("values live in different quadratic fields");
        return *k;
    }

    static Integer lcm_den(const Rational& x, const Rational& y) {
        Integer l;
        mpz_lcm(l.get_mpz_t(), x.get_den_mpz_t(), y.get_den_mpz_t());
        return l;
    }
};

} // namespace beatty
