#pragma once
// certified_real.hpp
//
// CertifiedReal represents alpha and beta in floor(alpha*n + beta). Three
// generators are supported:
//
//   rational       p/q                       exact, enclosure is a point
//   sqrt_rational  (sqrt(k) + shift) * scale exact in Q(sqrt k)
//   cf_stream      [a0; a1, a2, ...] prefix  enclosure from convergent brackets,
//                                            optionally mapped by x -> mul*x + add
//
// Floors of alpha*n + beta are decided exactly whenever alpha and beta share a
// quadratic field (rationals share every field). Otherwise the enclosures are
// refined from 128 to 4096 bits, doubling, until both endpoints have the same
// floor; failing that the value is reported as boundary-ambiguous.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"
#include "prime_engine.hpp"
#include "quadratic.hpp"

namespace beatty {

inline constexpr unsigned kInitialPrecisionBits = 128;
inline constexpr unsigned kMaxPrecisionBits = 4096;

struct Enclosure {
    Rational lo, hi;
    Rational width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
};

class CertifiedReal {
public:
    /// Defaults to the rational 0 (the canonical beta).
    CertifiedReal() : value_(QuadraticNumber{}) {}

    static CertifiedReal rational(const Rational& r) { return CertifiedReal(QuadraticNumber(r)); }

    static CertifiedReal rational(long num, long den) { return rational(make_rational(num, den)); }

    /// (sqrt(k) + shift) * scale. A perfect-square k collapses to a rational.
    static CertifiedReal sqrt_rational(const Integer& k, const Rational& shift = 0,
                                       const Rational& scale = 1) {
        if (k < 0) throw ParameterError("sqrt generator needs k >= 0");
        return CertifiedReal(QuadraticNumber::with_root(shift * scale, scale, k));
    }

    static CertifiedReal golden_ratio() {
        return sqrt_rational(5, 1, make_rational(1, 2));
    }

    static CertifiedReal quadratic(const QuadraticNumber& q) { return CertifiedReal(q); }

    /// Finite prefix of a continued fraction; the tail beyond it is unknown.
    static CertifiedReal cf_stream(std::vector<Integer> terms) {
        if (terms.empty()) throw ParameterError("cf stream needs at least one term");
        for (std::size_t i = 1; i < terms.size(); ++i)
            if (terms[i] < 1) throw ParameterError("cf partial quotients after a0 must be >= 1");
        CfStream cf;
        cf.terms = std::make_shared<const std::vector<Integer>>(std::move(terms));
        return CertifiedReal(std::move(cf));
    }

    bool is_exact() const { return quadratic_value() != nullptr; }
    bool is_rational() const {
        const auto* q = quadratic_value();
        return q && q->is_rational();
    }

    /// Exact value for rational and sqrt generators; null for cf streams.
    const QuadraticNumber* quadratic_value() const { return std::get_if<QuadraticNumber>(&value_); }

    Rational rational_value() const {
        if (!is_rational()) throw ParameterError("value is not rational: " + spec());
        return quadratic_value()->rational_part();
    }

    bool is_cf_stream() const { return std::holds_alternative<CfStream>(value_); }

    /// Raw partial quotients of a cf stream (identity map only), else null.
    const std::vector<Integer>* cf_terms() const {
        const auto* cf = std::get_if<CfStream>(&value_);
        if (!cf || cf->mul != 1 || cf->add != 0) return nullptr;
        return cf->terms.get();
    }

    /// x -> x * factor.
    CertifiedReal scaled(const Rational& factor) const {
        if (const auto* q = quadratic_value()) return CertifiedReal(*q * QuadraticNumber(factor));
        CfStream cf = std::get<CfStream>(value_);
        cf.mul *= factor;
        cf.add *= factor;
        return CertifiedReal(std::move(cf));
    }

    /// x -> x + offset.
    CertifiedReal shifted(const Rational& offset) const {
        if (const auto* q = quadratic_value()) return CertifiedReal(*q + QuadraticNumber(offset));
        CfStream cf = std::get<CfStream>(value_);
        cf.add += offset;
        return CertifiedReal(std::move(cf));
    }

    /// Enclosure at the given precision: width <= 2^-bits for sqrt generators,
    /// a point for rationals, and for cf streams the tightest convergent
    /// bracket reaching 2^-bits or the end of the prefix.
    Enclosure enclosure(unsigned bits) const {
        if (const auto* q = quadratic_value()) {
            // width of the dyadic root enclosure is |b|/2^bits; widen bits so it is <= 2^-bits
            const auto& b = q->root_coefficient();
            unsigned extra = 0;
            if (b != 0) {
                Rational mag = abs(b);
                while (mag > 1) { mag /= 2; ++extra; }
            }
            auto [lo, hi] = q->enclosure(bits + extra);
            return {lo, hi};
        }
        return std::get<CfStream>(value_).enclosure(bits);
    }

    /// Current working enclosure, starting at 128 bits.
    const Enclosure& current() const {
        if (!current_) current_ = enclosure(bits_);
        return *current_;
    }
    unsigned precision() const { return bits_; }

    /// Doubles the working precision. Returns false when the enclosure could
    /// not shrink (exact values, exhausted cf prefix).
    bool refine() {
        const Rational before = current().width();
        bits_ *= 2;
        current_ = enclosure(bits_);
        return current_->width() < before;
    }

    /// Exact sign comparison with a rational where possible; cf streams refine
    /// to the cap and throw if the rational stays inside the enclosure.
    int compare(const Rational& r) const {
        if (const auto* q = quadratic_value()) return q->compare(QuadraticNumber(r));
        for (unsigned bits = kInitialPrecisionBits; bits <= kMaxPrecisionBits; bits *= 2) {
            const Enclosure e = enclosure(bits);
            if (e.hi < r) return -1;
            if (e.lo > r) return 1;
            if (e.is_point()) return 0;
        }
        throw CertificationError("cannot compare " + spec() + " with " + ratio_string(r));
    }

    double to_double() const {
        if (const auto* q = quadratic_value()) return q->to_double();
        const Enclosure e = enclosure(64);
        return beatty::to_double(Rational((e.lo + e.hi) / 2));
    }

    /// Canonical textual form (parseable for rational, sqrt and plain cf values).
    std::string spec() const {
        if (const auto* q = quadratic_value()) {
            if (q->is_rational()) return "rat:" + ratio_string(q->rational_part());
            const Rational scale = q->root_coefficient();
            const Rational shift = q->rational_part() / scale;
            std::string s = "sqrt:" + q->radicand().get_str();
            if (shift != 0) s += "+" + ratio_string(shift);
            if (scale != 1) s += "*" + ratio_string(scale);
            return s;
        }
        const auto& cf = std::get<CfStream>(value_);
        std::string s = "cf:";
        for (std::size_t i = 0; i < cf.terms->size(); ++i) {
            if (i) s += ';';
            s += (*cf.terms)[i].get_str();
        }
        if (cf.mul != 1) s += "[*" + ratio_string(cf.mul) + "]";
        if (cf.add != 0) s += "[+" + ratio_string(cf.add) + "]";
        return s;
    }

private:
    struct CfStream {
        std::shared_ptr<const std::vector<Integer>> terms;
        Rational mul = 1, add = 0;

        Enclosure enclosure(unsigned bits) const {
            Rational target(Integer(1), Integer(Integer(1) << bits));
            target.canonicalize();
            Integer h_prev = 1, k_prev = 0, h = (*terms)[0], k = 1;
            Enclosure e = bracket(h, k, h_prev, k_prev);
            for (std::size_t i = 1; i < terms->size() && e.width() > target; ++i) {
                const Integer& a = (*terms)[i];
                Integer h_next = a * h + h_prev, k_next = a * k + k_prev;
                h_prev = std::move(h);
                k_prev = std::move(k);
                h = std::move(h_next);
                k = std::move(k_next);
                e = bracket(h, k, h_prev, k_prev);
            }
            return e;
        }

        // value = (h t + h_prev) / (k t + k_prev) for an unknown tail t in [1, inf]
        Enclosure bracket(const Integer& h, const Integer& k, const Integer& h_prev,
                          const Integer& k_prev) const {
            Rational at_inf = make_rational(h, k);
            Rational at_one = make_rational(h + h_prev, k + k_prev);
            Rational lo = std::min(at_inf, at_one), hi = std::max(at_inf, at_one);
            lo = lo * mul + add;
            hi = hi * mul + add;
            if (mul < 0) std::swap(lo, hi);
            return {lo, hi};
        }
    };

    explicit CertifiedReal(QuadraticNumber q) : value_(std::move(q)) {}
    explicit CertifiedReal(CfStream cf) : value_(std::move(cf)) {}

    std::variant<QuadraticNumber, CfStream> value_;
    unsigned bits_ = kInitialPrecisionBits;
    mutable std::optional<Enclosure> current_;
};

// ---------------------------------------------------------------------------
// Spec grammar: rat:<p>/<q> | sqrt:<k>[+<p>/<q>][*<p>/<q>] | phi | cf:<a0>,<a1>,...
// ---------------------------------------------------------------------------

namespace detail {

inline Integer parse_integer(std::string_view s, std::string_view what) {
    Integer v;
    const std::string str(s);
    if (str.empty() || v.set_str(str, 10) != 0)
        throw ParameterError("malformed integer in " + std::string(what) + ": '" + str + "'");
    return v;
}

inline Rational parse_ratio(std::string_view s, std::string_view what) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s, what));
    const Integer num = parse_integer(s.substr(0, slash), what);
    const Integer den = parse_integer(s.substr(slash + 1), what);
    if (den == 0) throw ParameterError("zero denominator in " + std::string(what));
    return make_rational(num, den);
}

} // namespace detail

inline Rational parse_rational(std::string_view s) { return detail::parse_ratio(s, "rational"); }

inline CertifiedReal parse_real_spec(std::string_view spec) {
    const std::string full(spec);
    if (spec == "phi") return CertifiedReal::golden_ratio();
    if (spec.starts_with("rat:")) return CertifiedReal::rational(detail::parse_ratio(spec.substr(4), full));
    if (spec.starts_with("cf:")) {
        std::vector<Integer> terms;
        std::string_view rest = spec.substr(3);
        while (true) {
            const auto sep = rest.find_first_of(",;");
            terms.push_back(detail::parse_integer(rest.substr(0, sep), full));
            if (sep == std::string_view::npos) break;
            rest = rest.substr(sep + 1);
        }
        return CertifiedReal::cf_stream(std::move(terms));
    }
    if (spec.starts_with("sqrt:")) {
        std::string_view rest = spec.substr(5);
        const auto end_k = rest.find_first_of("+-*");
        const Integer k = detail::parse_integer(rest.substr(0, end_k), full);
        Rational shift = 0, scale = 1;
        rest = end_k == std::string_view::npos ? std::string_view{} : rest.substr(end_k);
        if (!rest.empty() && (rest[0] == '+' || rest[0] == '-')) {
            const bool negative = rest[0] == '-';
            rest = rest.substr(1);
            const auto star = rest.find('*');
            shift = detail::parse_ratio(rest.substr(0, star), full);
            if (negative) shift = -shift;
            rest = star == std::string_view::npos ? std::string_view{} : rest.substr(star);
        }
        if (!rest.empty()) {
            if (rest[0] != '*') throw ParameterError("malformed sqrt spec: '" + full + "'");
            scale = detail::parse_ratio(rest.substr(1), full);
        }
        return CertifiedReal::sqrt_rational(k, shift, scale);
    }
    throw ParameterError("unknown real spec: '" + full + "'");
}

// ---------------------------------------------------------------------------
// Certified floors
// ---------------------------------------------------------------------------

namespace detail {

inline Integer floor_by_refinement(const CertifiedReal& alpha, const CertifiedReal& beta,
                                   const Integer& n) {
    const Rational rn(n);
    for (unsigned bits = kInitialPrecisionBits; bits <= kMaxPrecisionBits; bits *= 2) {
        const Enclosure a = alpha.enclosure(bits), b = beta.enclosure(bits);
        const Integer lo = floor_of(a.lo * rn + b.lo), hi = floor_of(a.hi * rn + b.hi);
        if (lo == hi) return lo;
    }
    throw CertificationError("floor(" + alpha.spec() + " * " + n.get_str() + " + " + beta.spec() +
                             ") not resolved at " + std::to_string(kMaxPrecisionBits) + " bits");
}

inline void require_positive(const CertifiedReal& alpha) {
    if (alpha.compare(0) <= 0) throw ParameterError("alpha must be positive: " + alpha.spec());
}

} // namespace detail

/// Exactly floor(alpha*n + beta).
inline Integer floor_affine(const CertifiedReal& alpha, const CertifiedReal& beta, const Integer& n) {
    if (n < 1) throw ParameterError("floor_affine needs n >= 1");
    detail::require_positive(alpha);
    const auto* qa = alpha.quadratic_value();
    const auto* qb = beta.quadratic_value();
    if (qa && qb && QuadraticNumber::common_field(*qa, *qb))
        return (*qa * QuadraticNumber(Rational(n)) + *qb).floor();
    return detail::floor_by_refinement(alpha, beta, n);
}

inline Integer floor_affine(const CertifiedReal& alpha, const CertifiedReal& beta, std::uint64_t n) {
    return floor_affine(alpha, beta, from_u64(n));
}

/// Whether {alpha*n + beta} lies in [c1, c2), 0 <= c1 < c2 <= 1.
inline bool fractional_in(const CertifiedReal& alpha, const CertifiedReal& beta, const Integer& n,
                          const Rational& c1, const Rational& c2) {
    if (!(0 <= c1 && c1 < c2 && c2 <= 1)) throw ParameterError("fractional_in needs 0 <= c1 < c2 <= 1");
    const Integer f = floor_affine(alpha, beta, n);
    if (c1 > 0 && floor_affine(alpha, beta.shifted(-c1), n) != f) return false;
    return floor_affine(alpha, beta.shifted(-c2), n) < f;
}

inline bool fractional_in(const CertifiedReal& alpha, const CertifiedReal& beta, std::uint64_t n,
                          const Rational& c1, const Rational& c2) {
    return fractional_in(alpha, beta, from_u64(n), c1, c2);
}

/// Repeated evaluation of floor(alpha*n + beta) for many n. When alpha and
/// beta share a field the value is kept as (A0 + A1 n + (B0 + B1 n) sqrt k)/C
/// and evaluated with 128-bit integers where they suffice, GMP otherwise.
class AffineFloor {
public:
    AffineFloor(CertifiedReal alpha, CertifiedReal beta)
        : alpha_(std::move(alpha)), beta_(std::move(beta)) {
        detail::require_positive(alpha_);
        const auto* qa = alpha_.quadratic_value();
        const auto* qb = beta_.quadratic_value();
        if (!(qa && qb)) return;
        const auto field = QuadraticNumber::common_field(*qa, *qb);
        if (!field) return;
        exact_ = true;
        k_ = *field;
        Integer C = 1;
        for (const Rational* r : {&qa->rational_part(), &qa->root_coefficient(), &qb->rational_part(),
                                  &qb->root_coefficient()})
            mpz_lcm(C.get_mpz_t(), C.get_mpz_t(), r->get_den_mpz_t());
        C_ = C;
        auto scale = [&](const Rational& r) { return Integer(r.get_num() * (C / r.get_den())); };
        a1_ = scale(qa->rational_part());
        b1_ = scale(qa->root_coefficient());
        a0_ = scale(qb->rational_part());
        b0_ = scale(qb->root_coefficient());
        setup_fast();
    }

    const CertifiedReal& alpha() const { return alpha_; }
    const CertifiedReal& beta() const { return beta_; }
    bool exact() const { return exact_; }

    Integer operator()(const Integer& n) const {
        if (!exact_) return detail::floor_by_refinement(alpha_, beta_, n);
        const Integer A = a1_ * n + a0_, B = b1_ * n + b0_;
        const Integer t = k_ == 1 ? Integer(0) : QuadraticNumber::floor_root(B, k_);
        return floor_div(A + t, C_);
    }

    /// floor(alpha*n + beta) as a 64-bit value (guard error if it does not fit).
    std::int64_t at(std::uint64_t n) const {
        if (fast_) {
            if (auto v = fast_eval(n)) return *v;
        }
        return to_i64((*this)(from_u64(n)));
    }

private:
    using i128 = __int128;
    using u128 = unsigned __int128;

    CertifiedReal alpha_, beta_;
    bool exact_ = false;
    Integer k_ = 1, C_ = 1, a1_, a0_, b1_, b0_;
    bool fast_ = false;
    std::int64_t fk_ = 1, fC_ = 1, fa1_ = 0, fa0_ = 0, fb1_ = 0, fb0_ = 0;

    void setup_fast() {
        for (const Integer* v : {&k_, &C_, &a1_, &a0_, &b1_, &b0_})
            if (!fits_i64(*v)) return;
        fk_ = k_.get_si();
        fC_ = C_.get_si();
        fa1_ = a1_.get_si();
        fa0_ = a0_.get_si();
        fb1_ = b1_.get_si();
        fb0_ = b0_.get_si();
        fast_ = true;
    }

    static std::optional<i128> affine(std::int64_t slope, std::int64_t offset, std::uint64_t n) {
        i128 prod;
        if (__builtin_mul_overflow(static_cast<i128>(slope), static_cast<i128>(n), &prod)) return std::nullopt;
        i128 sum;
        if (__builtin_add_overflow(prod, static_cast<i128>(offset), &sum)) return std::nullopt;
        return sum;
    }

    static u128 isqrt_u128(u128 v) {
        auto r = static_cast<u128>(std::sqrt(static_cast<long double>(v)));
        while (r > 0 && r * r > v) --r;
        while ((r + 1) * (r + 1) <= v) ++r;
        return r;
    }

    std::optional<std::int64_t> fast_eval(std::uint64_t n) const {
        const auto A = affine(fa1_, fa0_, n);
        const auto B = affine(fb1_, fb0_, n);
        if (!A || !B) return std::nullopt;
        i128 t = 0;
        if (fk_ != 1 && *B != 0) {
            const i128 limit = static_cast<i128>(1) << 62;
            if (*B >= limit || *B <= -limit) return std::nullopt;
            const u128 mag = static_cast<u128>(*B < 0 ? -*B : *B);
            u128 sq = mag * mag, prod;
            if (__builtin_mul_overflow(sq, static_cast<u128>(fk_), &prod) || prod >> 126) return std::nullopt;
            const auto r = static_cast<i128>(isqrt_u128(prod));
            t = *B > 0 ? r : -r - 1;
        }
        i128 num;
        if (__builtin_add_overflow(*A, t, &num)) return std::nullopt;
        i128 q = num / fC_;
        if ((num % fC_ != 0) && ((num < 0) != (fC_ < 0))) --q;
        if (q > INT64_MAX || q < INT64_MIN) return std::nullopt;
        return static_cast<std::int64_t>(q);
    }
};

// ---------------------------------------------------------------------------
// Beatty prime pairs
// ---------------------------------------------------------------------------

struct PrimePair {
    std::uint64_t p, q;
    bool operator==(const PrimePair&) const = default;
};

struct PairCount {
    std::uint64_t count = 0;
    std::optional<std::vector<PrimePair>> pairs;
};

/// Primes p <= x such that floor(alpha p + beta) is prime, ascending.
/// Floors below 2 are never prime.
inline std::vector<PrimePair> beatty_pair_list(const AffineFloor& floors, std::uint64_t x,
                                               const PrimeTable& primes) {
    if (x > primes.limit()) throw ParameterError("prime table limit below x");
    if (x >= 1) {
        const Integer top = floors(from_u64(std::max<std::uint64_t>(x, 1)));
        if (top > from_u64(primes.limit()))
            throw ParameterError("prime table limit " + std::to_string(primes.limit()) +
                                 " below floor(alpha x + beta) = " + top.get_str());
    }
    std::vector<PrimePair> out;
    for (std::uint64_t p : primes.primes()) {
        if (p > x) break;
        const std::int64_t q = floors.at(p);
        if (q >= 2 && primes.contains(static_cast<std::uint64_t>(q)))
            out.push_back({p, static_cast<std::uint64_t>(q)});
    }
    return out;
}

inline PairCount beatty_prime_pairs(const CertifiedReal& alpha, const CertifiedReal& beta, std::uint64_t x,
                                    const PrimeTable& primes, bool keep_pairs = false) {
    auto list = beatty_pair_list(AffineFloor(alpha, beta), x, primes);
    PairCount out;
    out.count = list.size();
    if (keep_pairs) out.pairs = std::move(list);
    return out;
}

/// count * (log x)^2 / x; display-only.
inline double normalized_statistic(double count, std::uint64_t x) {
    if (x < 3) throw ParameterError("normalized_statistic needs x >= 3");
    const double lx = std::log(static_cast<double>(x));
    return count * lx * lx / static_cast<double>(x);
}

} // namespace beatty
