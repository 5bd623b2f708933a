#pragma once
// Small helpers around GMP's C++ classes: floor/ceil of rationals, integer
// square roots, and (num, den) formatting used by every CSV writer.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>

#include "errors.hpp"

namespace beatty {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw ParameterError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer floor_of(const Rational& r) {
    return floor_div(r.get_num(), r.get_den());
}

inline Integer ceil_of(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer isqrt(const Integer& n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline bool fits_i64(const Integer& n) { return mpz_fits_slong_p(n.get_mpz_t()) != 0; }

inline std::int64_t to_i64(const Integer& n) {
    if (!fits_i64(n)) throw GuardError("integer does not fit in 64 bits: " + n.get_str());
    return n.get_si();
}

inline Integer from_u64(std::uint64_t v) {
    Integer r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

inline Integer from_i64(std::int64_t v) {
    if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
    return -from_u64(static_cast<std::uint64_t>(-(v + 1)) + 1);
}

inline Rational from_u64_ratio(std::uint64_t num, std::uint64_t den = 1) {
    return make_rational(from_u64(num), from_u64(den));
}

/// "num/den" in lowest terms.
inline std::string ratio_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// "num,den" for CSV output; rationals always occupy two integer columns.
inline std::string csv_pair(const Rational& r) {
    return r.get_num().get_str() + "," + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

} // namespace beatty
