#pragma once
// Continued fraction expansions with exact convergents.
//
//   rational      Euclid; terminates
//   sqrt values   exact complete quotients (P + Q sqrt k) / R
//   cf streams    the given prefix (error if more terms are requested)
//   anything else common prefix of the expansions of a certified bracket

#include <cstddef>
#include <utility>
#include <vector>

#include "certified_real.hpp"

namespace beatty {

struct Convergent {
    Integer h, k; // h/k
    bool operator==(const Convergent&) const = default;
};

struct ContinuedFraction {
    std::vector<Integer> partial_quotients;
    std::vector<Convergent> convergents;
    bool terminated = false; // exact rational expansion ended

    /// Largest convergent denominator <= bound, with its numerator.
    const Convergent* best_below(const Integer& bound) const {
        const Convergent* best = nullptr;
        for (const auto& c : convergents) {
            if (c.k > bound) break;
            best = &c;
        }
        return best;
    }
};

namespace detail {

inline void push_quotient(ContinuedFraction& cf, const Integer& a) {
    const std::size_t i = cf.convergents.size();
    Integer h_prev = i >= 1 ? cf.convergents[i - 1].h : Integer(1);
    Integer k_prev = i >= 1 ? cf.convergents[i - 1].k : Integer(0);
    Integer h_prev2 = i >= 2 ? cf.convergents[i - 2].h : Integer(i == 1 ? 1 : 0);
    Integer k_prev2 = i >= 2 ? cf.convergents[i - 2].k : Integer(i == 1 ? 0 : 1);
    cf.partial_quotients.push_back(a);
    cf.convergents.push_back({a * h_prev + h_prev2, a * k_prev + k_prev2});
}

inline void expand_rational(ContinuedFraction& cf, Rational r, std::size_t count) {
    while (cf.partial_quotients.size() < count) {
        const Integer a = floor_of(r);
        push_quotient(cf, a);
        const Rational frac = r - Rational(a);
        if (frac == 0) {
            cf.terminated = true;
            return;
        }
        r = 1 / frac;
    }
}

inline void expand_quadratic(ContinuedFraction& cf, const QuadraticNumber& x, std::size_t count) {
    // x = (P + Q sqrt k) / R with integers and R > 0
    const Integer k = x.radicand();
    Integer R;
    mpz_lcm(R.get_mpz_t(), x.rational_part().get_den_mpz_t(), x.root_coefficient().get_den_mpz_t());
    Integer P = x.rational_part().get_num() * (R / x.rational_part().get_den());
    Integer Q = x.root_coefficient().get_num() * (R / x.root_coefficient().get_den());
    while (cf.partial_quotients.size() < count) {
        const Integer a = floor_div(P + QuadraticNumber::floor_root(Q, k), R);
        push_quotient(cf, a);
        // 1 / ((P - aR + Q sqrt k)/R) = R (P' - Q sqrt k) / (P'^2 - Q^2 k)
        const Integer Pp = P - a * R;
        Integer nP = R * Pp, nQ = -R * Q, nR = Pp * Pp - Q * Q * k;
        if (nR < 0) {
            nP = -nP;
            nQ = -nQ;
            nR = -nR;
        }
        Integer g;
        mpz_gcd(g.get_mpz_t(), nP.get_mpz_t(), nQ.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nR.get_mpz_t());
        P = nP / g;
        Q = nQ / g;
        R = nR / g;
    }
}

// Emits the quotients shared by every number in [lo, hi]. Returns false when
// the bracket stops deciding the next quotient.
inline bool expand_bracket(ContinuedFraction& cf, Rational lo, Rational hi, std::size_t count) {
    while (cf.partial_quotients.size() < count) {
        const Integer a = floor_of(lo);
        if (floor_of(hi) != a) return false;
        if (lo == hi) {
            expand_rational(cf, lo, count);
            return true;
        }
        if (Rational(a) == lo) return false; // value may equal a exactly
        push_quotient(cf, a);
        Rational nlo = 1 / (hi - Rational(a)), nhi = 1 / (lo - Rational(a));
        lo = std::move(nlo);
        hi = std::move(nhi);
    }
    return true;
}

} // namespace detail

/// First `count` partial quotients and convergents of alpha (fewer if alpha
/// is rational and its expansion ends).
inline ContinuedFraction continued_fraction(const CertifiedReal& alpha, std::size_t count) {
    if (alpha.compare(0) <= 0) throw ParameterError("continued_fraction needs alpha > 0");
    ContinuedFraction cf;
    if (count == 0) return cf;
    if (const auto* q = alpha.quadratic_value()) {
        if (q->is_rational())
            detail::expand_rational(cf, q->rational_part(), count);
        else
            detail::expand_quadratic(cf, *q, count);
        return cf;
    }
    if (const auto* terms = alpha.cf_terms()) {
        if (count > terms->size())
            throw CertificationError("cf prefix has only " + std::to_string(terms->size()) + " terms");
        for (std::size_t i = 0; i < count; ++i) detail::push_quotient(cf, (*terms)[i]);
        return cf;
    }
    for (unsigned bits = kInitialPrecisionBits; bits <= kMaxPrecisionBits; bits *= 2) {
        const Enclosure e = alpha.enclosure(bits);
        ContinuedFraction attempt;
        if (detail::expand_bracket(attempt, e.lo, e.hi, count)) return attempt;
    }
    throw CertificationError("continued fraction of " + alpha.spec() + " not resolved");
}

} // namespace beatty
