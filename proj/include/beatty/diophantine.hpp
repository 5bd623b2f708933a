#pragma once
// Measure and equidistribution machinery for floor(alpha n + beta):
//
//   lemma1_set      {alpha in (0, b) : {alpha / l} in I} built as the union
//                   of ((j + c1) l, min(b, (j + c2) l)), 0 <= j <= b/l
//   farey_union     union of the arcs |theta q - a| <= halfwidth over
//                   coprime 1 <= a <= q <= q_max, on the circle [0, 1)
//   fractional_hits #{n <= y : {alpha n + beta} in [0, width)}
//   sandwich_check  the rational-approximation sandwich around that count

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "certified_real.hpp"
#include "continued_fraction.hpp"
#include "interval_set.hpp"
#include "prime_engine.hpp"

namespace beatty {

// ---------------------------------------------------------------------------
// Lemma-1 scaling set
// ---------------------------------------------------------------------------

inline IntervalSet lemma1_set(const IntervalSet& I, const Rational& b, const Rational& l) {
    if (b <= 0 || l <= 0) throw ParameterError("lemma1_set needs b, l > 0");
    if (!I.empty() && (I.parts().front().lo < 0 || I.parts().back().hi > 1))
        throw ParameterError("lemma1_set needs I within [0, 1)");
    IntervalSet J;
    const Integer jmax = floor_of(b / l);
    for (const auto& part : I.parts()) {
        for (Integer j = 0; j <= jmax; ++j) {
            const Rational lo = (Rational(j) + part.lo) * l;
            if (lo >= b) break;
            const Rational hi = std::min(Rational((Rational(j) + part.hi) * l), b);
            J.add({lo, hi});
        }
    }
    return J;
}

enum class Lemma1Case { l_at_most_b, l_above_b };

struct Lemma1Bound {
    Lemma1Case which;
    Rational bound;
};

/// Explicit constants from the two proof cases:
/// (floor(b/l) + 1) l mes(I) when l <= b, and l mes(I) when l > b.
inline Lemma1Bound lemma1_bound(const IntervalSet& I, const Rational& b, const Rational& l) {
    if (l <= b) return {Lemma1Case::l_at_most_b, Rational(floor_of(b / l) + 1) * l * I.measure()};
    return {Lemma1Case::l_above_b, l * I.measure()};
}

// ---------------------------------------------------------------------------
// Farey arcs
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kFareyMaxQ = 10000;

struct FareyUnion {
    Rational measure;
    Rational subadditive_bound;            // sum_q phi(q) * 2 halfwidth / q
    std::uint64_t arcs = 0;                // number of I_{a,q}
    std::uint64_t components = 0;          // disjoint pieces of the union
    std::optional<IntervalSet> set;        // kept when components <= keep_limit
    bool subadditive() const { return measure <= subadditive_bound; }
};

namespace detail {

inline std::uint64_t euler_phi(std::uint64_t q) {
    std::uint64_t r = q;
    for (std::uint64_t p : prime_factors(q)) r = r / p * (p - 1);
    return r;
}

// Endpoint num / (q * D) for the shared halfwidth denominator D.
struct ArcPoint {
    __int128 num;
    std::int64_t q;
};

inline bool point_less(const ArcPoint& a, const ArcPoint& b) { return a.num * b.q < b.num * a.q; }

inline bool point_less_eq(const ArcPoint& a, const ArcPoint& b) { return !point_less(b, a); }

struct Arc {
    ArcPoint lo, hi;
};

} // namespace detail

/// Union of I_{a,q} = {theta : |theta q - a| <= halfwidth} over coprime
/// 1 <= a <= q <= q_max, wrapped onto the circle [0, 1).
inline FareyUnion farey_union(std::uint64_t q_max, const Rational& halfwidth,
                              std::uint64_t keep_limit = 100000) {
    if (q_max < 1 || q_max > kFareyMaxQ) throw GuardError("farey_union needs 1 <= q_max <= 10^4");
    if (halfwidth < 0) throw ParameterError("farey_union needs halfwidth >= 0");

    FareyUnion out;
    for (std::uint64_t q = 1; q <= q_max; ++q) {
        const std::uint64_t phi = detail::euler_phi(q);
        out.arcs += phi;
        out.subadditive_bound += Rational(from_u64(phi)) * 2 * halfwidth / Rational(from_u64(q));
    }
    if (halfwidth == 0) {
        out.measure = 0;
        if (keep_limit > 0) out.set = IntervalSet{};
        return out;
    }
    if (halfwidth * 2 >= 1) { // the q = 1 arc alone covers the circle
        out.measure = 1;
        out.components = 1;
        out.set = IntervalSet::single(0, 1);
        return out;
    }
    const Integer& N = halfwidth.get_num();
    const Integer& D = halfwidth.get_den();
    if (!(N < (Integer(1) << 31) && D < (Integer(1) << 31)))
        throw GuardError("farey_union halfwidth numerator/denominator must be below 2^31");
    const std::int64_t n = N.get_si(), d = D.get_si();

    // Centers a/q come out of the Farey next-term recurrence in increasing
    // order, so every future arc starts at or after (next center - halfwidth).
    // Pending arcs sit in a min-heap on their left end and are released once
    // nothing later can start before them. With halfwidth < 1/2 only the arc
    // at 1/1 wraps; its [0, halfwidth) piece is seeded first.
    auto cmp = [](const detail::Arc& x, const detail::Arc& y) { return detail::point_less(y.lo, x.lo); };
    std::priority_queue<detail::Arc, std::vector<detail::Arc>, decltype(cmp)> pending(cmp);

    std::vector<__int128> sum_by_q(q_max + 1, 0); // numerators over q*D
    bool have = false;
    detail::Arc cur{};
    auto emit = [&](const detail::Arc& a) {
        if (have && detail::point_less_eq(a.lo, cur.hi)) {
            if (detail::point_less(cur.hi, a.hi)) cur.hi = a.hi;
            return;
        }
        if (have) {
            sum_by_q[cur.hi.q] += cur.hi.num;
            sum_by_q[cur.lo.q] -= cur.lo.num;
            ++out.components;
            if (out.set && out.components <= keep_limit)
                out.set->add({make_rational(from_i64(static_cast<std::int64_t>(cur.lo.num)), from_i64(cur.lo.q * d)),
                              make_rational(from_i64(static_cast<std::int64_t>(cur.hi.num)), from_i64(cur.hi.q * d))});
        }
        cur = a;
        have = true;
    };
    if (keep_limit > 0) out.set = IntervalSet{};

    pending.push({{0, 1}, {n, 1}});
    std::int64_t a = 0, b = 1, c = 1, e = static_cast<std::int64_t>(q_max);
    while (c <= static_cast<std::int64_t>(q_max)) {
        // current center c/e
        const std::int64_t ca = c, cq = e;
        const detail::ArcPoint lo{static_cast<__int128>(ca) * d - n, cq};
        detail::ArcPoint hi{static_cast<__int128>(ca) * d + n, cq};
        if (ca == cq) hi = {d, 1}; // 1/1: right part wraps to the seeded piece
        // release arcs that start at or before (center - halfwidth)
        const detail::ArcPoint gate{static_cast<__int128>(ca) * d - static_cast<__int128>(n) * cq, cq};
        while (!pending.empty() && detail::point_less_eq(pending.top().lo, gate)) {
            emit(pending.top());
            pending.pop();
        }
        pending.push({lo, hi});
        // next Farey term
        const std::int64_t k = (static_cast<std::int64_t>(q_max) + b) / e;
        const std::int64_t na = c, nb = e, nc = k * c - a, ne = k * e - b;
        a = na;
        b = nb;
        c = nc;
        e = ne;
        if (ca == cq) break;
    }
    while (!pending.empty()) {
        emit(pending.top());
        pending.pop();
    }
    emit({{static_cast<__int128>(2) * d, 1}, {static_cast<__int128>(3) * d, 1}}); // flush sentinel

    Rational measure = 0;
    for (std::uint64_t q = 1; q <= q_max; ++q) {
        if (sum_by_q[q] == 0) continue;
        const __int128 v = sum_by_q[q];
        const bool neg = v < 0;
        const unsigned __int128 mag = static_cast<unsigned __int128>(neg ? -v : v);
        Integer big = from_u64(static_cast<std::uint64_t>(mag >> 64));
        big <<= 64;
        big += from_u64(static_cast<std::uint64_t>(mag));
        if (neg) big = -big;
        measure += make_rational(big, from_u64(q) * D);
    }
    out.measure = measure;
    if (out.components > keep_limit) out.set.reset();
    return out;
}

// ---------------------------------------------------------------------------
// Fractional-part hit counts
// ---------------------------------------------------------------------------

/// #{1 <= n <= y : {alpha n + beta} in [c1, c2)}, 0 <= c1 < c2 <= 1.
inline std::uint64_t count_fractional_in(const CertifiedReal& alpha, const CertifiedReal& beta,
                                         std::uint64_t y, const Rational& c1, const Rational& c2) {
    if (!(0 <= c1 && c1 < c2 && c2 <= 1)) throw ParameterError("need 0 <= c1 < c2 <= 1");
    const AffineFloor base(alpha, beta);
    const AffineFloor upper(alpha, beta.shifted(-c2));
    std::optional<AffineFloor> lower;
    if (c1 > 0) lower.emplace(alpha, beta.shifted(-c1));
    std::uint64_t hits = 0;
    for (std::uint64_t n = 1; n <= y; ++n) {
        const std::int64_t f = base.at(n);
        if (upper.at(n) >= f) continue;
        if (lower && lower->at(n) != f) continue;
        ++hits;
    }
    return hits;
}

inline std::uint64_t fractional_hits(const CertifiedReal& alpha, const CertifiedReal& beta, std::uint64_t y,
                                     const Rational& width) {
    if (!(width > 0 && width <= 1)) throw ParameterError("fractional_hits needs 0 < width <= 1");
    return count_fractional_in(alpha, beta, y, 0, width);
}

struct EquidistributionRow {
    std::uint64_t y = 0;
    Rational width;
    std::uint64_t count = 0;
    Rational expected;           // y * width
    Integer conv_q;              // best convergent denominator <= y
    Rational bound;              // q width + 2 y / q + 2
    bool bound_ok = false;
};

/// fractional_hits together with the explicit-constant discrepancy bound
/// |count - y w| <= q w + 2y/q + 2 for the best convergent q <= y.
inline EquidistributionRow equidistribution(const CertifiedReal& alpha, const CertifiedReal& beta,
                                            std::uint64_t y, const Rational& width) {
    EquidistributionRow row;
    row.y = y;
    row.width = width;
    row.count = fractional_hits(alpha, beta, y, width);
    row.expected = Rational(from_u64(y)) * width;
    const Integer Y = from_u64(y);
    ContinuedFraction cf;
    for (std::size_t terms = 8;; terms *= 2) {
        cf = continued_fraction(alpha, terms);
        if (cf.terminated || cf.convergents.back().k > Y || terms > 4096) break;
    }
    const Convergent* best = cf.best_below(Y);
    row.conv_q = best ? best->k : Integer(1);
    const Rational q(row.conv_q);
    row.bound = q * width + Rational(2) * Rational(Y) / q + 2;
    row.bound_ok = abs(Rational(from_u64(row.count)) - row.expected) <= row.bound;
    return row;
}

// ---------------------------------------------------------------------------
// Rational-approximation sandwich
// ---------------------------------------------------------------------------

struct SandwichReport {
    std::uint64_t lower = 0;   // {a n/q + beta} in [1/q, width - 1/q)
    std::uint64_t middle = 0;  // {alpha n + beta} in [0, width)
    std::uint64_t upper = 0;   // {a n/q + beta} in [0, width + 1/q) u [1 - 1/q, 1)
    bool lower_ok() const { return lower <= middle; }
    bool upper_ok() const { return middle <= upper; }
    bool holds() const { return lower_ok() && upper_ok(); }
};

/// Counts the three sets exactly. Requires gcd(a, q) = 1, a >= 1 and the
/// certified approximation |alpha - a/q| <= 1/q^2.
inline SandwichReport sandwich_check(const CertifiedReal& alpha, const CertifiedReal& beta, std::uint64_t y,
                                     const Rational& width, std::uint64_t a, std::uint64_t q) {
    if (!(width > 0 && width <= 1)) throw ParameterError("sandwich_check needs 0 < width <= 1");
    if (a < 1 || q < 1 || std::gcd(a, q) != 1) throw ParameterError("sandwich_check needs coprime a, q >= 1");
    const Rational aq = from_u64_ratio(a, q);
    const Rational tol = from_u64_ratio(1, q) / Rational(from_u64(q));
    if (alpha.compare(aq - tol) < 0 || alpha.compare(aq + tol) > 0)
        throw ParameterError("sandwich_check: |alpha - a/q| <= 1/q^2 does not hold for " +
                             ratio_string(aq));
    const CertifiedReal approx = CertifiedReal::rational(aq);
    const Rational inv_q = from_u64_ratio(1, q);

    SandwichReport r;
    r.middle = fractional_hits(alpha, beta, y, width);
    if (width - inv_q > inv_q) r.lower = count_fractional_in(approx, beta, y, inv_q, width - inv_q);
    if (width + inv_q >= 1 - inv_q) {
        r.upper = y;
    } else {
        r.upper = count_fractional_in(approx, beta, y, 0, width + inv_q) +
                  count_fractional_in(approx, beta, y, 1 - inv_q, 1);
    }
    return r;
}

} // namespace beatty
