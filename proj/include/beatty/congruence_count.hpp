#pragma once
// congruence_count.hpp
//
// Counts |A_d(x; alpha)| = #{1 <= n <= x : n * floor(alpha n + beta) = 0 mod d}
// for square-free d, three ways:
//
//   count_direct   loop over n
//   count_mobius   sum over s | d, t | s of mu(t) * #{n <= x/s :
//                  floor(alpha s n + beta) = 0 mod dt/s}              (paper form)
//             or   sum over s | d, t | d/s of mu(t) * #{m <= x/(st) :
//                  floor(alpha s t m + beta) = 0 mod d/s}             (alternative)
//
// The two Mobius forms are the same sum reindexed by (s, t) <-> (s/t, t).
// The inner counts can be taken from floors or from the equivalent
// fractional-part test {alpha n s^2/(td) + beta s/(td)} in [0, s/(td)).

#include <cstdint>
#include <span>
#include <vector>

#include "certified_real.hpp"
#include "diophantine.hpp"
#include "parallel.hpp"
#include "prime_engine.hpp"

namespace beatty {

struct CongruenceQuery {
    CertifiedReal alpha;
    CertifiedReal beta;
    std::uint64_t x = 1;
    std::uint64_t d = 1;

    void validate() const {
        if (x < 1) throw ParameterError("congruence query needs x >= 1");
        if (d < 1 || mobius(d) == 0)
            throw ParameterError("congruence query needs square-free d >= 1, got " + std::to_string(d));
    }
};

enum class MobiusForm { paper, alternative };
enum class InnerPath { floor, fractional };

namespace detail {

inline std::uint64_t mod_floor(std::int64_t f, std::uint64_t m) {
    const std::int64_t r = f % static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

inline bool product_divisible(std::uint64_t n, std::int64_t f, std::uint64_t d) {
    const auto a = static_cast<unsigned __int128>(n % d);
    return (a * mod_floor(f, d)) % d == 0;
}

// #{1 <= n <= limit : floor(alpha n + beta) = 0 mod modulus}
inline std::uint64_t count_floor_multiples(const CertifiedReal& alpha, const CertifiedReal& beta,
                                           std::uint64_t limit, std::uint64_t modulus, InnerPath path) {
    if (limit == 0) return 0;
    if (path == InnerPath::fractional) {
        // floor(v) = 0 mod M  <=>  {v/M} in [0, 1/M)
        const Rational inv = from_u64_ratio(1, modulus);
        return fractional_hits(alpha.scaled(inv), beta.scaled(inv), limit, inv);
    }
    const AffineFloor floors(alpha, beta);
    std::uint64_t hits = 0;
    for (std::uint64_t n = 1; n <= limit; ++n)
        if (mod_floor(floors.at(n), modulus) == 0) ++hits;
    return hits;
}

} // namespace detail

inline std::uint64_t count_direct(const CongruenceQuery& q) {
    q.validate();
    const AffineFloor floors(q.alpha, q.beta);
    std::uint64_t hits = 0;
    for (std::uint64_t n = 1; n <= q.x; ++n)
        if (detail::product_divisible(n, floors.at(n), q.d)) ++hits;
    return hits;
}

/// Counts for several moduli in one pass over n (floors evaluated once).
inline std::vector<std::uint64_t> count_direct_many(const AffineFloor& floors, std::uint64_t x,
                                                    std::span<const std::uint64_t> moduli,
                                                    unsigned threads = 1) {
    const unsigned chunks = std::max(1u, threads);
    std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(moduli.size(), 0));
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::uint64_t lo = 1 + x * c / chunks, hi = x * (c + 1) / chunks;
        auto& out = partial[c];
        for (std::uint64_t n = lo; n <= hi; ++n) {
            const std::int64_t f = floors.at(n);
            for (std::size_t i = 0; i < moduli.size(); ++i)
                if (detail::product_divisible(n, f, moduli[i])) ++out[i];
        }
    });
    std::vector<std::uint64_t> total(moduli.size(), 0);
    for (const auto& p : partial)
        for (std::size_t i = 0; i < p.size(); ++i) total[i] += p[i];
    return total;
}

inline std::int64_t count_mobius(const CongruenceQuery& q, MobiusForm form = MobiusForm::paper,
                                 InnerPath path = InnerPath::floor) {
    q.validate();
    std::int64_t total = 0;
    for (std::uint64_t s : squarefree_divisors(q.d)) {
        if (form == MobiusForm::paper) {
            const CertifiedReal alpha_s = q.alpha.scaled(Rational(from_u64(s)));
            for (std::uint64_t t : squarefree_divisors(s)) {
                const std::uint64_t modulus = q.d / s * t;
                const auto c = detail::count_floor_multiples(alpha_s, q.beta, q.x / s, modulus, path);
                total += mobius(t) * static_cast<std::int64_t>(c);
            }
        } else {
            for (std::uint64_t t : squarefree_divisors(q.d / s)) {
                const CertifiedReal alpha_st = q.alpha.scaled(Rational(from_u64(s * t)));
                const auto c = detail::count_floor_multiples(alpha_st, q.beta, q.x / (s * t), q.d / s, path);
                total += mobius(t) * static_cast<std::int64_t>(c);
            }
        }
    }
    return total;
}

/// (x/d) prod_{p | d} (2 - 1/p), exact.
inline Rational main_term(std::uint64_t x, std::uint64_t d) {
    if (d < 1 || mobius(d) == 0) throw ParameterError("main_term needs square-free d, got " + std::to_string(d));
    Rational r = from_u64_ratio(x, d);
    for (std::uint64_t p : prime_factors(d)) r *= from_u64_ratio(2 * p - 1, p);
    return r;
}

struct DeviationRow {
    std::uint64_t d = 0;
    std::uint64_t count = 0;
    Rational main;
    Rational abs_error;
    double normalized_error = 0; // abs_error * d / x
};

/// One row per square-free d <= d_max (requires d_max^3 <= x).
inline std::vector<DeviationRow> deviation_report(const CertifiedReal& alpha, const CertifiedReal& beta,
                                                  std::uint64_t x, std::uint64_t d_max, unsigned threads = 1) {
    if (x < 1 || d_max < 1) throw ParameterError("deviation_report needs x, d_max >= 1");
    if (static_cast<unsigned __int128>(d_max) * d_max * d_max > x)
        throw GuardError("deviation_report needs d_max <= x^(1/3)");
    std::vector<std::uint64_t> moduli;
    for (std::uint64_t d = 1; d <= d_max; ++d)
        if (mobius(d) != 0) moduli.push_back(d);
    const auto counts = count_direct_many(AffineFloor(alpha, beta), x, moduli, threads);
    std::vector<DeviationRow> rows;
    rows.reserve(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        DeviationRow r;
        r.d = moduli[i];
        r.count = counts[i];
        r.main = main_term(x, r.d);
        r.abs_error = abs(Rational(from_u64(r.count)) - r.main);
        r.normalized_error = to_double(r.abs_error * Rational(from_u64(r.d)) / Rational(from_u64(x)));
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace beatty
