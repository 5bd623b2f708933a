#pragma once
// Selberg upper-bound sieve for A = {n floor(alpha n + beta) : n <= x} with
// density g(p) = 2/p - 1/p^2 in the role of the G(z) summand.
//
//   G(z)       = sum over square-free m < z of g(m)
//   g_sieve(p) = g(p) / (1 + g(p))        local density the weights optimise for
//   lambda_d   = mu(d) prod_{p|d} (1 + g(p)) G_d(z/d) / G(z),   d < z
//   G_d(y)     = sum over square-free m < y, gcd(m, d) = 1 of g(m)
//
// so that sum lambda_d1 lambda_d2 g_sieve([d1, d2]) = 1/G(z) and lambda_1 = 1.
// The main density for the counts is h(d) = prod_{p|d} (2/p - 1/p^2).

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "certified_real.hpp"
#include "congruence_count.hpp"
#include "prime_engine.hpp"

namespace beatty {

inline constexpr std::uint64_t kMaxBigGZ = 100000;
inline constexpr std::uint64_t kMaxSieveZ = 200;

/// g(p) = (2p - 1)/p^2, extended multiplicatively (complete multiplicativity
/// on the prime factorisation with multiplicity).
inline Rational density_g(std::uint64_t m) {
    if (m < 1) throw ParameterError("density_g needs m >= 1");
    Rational r = 1;
    for (const auto& pp : factorize(m))
        for (unsigned e = 0; e < pp.exponent; ++e) r *= from_u64_ratio(2 * pp.prime - 1, pp.prime * pp.prime);
    return r;
}

/// h(d) = prod_{p|d} (2/p - 1/p^2) for square-free d.
inline Rational density_h(std::uint64_t d) {
    if (d < 1 || mobius(d) == 0) throw ParameterError("density_h needs square-free d, got " + std::to_string(d));
    Rational r = 1;
    for (std::uint64_t p : prime_factors(d)) r *= from_u64_ratio(2 * p - 1, p * p);
    return r;
}

/// prod_{p|d} g(p)/(1 + g(p)) = prod (2p - 1)/(p^2 + 2p - 1), square-free d.
inline Rational density_sieve(std::uint64_t d) {
    if (d < 1 || mobius(d) == 0) throw ParameterError("density_sieve needs square-free d, got " + std::to_string(d));
    Rational r = 1;
    for (std::uint64_t p : prime_factors(d)) r *= from_u64_ratio(2 * p - 1, p * p + 2 * p - 1);
    return r;
}

/// h(d) == (1/d) prod_{p|d} (2 - 1/p), checked exactly.
inline bool main_density_identity(std::uint64_t d) {
    Rational rhs = from_u64_ratio(1, d);
    for (std::uint64_t p : prime_factors(d)) rhs *= from_u64_ratio(2 * p - 1, p);
    return density_h(d) == rhs;
}

namespace detail {

// smallest prime factor for 0..n
inline std::vector<std::uint32_t> spf_table(std::uint64_t n) {
    std::vector<std::uint32_t> spf(n + 1, 0);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (std::uint64_t j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

// Square-free m in [1, n] with their prime factors, via the spf table.
template <typename Fn>
void for_each_squarefree(std::uint64_t n, const std::vector<std::uint32_t>& spf, Fn&& fn) {
    std::vector<std::uint64_t> factors;
    for (std::uint64_t m = 1; m <= n; ++m) {
        factors.clear();
        std::uint64_t r = m;
        bool square_free = true;
        while (r > 1) {
            const std::uint64_t p = spf[r];
            r /= p;
            if (r % p == 0) {
                square_free = false;
                break;
            }
            factors.push_back(p);
        }
        if (square_free) fn(m, factors);
    }
}

} // namespace detail

/// G(z) for 2 <= z <= 10^5, exact.
inline Rational big_g(std::uint64_t z) {
    if (z < 2) throw ParameterError("big_g needs z >= 2");
    if (z > kMaxBigGZ) throw ParameterError("big_g limited to z <= " + std::to_string(kMaxBigGZ));
    const auto spf = detail::spf_table(z);
    // common denominator prod_{p<z} p^2; each term is prod(2p - 1) * D / m^2
    Integer D = 1;
    for (std::uint64_t p = 2; p < z; ++p)
        if (spf[p] == p) D *= from_u64(p * p);
    Integer sum = 0, term;
    detail::for_each_squarefree(z - 1, spf, [&](std::uint64_t m, const std::vector<std::uint64_t>& ps) {
        Integer weight = 1;
        for (std::uint64_t p : ps) weight *= from_u64(2 * p - 1);
        mpz_divexact(term.get_mpz_t(), D.get_mpz_t(), Integer(from_u64(m) * from_u64(m)).get_mpz_t());
        sum += term * weight;
    });
    return make_rational(sum, D);
}

/// prod_{p<z} (1 - g(p))^{-1} = prod_{p<z} p^2/(p - 1)^2, z >= 3.
inline Rational product_lower(std::uint64_t z) {
    if (z < 3) throw ParameterError("product_lower needs z >= 3");
    if (z > kMaxBigGZ) throw ParameterError("product_lower limited to z <= " + std::to_string(kMaxBigGZ));
    Integer num = 1, den = 1;
    for (std::uint64_t p : detail::small_primes(z - 1)) {
        num *= from_u64(p * p);
        den *= from_u64((p - 1) * (p - 1));
    }
    return make_rational(num, den);
}

class SieveContext {
public:
    struct Weight {
        std::uint64_t d;
        std::uint64_t mask; // bit i set when primes()[i] divides d
        Rational lambda;
    };

    explicit SieveContext(std::uint64_t z) : z_(z) {
        if (z < 2) throw ParameterError("sieve needs z >= 2");
        if (z > kMaxSieveZ) throw GuardError("sieve weights limited to z <= " + std::to_string(kMaxSieveZ));
        for (std::uint64_t p = 2; p < z; ++p)
            if (is_prime(p)) primes_.push_back(p);
        const auto spf = detail::spf_table(z);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> support; // (d, mask)
        std::vector<Rational> g_of;                                    // g(d) for the support
        detail::for_each_squarefree(z - 1, spf, [&](std::uint64_t m, const std::vector<std::uint64_t>& ps) {
            support.emplace_back(m, mask_of(ps));
            Rational g = 1;
            for (std::uint64_t p : ps) g *= from_u64_ratio(2 * p - 1, p * p);
            g_of.push_back(g);
        });
        G_ = 0;
        for (const auto& g : g_of) G_ += g;
        for (std::size_t i = 0; i < support.size(); ++i) {
            const auto [d, dmask] = support[i];
            Rational Gd = 0; // m d < z, gcd(m, d) = 1
            for (std::size_t j = 0; j < support.size() && support[j].first * d < z; ++j)
                if ((support[j].second & dmask) == 0) Gd += g_of[j];
            Rational lam = Gd / G_;
            for (std::size_t b = 0; b < primes_.size(); ++b)
                if (dmask >> b & 1) lam *= 1 + from_u64_ratio(2 * primes_[b] - 1, primes_[b] * primes_[b]);
            if (mobius(d) < 0) lam = -lam;
            weights_.push_back({d, dmask, lam});
        }
    }

    std::uint64_t z() const { return z_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    const Rational& G() const { return G_; }
    const std::vector<Weight>& weights() const { return weights_; }

    /// P(z) as a product; exceeds 64 bits for z > 53.
    Integer primorial() const {
        Integer P = 1;
        for (auto p : primes_) P *= from_u64(p);
        return P;
    }

    const Rational& lambda(std::uint64_t d) const {
        for (const auto& w : weights_)
            if (w.d == d) return w.lambda;
        static const Rational zero = 0;
        return zero;
    }

    /// Prime-divisor mask of n * f restricted to primes < z.
    std::uint64_t sieve_mask(std::uint64_t n, std::int64_t f) const {
        std::uint64_t m = 0;
        for (std::size_t b = 0; b < primes_.size(); ++b) {
            const std::uint64_t p = primes_[b];
            if (n % p == 0 || detail::mod_floor(f, p) == 0) m |= std::uint64_t{1} << b;
        }
        return m;
    }

    std::uint64_t mask_of(const std::vector<std::uint64_t>& ps) const {
        std::uint64_t m = 0;
        for (std::uint64_t p : ps)
            for (std::size_t b = 0; b < primes_.size(); ++b)
                if (primes_[b] == p) m |= std::uint64_t{1} << b;
        return m;
    }

    std::uint64_t value_of(std::uint64_t mask) const {
        std::uint64_t v = 1;
        for (std::size_t b = 0; b < primes_.size(); ++b)
            if (mask >> b & 1) v *= primes_[b];
        return v;
    }

private:
    std::uint64_t z_;
    std::vector<std::uint64_t> primes_;
    Rational G_;
    std::vector<Weight> weights_;
};

/// sum_{d1, d2} lambda_d1 lambda_d2 g_sieve([d1, d2]); equals 1/G(z).
inline Rational quadratic_form_value(const SieveContext& ctx) {
    Rational total = 0;
    for (const auto& a : ctx.weights())
        for (const auto& b : ctx.weights())
            total += a.lambda * b.lambda * density_sieve(ctx.value_of(a.mask | b.mask));
    return total;
}

namespace detail {

// occurrences of each sieve mask over n <= x
inline std::unordered_map<std::uint64_t, std::uint64_t> mask_tally(const SieveContext& ctx, const AffineFloor& floors,
                                                                   std::uint64_t x) {
    std::unordered_map<std::uint64_t, std::uint64_t> tally;
    for (std::uint64_t n = 1; n <= x; ++n) ++tally[ctx.sieve_mask(n, floors.at(n))];
    return tally;
}

inline void check_sieve_range(std::uint64_t x, std::uint64_t z) {
    if (x < 1) throw ParameterError("sieve needs x >= 1");
    if (z > x) throw ParameterError("sieve needs z <= x");
}

} // namespace detail

/// |{n <= x : gcd(n floor(alpha n + beta), P(z)) = 1}|
inline std::uint64_t sifted_count(const CertifiedReal& alpha, const CertifiedReal& beta, std::uint64_t x,
                                  std::uint64_t z) {
    detail::check_sieve_range(x, z);
    if (z < 2) throw ParameterError("sieve needs z >= 2");
    const AffineFloor floors(alpha, beta);
    const auto primes = detail::small_primes(z - 1);
    std::uint64_t kept = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        const std::int64_t f = floors.at(n);
        bool coprime = true;
        for (std::uint64_t p : primes) {
            if (n % p == 0 || detail::mod_floor(f, p) == 0) {
                coprime = false;
                break;
            }
        }
        if (coprime) ++kept;
    }
    return kept;
}

struct RemainderTerm {
    std::uint64_t m = 0;       // [d1, d2]
    Rational coefficient;      // sum of lambda_d1 lambda_d2 over pairs with [d1, d2] = m
    std::uint64_t count = 0;   // |A_m|
    Rational remainder;        // |A_m| - x h(m)
};

struct SelbergBound {
    std::uint64_t x = 0, z = 0;
    Rational G;
    std::uint64_t sifted = 0;
    Rational quadratic_form;   // sum_n (sum_{d | a_n, d < z} lambda_d)^2
    Rational main;             // x / G(z)
    Rational shift;            // x sum c_m (h(m) - g_sieve(m))
    Rational remainder;        // sum c_m r_m
    std::vector<RemainderTerm> ledger;
    Rational omega_control;    // sum_{d < z^2, d | P(z)} 3^omega(d) / d

    Rational expanded() const { return main + shift + remainder; }
    bool forms_agree() const { return quadratic_form == expanded(); }
    bool inequality_holds() const { return Rational(from_u64(sifted)) <= quadratic_form; }
    bool ok() const { return forms_agree() && inequality_holds(); }
};

inline SelbergBound selberg_upper_bound(const CertifiedReal& alpha, const CertifiedReal& beta, std::uint64_t x,
                                        std::uint64_t z, unsigned threads = 1) {
    detail::check_sieve_range(x, z);
    const SieveContext ctx(z);
    const AffineFloor floors(alpha, beta);
    SelbergBound out;
    out.x = x;
    out.z = z;
    out.G = ctx.G();

    const auto tally = detail::mask_tally(ctx, floors, x);
    if (auto it = tally.find(0); it != tally.end()) out.sifted = it->second;

    // pointwise form
    std::map<std::uint64_t, std::uint64_t> ordered(tally.begin(), tally.end());
    out.quadratic_form = 0;
    for (const auto& [mask, count] : ordered) {
        Rational s = 0;
        for (const auto& w : ctx.weights())
            if ((w.mask & mask) == w.mask) s += w.lambda;
        out.quadratic_form += s * s * Rational(from_u64(count));
    }

    // expanded form through |A_m| from the congruence counter
    std::map<std::uint64_t, Rational> coeff;
    for (const auto& a : ctx.weights())
        for (const auto& b : ctx.weights()) coeff[ctx.value_of(a.mask | b.mask)] += a.lambda * b.lambda;
    std::vector<std::uint64_t> moduli;
    for (const auto& [m, c] : coeff) moduli.push_back(m);
    const auto counts = count_direct_many(floors, x, moduli, threads);

    const Rational X(from_u64(x));
    out.main = X / ctx.G();
    out.shift = 0;
    out.remainder = 0;
    std::size_t i = 0;
    for (const auto& [m, c] : coeff) {
        RemainderTerm t;
        t.m = m;
        t.coefficient = c;
        t.count = counts[i++];
        const Rational h = density_h(m);
        t.remainder = Rational(from_u64(t.count)) - X * h;
        out.shift += X * c * (h - density_sieve(m));
        out.remainder += c * t.remainder;
        out.ledger.push_back(std::move(t));
    }

    const std::uint64_t z2 = z * z;
    out.omega_control = 0;
    for (std::uint64_t d = 1; d < z2; ++d) {
        if (mobius(d) == 0) continue;
        const auto ps = prime_factors(d);
        if (!ps.empty() && ps.back() >= z) continue;
        Integer three = 1;
        for (std::size_t k = 0; k < ps.size(); ++k) three *= 3;
        out.omega_control += make_rational(three, from_u64(d));
    }
    return out;
}

/// Smallest integer p with p >= z + (z + 1 - beta)/alpha, certified.
inline Integer containment_threshold(const CertifiedReal& alpha, const CertifiedReal& beta, std::uint64_t z) {
    detail::require_positive(alpha);
    const Rational Z(from_u64(z));
    const auto* qa = alpha.quadratic_value();
    const auto* qb = beta.quadratic_value();
    if (qa && qb && QuadraticNumber::common_field(*qa, *qb))
        return (QuadraticNumber(Z) + (QuadraticNumber(Z + 1) - *qb) / *qa).ceil();
    for (unsigned bits = kInitialPrecisionBits; bits <= kMaxPrecisionBits; bits *= 2) {
        const Enclosure a = alpha.enclosure(bits), b = beta.enclosure(bits);
        if (a.lo <= 0) continue;
        Rational lo, hi;
        bool first = true;
        for (const Rational* av : {&a.lo, &a.hi})
            for (const Rational* bv : {&b.lo, &b.hi}) {
                const Rational v = Z + (Z + 1 - *bv) / *av;
                if (first || v < lo) lo = v;
                if (first || v > hi) hi = v;
                first = false;
            }
        if (ceil_of(lo) == ceil_of(hi)) return ceil_of(lo);
    }
    throw CertificationError("containment threshold not resolved for z = " + std::to_string(z));
}

struct PairBoundReport {
    std::uint64_t x = 0, z = 0;
    Integer threshold;
    std::uint64_t pairs = 0;             // pi*(x)
    std::uint64_t below_threshold = 0;   // pairs with p < threshold
    std::uint64_t containment_failures = 0;
    std::uint64_t sifted = 0;
    Rational quadratic_form;
    double pair_statistic = 0;           // pairs (log x)^2 / x
    double bound_statistic = 0;          // Q (log x)^2 / x

    bool containment_ok() const { return containment_failures == 0; }
    bool count_ok() const { return pairs <= sifted + below_threshold; }
};

/// Default z = ceil(x^(1/8)).
inline std::uint64_t default_sieve_z(std::uint64_t x) {
    std::uint64_t z = 1;
    while (true) {
        const auto next = static_cast<unsigned __int128>(z);
        if (next * next * next * next * next * next * next * next >= x) return std::max<std::uint64_t>(z, 2);
        ++z;
    }
}

inline PairBoundReport pair_bound_check(const CertifiedReal& alpha, const CertifiedReal& beta, std::uint64_t x,
                                        const PrimeTable& primes, std::uint64_t z = 0) {
    if (z == 0) z = default_sieve_z(x);
    detail::check_sieve_range(x, z);
    if (x < 3) throw ParameterError("pair_bound_check needs x >= 3");
    const SieveContext ctx(z);
    const AffineFloor floors(alpha, beta);
    PairBoundReport r;
    r.x = x;
    r.z = z;
    r.threshold = containment_threshold(alpha, beta, z);
    for (const auto& pq : beatty_pair_list(floors, x, primes)) {
        ++r.pairs;
        if (from_u64(pq.p) < r.threshold) {
            ++r.below_threshold;
            continue;
        }
        if (ctx.sieve_mask(pq.p, static_cast<std::int64_t>(pq.q)) != 0) ++r.containment_failures;
    }
    const auto bound = selberg_upper_bound(alpha, beta, x, z);
    r.sifted = bound.sifted;
    r.quadratic_form = bound.quadratic_form;
    r.pair_statistic = normalized_statistic(static_cast<double>(r.pairs), x);
    r.bound_statistic = normalized_statistic(r.quadratic_form.get_d(), x);
    return r;
}

} // namespace beatty
