#pragma once
// prime_engine.hpp
// Segmented odd-only sieve of Eratosthenes, deterministic 64-bit
// Miller-Rabin, and the small multiplicative helpers (mu, omega,
// square-free divisors) used by the congruence and sieve modules.
//
// Encoding of the bit array:
//   bit index i  ->  odd number 2*i + 3
//   odd n        ->  bit index (n - 3) / 2

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace beatty {

inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 40;

struct SieveOptions {
    std::uint64_t segment_size = std::uint64_t{1} << 20; // odd entries per segment
    unsigned threads = 1;
};

namespace detail {

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Plain byte sieve for the base primes up to sqrt(limit).
inline std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

} // namespace detail

class PrimeTable {
public:
    PrimeTable() = default;

    std::uint64_t limit() const noexcept { return limit_; }

    /// Exact membership for 0 <= n <= limit(); false above the limit.
    bool contains(std::uint64_t n) const noexcept {
        if (n < 2 || n > limit_) return false;
        if (n == 2) return true;
        if ((n & 1) == 0) return false;
        const std::uint64_t i = (n - 3) / 2;
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    std::span<const std::uint64_t> primes() const noexcept { return primes_; }
    std::size_t count() const noexcept { return primes_.size(); }

    /// pi(x) for x <= limit().
    std::size_t pi(std::uint64_t x) const {
        return static_cast<std::size_t>(
            std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
    }

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    friend PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& opts);

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> primes_;
};

/// Builds the table one segment at a time; segments are word-aligned so
/// worker threads never share a word.
inline PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& opts = {}) {
    if (limit < 2 || limit > kMaxSieveLimit)
        throw ParameterError("sieve limit must lie in [2, 2^40]");
    if (opts.segment_size == 0) throw ParameterError("segment size must be positive");

    PrimeTable t;
    t.limit_ = limit;
    const std::uint64_t bits = limit >= 3 ? (limit - 3) / 2 + 1 : 0;
    t.words_.assign((bits + 63) / 64, ~std::uint64_t{0});
    if (bits % 64 != 0 && !t.words_.empty())
        t.words_.back() = (std::uint64_t{1} << (bits % 64)) - 1;

    const auto base = detail::small_primes(detail::isqrt_u64(limit));
    const std::uint64_t seg_words = std::max<std::uint64_t>(1, (opts.segment_size + 63) / 64);
    const std::uint64_t nsegs = (t.words_.size() + seg_words - 1) / seg_words;

    auto fill = [&](std::uint64_t first_seg, std::uint64_t stride) {
        for (std::uint64_t s = first_seg; s < nsegs; s += stride) {
            const std::uint64_t w0 = s * seg_words;
            const std::uint64_t w1 = std::min<std::uint64_t>(t.words_.size(), w0 + seg_words);
            const std::uint64_t i0 = w0 * 64, i1 = std::min(bits, w1 * 64);
            for (std::uint32_t p : base) {
                if (p == 2) continue;
                // first odd multiple of p that is >= max(p*p, 2*i0 + 3)
                const std::uint64_t lo = 2 * i0 + 3;
                std::uint64_t m = std::max<std::uint64_t>(std::uint64_t{p} * p, (lo + p - 1) / p * p);
                if ((m & 1) == 0) m += p;
                for (std::uint64_t i = (m - 3) / 2; i < i1; i += p)
                    t.words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(nsegs)));
    if (workers == 1) {
        fill(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(fill, w, workers);
    }

    t.primes_.push_back(2);
    for (std::uint64_t w = 0; w < t.words_.size(); ++w) {
        std::uint64_t word = t.words_[w];
        while (word) {
            const int b = std::countr_zero(word);
            t.primes_.push_back(2 * (w * 64 + b) + 3);
            word &= word - 1;
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Deterministic Miller-Rabin
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

} // namespace detail

/// Exact for every 64-bit input (Sinclair's seven-base witness set).
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 37 * 37) return true;

    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }

    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        a %= n;
        if (a == 0) continue;
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Factorization helpers
// ---------------------------------------------------------------------------

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    bool operator==(const PrimePower&) const = default;
};

/// Shared trial-division table (primes up to 2^20), built on first use.
inline const PrimeTable& default_trial_table() {
    static const PrimeTable table = sieve_primes(std::uint64_t{1} << 20);
    return table;
}

/// Trial division by the table's primes. A leftover cofactor is accepted
/// only if it is certified prime, either by size (below limit^2) or by
/// Miller-Rabin; otherwise the input is out of reach and rejected.
inline std::vector<PrimePower> factorize(std::uint64_t n, const PrimeTable& table) {
    if (n == 0) throw ParameterError("cannot factor 0");
    std::vector<PrimePower> out;
    for (std::uint64_t p : table.primes()) {
        if (static_cast<unsigned __int128>(p) * p > n) break;
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.push_back({p, e});
    }
    if (n > 1) {
        const std::uint64_t lim = table.limit();
        const bool below_square = static_cast<unsigned __int128>(lim) * lim >= n;
        if (!below_square && !is_prime(n))
            throw GuardError("factorization needs primes beyond the trial table");
        out.push_back({n, 1});
    }
    return out;
}

inline std::vector<PrimePower> factorize(std::uint64_t n) {
    return factorize(n, default_trial_table());
}

inline bool is_squarefree(std::uint64_t n) {
    for (const auto& pp : factorize(n))
        if (pp.exponent > 1) return false;
    return true;
}

inline int mobius(std::uint64_t n) {
    if (n < 1 || n > (std::uint64_t{1} << 63)) throw ParameterError("mobius: n out of range");
    int mu = 1;
    for (const auto& pp : factorize(n)) {
        if (pp.exponent > 1) return 0;
        mu = -mu;
    }
    return mu;
}

inline int omega(std::uint64_t n) {
    if (n < 1 || n > (std::uint64_t{1} << 63)) throw ParameterError("omega: n out of range");
    return static_cast<int>(factorize(n).size());
}

/// Distinct prime factors of n in ascending order.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (const auto& pp : factorize(n)) ps.push_back(pp.prime);
    return ps;
}

/// All divisors of a square-free d, ascending.
inline std::vector<std::uint64_t> squarefree_divisors(std::uint64_t d) {
    if (d < 1) throw ParameterError("squarefree_divisors: d must be >= 1");
    const auto fac = factorize(d);
    std::vector<std::uint64_t> divs{1};
    for (const auto& pp : fac) {
        if (pp.exponent > 1)
            throw ParameterError("squarefree_divisors: " + std::to_string(d) + " is not square-free");
        const std::size_t k = divs.size();
        for (std::size_t i = 0; i < k; ++i) divs.push_back(divs[i] * pp.prime);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace beatty
