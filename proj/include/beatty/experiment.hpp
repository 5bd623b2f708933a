#pragma once
// Experiments over alpha: the exact integral of pi*_{alpha,beta}(x) over an
// alpha-interval, its Monte Carlo cross-check, statistic scans and the
// empirical exceptional fraction.
//
// The integral uses
//   int_{c1}^{c2} pi*(x) dalpha
//     = sum_{p <= x} sum_{q prime, c1 p + beta - 1 < q <= c2 p + beta}
//         mes([(q - beta)/p, (q + 1 - beta)/p) n [c1, c2]).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "certified_real.hpp"
#include "interval_set.hpp"
#include "parallel.hpp"
#include "prime_engine.hpp"

namespace beatty {

struct ExperimentConfig {
    Rational c1 = 1, c2 = 2;
    CertifiedReal beta = CertifiedReal::rational(0);
    std::vector<std::uint64_t> x_grid;
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    Rational delta = make_rational(1, 10);
    std::vector<std::string> pins; // alpha specs always included in scans
    unsigned threads = 1;

    void validate() const {
        if (!(0 < c1 && c1 <= c2)) throw ParameterError("experiment needs 0 < c1 <= c2");
        if (!std::is_sorted(x_grid.begin(), x_grid.end())) throw ParameterError("x grid must be ascending");
        if (samples < 1) throw ParameterError("experiment needs samples >= 1");
    }
};

struct ScanRow {
    std::string alpha_spec;
    std::uint64_t x = 0;
    std::uint64_t pair_count = 0;
    double statistic = 0;
};

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// Generator for stream `index` under `seed`; independent of evaluation order.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

/// c1 + (c2 - c1) U with U a uniform 128-bit dyadic in [0, 1).
inline Rational sample_alpha(std::mt19937_64& rng, const Rational& c1, const Rational& c2) {
    const std::uint64_t hi = rng(), lo = rng();
    Integer u = from_u64(hi);
    u <<= 64;
    u += from_u64(lo);
    Integer den = 1;
    den <<= 128;
    return c1 + (c2 - c1) * make_rational(u, den);
}

// ---------------------------------------------------------------------------
// Exact integral
// ---------------------------------------------------------------------------

/// [(q - beta)/p, (q + 1 - beta)/p) n [c1, c2).
inline IntervalSet j_interval(std::uint64_t p, std::uint64_t q, const Rational& beta, const Rational& c1,
                              const Rational& c2) {
    const Rational P(from_u64(p)), Q(from_u64(q));
    const Rational lo = (Q - beta) / P, hi = (Q + 1 - beta) / P;
    return IntervalSet::single(std::max(lo, c1), std::min(hi, c2));
}

namespace detail {

// Pairwise sum so the rational denominators grow evenly.
inline Rational tree_sum(std::vector<Rational>& terms, std::size_t lo, std::size_t hi) {
    if (hi - lo == 0) return 0;
    if (hi - lo == 1) return terms[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return tree_sum(terms, lo, mid) + tree_sum(terms, mid, hi);
}

inline PrimeTable integral_table(const Rational& c2, const Rational& beta, std::uint64_t x) {
    const Integer top = floor_of(c2 * Rational(from_u64(x)) + beta) + 1;
    const std::uint64_t limit = std::max<std::uint64_t>({x, 2, top > 2 ? top.get_ui() : 2});
    return sieve_primes(limit);
}

inline std::uint64_t primes_in(const PrimeTable& t, const Integer& lo, const Integer& hi) {
    if (hi < lo || hi < 2) return 0;
    const std::uint64_t h = hi.get_ui();
    const std::uint64_t l = lo < 2 ? 0 : Integer(lo - 1).get_ui();
    return t.pi(h) - t.pi(l);
}

// Contribution of the prime p for rational beta.
inline Rational integral_term(std::uint64_t p, const Rational& beta, const Rational& c1, const Rational& c2,
                              const PrimeTable& primes) {
    const Rational P(from_u64(p));
    // all integers q in (c1 p + beta - 1, c2 p + beta]
    const Integer q_first = floor_of(c1 * P + beta - 1) + 1;
    const Integer q_last = floor_of(c2 * P + beta);
    if (q_last < q_first) return 0;
    // fully inside: q >= c1 p + beta and q + 1 <= c2 p + beta
    const Integer in_first = ceil_of(c1 * P + beta);
    const Integer in_last = floor_of(c2 * P + beta - 1);
    Rational sum = 0;
    if (in_first <= in_last) sum += Rational(from_u64(primes_in(primes, in_first, in_last))) / P;
    for (Integer q = q_first; q <= q_last; ++q) {
        if (q >= in_first && q <= in_last) {
            q = in_last; // skip the interior block
            continue;
        }
        if (q < 2 || !primes.contains(q.get_ui())) continue;
        sum += j_interval(p, q.get_ui(), beta, c1, c2).measure();
    }
    return sum;
}

} // namespace detail

struct IntegralValue {
    Rational value;            // exact for rational beta, else the midpoint estimate
    Rational halfwidth = 0;    // enclosure half-width (0 when exact)
    bool exact() const { return halfwidth == 0; }
};

/// Exact integral for rational beta; irrational beta gets a certified enclosure.
inline IntegralValue integral_exact(const Rational& c1, const Rational& c2, const CertifiedReal& beta,
                                    std::uint64_t x) {
    if (!(0 < c1 && c1 <= c2)) throw ParameterError("integral needs 0 < c1 <= c2");
    if (x > kMaxSieveLimit / 4) throw GuardError("integral x beyond prime-table range");
    IntegralValue out;
    if (c1 == c2 || x < 2) return out;
    Rational b;
    Rational slack = 0;
    if (beta.is_rational()) {
        b = beta.rational_value();
    } else {
        // the integral moves by at most 2 |dbeta| / p per prime p
        const Enclosure e = beta.enclosure(kInitialPrecisionBits);
        b = (e.lo + e.hi) / 2;
        slack = (e.hi - e.lo) / 2;
    }
    const PrimeTable primes = detail::integral_table(c2, b + 1, x);
    std::vector<Rational> terms;
    Rational recip = 0;
    for (std::uint64_t p : primes.primes()) {
        if (p > x) break;
        terms.push_back(detail::integral_term(p, b, c1, c2, primes));
        if (slack != 0) recip += from_u64_ratio(1, p);
    }
    out.value = detail::tree_sum(terms, 0, terms.size());
    out.halfwidth = 2 * slack * recip;
    return out;
}

/// Same sum assembled per p as the measure of the union of its J intervals
/// (rational beta only).
inline Rational integral_by_intervals(const Rational& c1, const Rational& c2, const Rational& beta,
                                      std::uint64_t x) {
    if (!(0 < c1 && c1 <= c2)) throw ParameterError("integral needs 0 < c1 <= c2");
    if (c1 == c2 || x < 2) return 0;
    const PrimeTable primes = detail::integral_table(c2, beta + 1, x);
    Rational total = 0;
    for (std::uint64_t p : primes.primes()) {
        if (p > x) break;
        const Rational P(from_u64(p));
        const Integer q_first = floor_of(c1 * P + beta - 1) + 1;
        const Integer q_last = floor_of(c2 * P + beta);
        IntervalSet u;
        for (Integer q = std::max(q_first, Integer(2)); q <= q_last; ++q)
            if (primes.contains(q.get_ui())) {
                const IntervalSet j = j_interval(p, q.get_ui(), beta, c1, c2);
                for (const auto& part : j.parts()) u.add(part);
            }
        total += u.measure();
    }
    return total;
}

struct MonteCarloEstimate {
    double mean = 0;   // already multiplied by c2 - c1
    double stderr_ = 0;
};

/// Mean of pi*_{alpha,beta}(x) over seeded uniform alpha in (c1, c2), times c2 - c1.
inline MonteCarloEstimate integral_monte_carlo(const ExperimentConfig& cfg, std::uint64_t x) {
    cfg.validate();
    if (cfg.samples < 100) throw ParameterError("monte carlo needs at least 100 samples");
    const Integer top = floor_of(cfg.c2 * Rational(from_u64(x))) + 1;
    const Enclosure be = cfg.beta.enclosure(kInitialPrecisionBits);
    const Integer btop = ceil_of(be.hi);
    const std::uint64_t limit = std::max<std::uint64_t>(
        {x, 2, Integer(top + std::max(btop, Integer(0))).get_ui()});
    const PrimeTable primes = sieve_primes(limit);
    std::vector<std::uint64_t> counts(cfg.samples);
    parallel_for(cfg.samples, cfg.threads, [&](std::size_t i) {
        auto rng = stream_rng(cfg.seed, i);
        const auto alpha = CertifiedReal::rational(sample_alpha(rng, cfg.c1, cfg.c2));
        counts[i] = beatty_prime_pairs(alpha, cfg.beta, x, primes).count;
    });
    const double n = static_cast<double>(cfg.samples);
    double mean = 0;
    for (auto c : counts) mean += static_cast<double>(c);
    mean /= n;
    double var = 0;
    for (auto c : counts) var += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
    var /= n - 1;
    const double width = to_double(cfg.c2 - cfg.c1);
    return {mean * width, width * std::sqrt(var / n)};
}

struct LowerBoundRatio {
    double ratio = 0;       // integral (log x)^2 / (x (c2 - c1))
    double comparison = 0;  // sum_{p <= x} 1/log p * (log x)^2 / x
    Rational integral;
};

inline LowerBoundRatio lower_bound_ratio(const Rational& c1, const Rational& c2, const CertifiedReal& beta,
                                         std::uint64_t x) {
    if (x < 100) throw ParameterError("lower_bound_ratio needs x >= 100");
    if (!(c1 < c2)) throw ParameterError("lower_bound_ratio needs c1 < c2");
    LowerBoundRatio r;
    r.integral = integral_exact(c1, c2, beta, x).value;
    const double lx = std::log(static_cast<double>(x));
    const double scale = lx * lx / static_cast<double>(x);
    r.ratio = r.integral.get_d() * scale / to_double(c2 - c1);
    double inv_logs = 0;
    for (std::uint64_t p : detail::small_primes(x)) inv_logs += 1.0 / std::log(static_cast<double>(p));
    r.comparison = inv_logs * scale;
    return r;
}

// ---------------------------------------------------------------------------
// Scans
// ---------------------------------------------------------------------------

/// alpha values of a scan: pinned specs first, then cfg.samples seeded draws.
inline std::vector<std::pair<std::string, CertifiedReal>> scan_alphas(const ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, CertifiedReal>> out;
    for (const auto& spec : cfg.pins) {
        auto a = parse_real_spec(spec);
        out.emplace_back(a.spec(), std::move(a));
    }
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        auto rng = stream_rng(cfg.seed, i);
        auto a = CertifiedReal::rational(sample_alpha(rng, cfg.c1, cfg.c2));
        out.emplace_back(a.spec(), std::move(a));
    }
    return out;
}

inline std::vector<ScanRow> scan_alpha(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.x_grid.empty()) return {};
    for (auto x : cfg.x_grid)
        if (x < 3) throw ParameterError("scan needs x >= 3");
    const auto alphas = scan_alphas(cfg);
    const std::uint64_t x_max = cfg.x_grid.back();
    Integer top = from_u64(x_max);
    for (const auto& [spec, a] : alphas) {
        detail::require_positive(a);
        const Integer f = floor_affine(a, cfg.beta, x_max);
        if (f > top) top = f;
    }
    if (top > from_u64(kMaxSieveLimit)) throw GuardError("scan range beyond prime-table limit");
    const PrimeTable primes = sieve_primes(std::max<std::uint64_t>(top.get_ui(), 2));

    const std::size_t nx = cfg.x_grid.size();
    std::vector<ScanRow> rows(alphas.size() * nx);
    parallel_for(rows.size(), cfg.threads, [&](std::size_t cell) {
        const auto& [spec, a] = alphas[cell / nx];
        const std::uint64_t x = cfg.x_grid[cell % nx];
        ScanRow& r = rows[cell];
        r.alpha_spec = spec;
        r.x = x;
        r.pair_count = beatty_prime_pairs(a, cfg.beta, x, primes).count;
        r.statistic = normalized_statistic(static_cast<double>(r.pair_count), x);
    });
    return rows;
}

struct ExceptionalFraction {
    Rational fraction;                  // sampled alpha with statistic <= 1 - delta
    double c_hat = 0;                   // largest observed statistic
    std::optional<double> bound_shape;  // (C - 1)/(C - 1 + delta/2) with C = c_hat, when c_hat > 1
};

/// From precomputed statistics (one per sampled alpha at a single x).
inline ExceptionalFraction exceptional_fraction(const std::vector<double>& statistics, const Rational& delta) {
    if (statistics.empty()) throw ParameterError("exceptional_fraction needs samples");
    ExceptionalFraction out;
    const double threshold = to_double(1 - delta);
    std::uint64_t hits = 0;
    for (double s : statistics) {
        if (s <= threshold) ++hits;
        out.c_hat = std::max(out.c_hat, s);
    }
    out.fraction = from_u64_ratio(hits, statistics.size());
    if (out.c_hat > 1) {
        const double d = delta.get_d();
        out.bound_shape = (out.c_hat - 1) / (out.c_hat - 1 + d / 2);
    }
    return out;
}

inline ExceptionalFraction exceptional_fraction(const ExperimentConfig& cfg, std::uint64_t x) {
    if (cfg.samples < 100) throw ParameterError("exceptional_fraction needs at least 100 samples");
    ExperimentConfig c = cfg;
    c.pins.clear();
    c.x_grid = {x};
    std::vector<double> stats;
    for (const auto& r : scan_alpha(c)) stats.push_back(r.statistic);
    return exceptional_fraction(stats, cfg.delta);
}

/// Standalone SVG 1.1: statistic against log x, one polyline per alpha spec.
inline std::string scan_svg(const std::vector<ScanRow>& rows, const std::vector<std::string>& specs) {
    constexpr double W = 640, H = 400, M = 40;
    double lx_min = 1e300, lx_max = -1e300, s_max = 0;
    for (const auto& r : rows) {
        const double lx = std::log(static_cast<double>(r.x));
        lx_min = std::min(lx_min, lx);
        lx_max = std::max(lx_max, lx);
        s_max = std::max(s_max, r.statistic);
    }
    if (rows.empty()) lx_min = 0, lx_max = 1;
    if (lx_max <= lx_min) lx_max = lx_min + 1;
    if (s_max <= 0) s_max = 1;
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
        << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const double y1 = H - M - (H - 2 * M) / s_max;
    svg << "<line x1=\"" << M << "\" y1=\"" << y1 << "\" x2=\"" << W - M << "\" y2=\"" << y1
        << "\" stroke=\"gray\" stroke-dasharray=\"4\"/>\n";
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::size_t ci = 0;
    for (const auto& spec : specs) {
        svg << "<polyline fill=\"none\" stroke=\"" << colors[ci++ % 6] << "\" points=\"";
        bool first = true;
        for (const auto& r : rows) {
            if (r.alpha_spec != spec) continue;
            const double px = M + (std::log(static_cast<double>(r.x)) - lx_min) / (lx_max - lx_min) * (W - 2 * M);
            const double py = H - M - r.statistic / s_max * (H - 2 * M);
            svg << (first ? "" : " ") << px << "," << py;
            first = false;
        }
        svg << "\"><title>" << spec << "</title></polyline>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace beatty
