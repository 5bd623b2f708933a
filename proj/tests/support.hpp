#pragma once
// Shared helpers for the test suites: seeded generators for property tests
// and fixture loading.

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <beatty.hpp>

namespace testing_support {

using beatty::Integer;
using beatty::Rational;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed5eedULL);
    return gen;
}

inline std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng());
}

/// Random p/q with 1 <= q <= max_den and lo <= p/q < hi.
inline Rational random_rational(const Rational& lo, const Rational& hi, std::uint64_t max_den = 64) {
    const std::uint64_t q = uniform(1, max_den);
    const Integer first = beatty::ceil_of(lo * Rational(beatty::from_u64(q)));
    const Integer last = beatty::ceil_of(hi * Rational(beatty::from_u64(q))) - 1;
    if (last < first) return lo;
    const Integer span = last - first;
    const Integer pick = first + beatty::from_u64(uniform(0, span.get_ui()));
    return beatty::make_rational(pick, beatty::from_u64(q));
}

/// Random canonical subset of [0, 1) with up to `parts` components.
inline beatty::IntervalSet random_unit_set(std::size_t parts, std::uint64_t max_den = 24) {
    beatty::IntervalSet s;
    const std::size_t n = uniform(0, parts);
    for (std::size_t i = 0; i < n; ++i) {
        Rational a = random_rational(0, 1, max_den), b = random_rational(0, 1, max_den);
        if (b < a) std::swap(a, b);
        s.add({a, b});
    }
    return s;
}

inline std::string fixture_path(const std::string& name) { return std::string(BEATTY_FIXTURES) + "/" + name; }

inline std::vector<std::vector<std::string>> read_csv(const std::string& name) {
    std::ifstream in(fixture_path(name));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

/// "key = num / den float" lines of the integral fixture.
inline Rational read_integral_fixture(const std::string& key) {
    std::ifstream in(fixture_path("integral_oracle.txt"));
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + " = ", 0) != 0) continue;
        std::stringstream ss(line.substr(key.size() + 3));
        std::string num, slash, den;
        ss >> num >> slash >> den;
        if (slash != "/") return Rational(Integer(num));
        return beatty::make_rational(Integer(num), Integer(den));
    }
    throw std::runtime_error("fixture key missing: " + key);
}

} // namespace testing_support
