#pragma once
// CSV output: comma separated, LF endings, mandatory header, no quoting.

#include <array>
#include <charconv>
#include <ostream>
#include <string>
#include <string_view>

#include "exact.hpp"

namespace beatty::csv {

inline constexpr std::string_view kPairs = "alpha_spec,beta_spec,x,pair_count,statistic";
inline constexpr std::string_view kPairList = "p,q";
inline constexpr std::string_view kScan = "alpha_spec,x,pair_count,statistic";
inline constexpr std::string_view kIntegral = "x,c1,c2,beta,exact_num,exact_den,mc_mean,mc_stderr,ratio";
inline constexpr std::string_view kLemma1 = "measure_num,measure_den,bound_num,bound_den,bound_case,bound_ok,intervals";
inline constexpr std::string_view kLemma2 = "d,count,main_term_num,main_term_den,abs_error,normalized_error";
inline constexpr std::string_view kEquidist = "y,width_num,width_den,count,expected_num,expected_den,conv_q,bound_ok";
inline constexpr std::string_view kSieve = "z,G_num,G_den,product_lower_num,product_lower_den,sifted_count,Q_num,Q_den";
inline constexpr std::string_view kFarey =
    "qmax,halfwidth_num,halfwidth_den,measure_num,measure_den,subadditive_bound_num,subadditive_bound_den,bound_ok";

/// Shortest round-trip decimal; identical on every run and thread count.
inline std::string real(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

class Writer {
public:
    explicit Writer(std::ostream& os) : os_(os) {}

    void header(std::string_view h) { os_ << h << '\n'; }

    template <typename... Ts>
    void row(const Ts&... cells) {
        bool first = true;
        ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
        os_ << '\n';
    }

private:
    std::ostream& os_;

    static std::string cell(const std::string& s) { return s; }
    static std::string cell(std::string_view s) { return std::string(s); }
    static std::string cell(const char* s) { return s; }
    static std::string cell(double v) { return real(v); }
    static std::string cell(bool b) { return b ? "true" : "false"; }
    static std::string cell(const Integer& v) { return v.get_str(); }
    static std::string cell(const Rational& v) { return csv_pair(v); }
    template <typename T>
        requires std::is_integral_v<T>
    static std::string cell(T v) { return std::to_string(v); }
};

} // namespace beatty::csv
