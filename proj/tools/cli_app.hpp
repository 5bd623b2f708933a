#pragma once
// Command-line front end. run_cli() is kept free of process state so tests
// can drive it with string streams.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <beatty.hpp>

namespace beatty::cli {

namespace detail {

inline std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

// key=value lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParameterError("config line without '=': " + line);
        std::string key = trim(line.substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(0, 1);
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return out;
}

inline std::string option_key(const std::string& arg) {
    if (arg.rfind("--", 0) != 0) return {};
    std::string key = arg.substr(2);
    if (auto eq = key.find('='); eq != std::string::npos) key.erase(eq);
    return key;
}

// Splices config entries in after the subcommand; keys given on the command
// line win over the file.
inline std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::string path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) return rest;
    std::set<std::string> given;
    for (const auto& a : rest)
        if (auto k = option_key(a); !k.empty()) given.insert(k);
    std::vector<std::string> injected;
    for (const auto& [key, value] : read_config(path)) {
        if (key == "config") throw ParameterError("nested config files are not supported");
        if (given.count(key)) continue;
        if (value == "true") {
            injected.push_back("--" + key);
        } else if (value != "false") {
            injected.push_back("--" + key);
            injected.push_back(value);
        }
    }
    auto pos = std::find_if(rest.begin(), rest.end(), [](const std::string& a) { return a.rfind('-', 0) != 0; });
    if (pos != rest.end()) ++pos;
    rest.insert(pos, injected.begin(), injected.end());
    return rest;
}

inline std::string fnv1a(const std::vector<std::string>& parts) {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& p : parts) {
        for (unsigned char c : p) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

inline std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

inline Rational product_lower_or_one(std::uint64_t z) { return z < 3 ? Rational(1) : product_lower(z); }

inline std::vector<std::uint64_t> parse_grid(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        // 1e6 shorthand
        const auto e = item.find_first_of("eE");
        Integer v = beatty::detail::parse_integer(item.substr(0, e), "x grid entry");
        if (e != std::string::npos) {
            const Integer k = beatty::detail::parse_integer(item.substr(e + 1), "x grid exponent");
            if (k < 0 || k > 19) throw ParameterError("x grid exponent out of range: " + item);
            Integer ten;
            mpz_ui_pow_ui(ten.get_mpz_t(), 10, k.get_ui());
            v *= ten;
        }
        if (v < 1 || !v.fits_ulong_p()) throw ParameterError("x grid entry out of range: " + item);
        out.push_back(v.get_ui());
    }
    if (out.empty()) throw ParameterError("empty x grid");
    std::sort(out.begin(), out.end());
    return out;
}

inline IntervalSet parse_unit_interval(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ParameterError("interval must be written c1,c2");
    const Rational c1 = parse_rational(trim(text.substr(0, comma)));
    const Rational c2 = parse_rational(trim(text.substr(comma + 1)));
    if (!(0 <= c1 && c1 <= c2 && c2 <= 1)) throw ParameterError("interval must satisfy 0 <= c1 <= c2 <= 1");
    return IntervalSet::single(c1, c2);
}

inline std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

} // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Beatty prime pair experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path, manifest_path;
    unsigned threads = 1;
    app.add_option("--out", out_path, "write CSV to this file instead of stdout");
    app.add_option("--manifest", manifest_path, "manifest path (default <out>.manifest.json, else stderr)");
    app.add_option("--threads", threads, "worker cap")->check(CLI::Range(1u, 1024u));
    app.add_option("--config", "key=value file mirroring the flags");

    std::string alpha = "sqrt:2", beta = "rat:0/1";
    std::uint64_t x = 0, seed = 0, samples = 100, mc_samples = 1000, dmax = 1, y = 0, z = 0, qmax = 1;
    std::string c1 = "1", c2 = "2", grid, width, variant, interval, b_text, l_text, halfwidth, svg_path;
    std::vector<std::string> pins;
    bool list = false;

    auto* pairs = app.add_subcommand("pairs", "count prime pairs (p, floor(alpha p + beta))");
    pairs->add_option("--alpha", alpha)->required();
    pairs->add_option("--beta", beta);
    pairs->add_option("--x", x)->required();
    pairs->add_flag("--list", list, "also list the pairs");

    auto* scan = app.add_subcommand("scan", "normalized statistic over sampled alpha");
    scan->add_option("--c1", c1);
    scan->add_option("--c2", c2);
    scan->add_option("--beta", beta);
    scan->add_option("--x-grid", grid)->required();
    scan->add_option("--samples", samples);
    scan->add_option("--seed", seed);
    scan->add_option("--pin", pins);
    scan->add_option("--svg", svg_path, "write a statistic-vs-log(x) plot for the pinned alpha");

    auto* integral = app.add_subcommand("integral", "exact integral over alpha with a Monte Carlo check");
    integral->add_option("--c1", c1);
    integral->add_option("--c2", c2);
    integral->add_option("--beta", beta);
    integral->add_option("--x", x)->required();
    integral->add_option("--mc-samples", mc_samples, "0 skips the Monte Carlo columns");
    integral->add_option("--seed", seed);

    auto* lemma1 = app.add_subcommand("lemma1", "{alpha in (0, b) : {alpha/l} in I}");
    lemma1->add_option("--I", interval)->required();
    lemma1->add_option("--b", b_text)->required();
    lemma1->add_option("--l", l_text)->required();

    auto* lemma2 = app.add_subcommand("lemma2", "congruence counts against (x/d) prod(2 - 1/p)");
    lemma2->add_option("--alpha", alpha)->required();
    lemma2->add_option("--beta", beta);
    lemma2->add_option("--x", x)->required();
    lemma2->add_option("--dmax", dmax)->required();
    lemma2->add_option("--mobius-variant", variant)->check(CLI::IsMember({"paper", "alternative"}));

    auto* equidist = app.add_subcommand("equidist", "fractional-part hits with the convergent bound");
    equidist->add_option("--alpha", alpha)->required();
    equidist->add_option("--beta", beta);
    equidist->add_option("--y", y)->required();
    equidist->add_option("--width", width)->required();

    auto* sieve = app.add_subcommand("sieve", "Selberg bound against the sifted count");
    sieve->add_option("--alpha", alpha)->required();
    sieve->add_option("--beta", beta);
    sieve->add_option("--x", x)->required();
    sieve->add_option("--z", z)->required();

    auto* farey = app.add_subcommand("farey", "measure of the union of Farey arcs");
    farey->add_option("--qmax", qmax)->required();
    farey->add_option("--halfwidth", halfwidth)->required();

    for (auto* sub : app.get_subcommands({}))
        for (auto* opt : sub->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    for (auto* opt : app.get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    // repeated --pin accumulates
    scan->get_option("--pin")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    std::vector<std::string> effective;
    std::vector<std::string> outputs;
    try {
        effective = detail::merge_config(args);
        std::vector<std::string> reversed(effective.rbegin(), effective.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error kind=parameter message=" << detail::one_line(e.what()) << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error kind=" << kind_name(e.kind()) << " message=" << detail::one_line(e.what()) << '\n';
        return exit_code(e.kind());
    }

    std::ofstream file;
    std::ostream* sink = &out;
    std::ostringstream notes; // one-line human summaries, go to stderr
    try {
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) throw ParameterError("cannot write " + out_path);
            sink = &file;
            outputs.push_back(out_path);
        }
        csv::Writer w(*sink);

        if (pairs->parsed()) {
            const auto a = parse_real_spec(alpha), b = parse_real_spec(beta);
            if (x < 3) throw ParameterError("pairs needs x >= 3");
            const Integer top = floor_affine(a, b, x);
            if (top > from_u64(kMaxSieveLimit)) throw GuardError("floor(alpha x + beta) beyond prime-table limit");
            const PrimeTable table = sieve_primes(std::max<std::uint64_t>(x, top < 2 ? 2 : top.get_ui()),
                                                  {.threads = threads});
            const auto res = beatty_prime_pairs(a, b, x, table, list);
            w.header(csv::kPairs);
            w.row(a.spec(), b.spec(), x, res.count, normalized_statistic(static_cast<double>(res.count), x));
            if (list) {
                *sink << '\n';
                w.header(csv::kPairList);
                for (const auto& pq : *res.pairs) w.row(pq.p, pq.q);
            }
        } else if (scan->parsed()) {
            ExperimentConfig cfg;
            cfg.c1 = parse_rational(c1);
            cfg.c2 = parse_rational(c2);
            cfg.beta = parse_real_spec(beta);
            cfg.x_grid = detail::parse_grid(grid);
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.pins = pins;
            cfg.threads = threads;
            if (samples < 1) throw ParameterError("scan needs --samples >= 1");
            const auto rows = scan_alpha(cfg);
            w.header(csv::kScan);
            for (const auto& r : rows) w.row(r.alpha_spec, r.x, r.pair_count, r.statistic);
            if (!svg_path.empty()) {
                std::vector<std::string> specs;
                for (const auto& p : pins) specs.push_back(parse_real_spec(p).spec());
                std::ofstream svg(svg_path);
                if (!svg) throw ParameterError("cannot write " + svg_path);
                svg << scan_svg(rows, specs);
                outputs.push_back(svg_path);
            }
        } else if (integral->parsed()) {
            const Rational r1 = parse_rational(c1), r2 = parse_rational(c2);
            const auto b = parse_real_spec(beta);
            const auto exact = integral_exact(r1, r2, b, x);
            double mean = std::nan(""), se = std::nan(""), ratio = std::nan("");
            if (mc_samples > 0) {
                ExperimentConfig cfg;
                cfg.c1 = r1;
                cfg.c2 = r2;
                cfg.beta = b;
                cfg.samples = mc_samples;
                cfg.seed = seed;
                cfg.threads = threads;
                const auto mc = integral_monte_carlo(cfg, x);
                mean = mc.mean;
                se = mc.stderr_;
            }
            if (x >= 3 && r1 < r2) {
                const double lx = std::log(static_cast<double>(x));
                ratio = to_double(exact.value) * lx * lx / (static_cast<double>(x) * to_double(r2 - r1));
            }
            if (!exact.exact())
                notes << "integral enclosure halfwidth=" << ratio_string(exact.halfwidth) << '\n';
            w.header(csv::kIntegral);
            w.row(x, ratio_string(r1), ratio_string(r2), b.spec(), exact.value, mean, se, ratio);
        } else if (lemma1->parsed()) {
            const IntervalSet I = detail::parse_unit_interval(interval);
            const Rational b = parse_rational(b_text), l = parse_rational(l_text);
            const IntervalSet J = lemma1_set(I, b, l);
            const auto bound = lemma1_bound(I, b, l);
            w.header(csv::kLemma1);
            w.row(J.measure(), bound.bound,
                  bound.which == Lemma1Case::l_at_most_b ? "l_at_most_b" : "l_above_b", J.measure() <= bound.bound,
                  J.to_string());
        } else if (lemma2->parsed()) {
            const auto a = parse_real_spec(alpha), b = parse_real_spec(beta);
            auto rows = deviation_report(a, b, x, dmax, threads);
            if (!variant.empty()) {
                const auto form = variant == "paper" ? MobiusForm::paper : MobiusForm::alternative;
                for (auto& r : rows) {
                    const auto via = count_mobius({a, b, x, r.d}, form);
                    if (via != static_cast<std::int64_t>(r.count))
                        throw CertificationError("Mobius count differs from direct count at d = " +
                                                 std::to_string(r.d));
                }
                notes << "lemma2 mobius-variant=" << variant << " agrees with direct counts\n";
            }
            w.header(csv::kLemma2);
            for (const auto& r : rows) w.row(r.d, r.count, r.main, ratio_string(r.abs_error), r.normalized_error);
        } else if (equidist->parsed()) {
            const auto row = equidistribution(parse_real_spec(alpha), parse_real_spec(beta), y, parse_rational(width));
            w.header(csv::kEquidist);
            w.row(row.y, row.width, row.count, row.expected, row.conv_q, row.bound_ok);
        } else if (sieve->parsed()) {
            const auto bound = selberg_upper_bound(parse_real_spec(alpha), parse_real_spec(beta), x, z, threads);
            w.header(csv::kSieve);
            w.row(z, bound.G, detail::product_lower_or_one(z), bound.sifted, bound.quadratic_form);
            notes << "sieve verdict=" << (bound.ok() ? "OK" : "FAIL")
                  << " sifted_le_Q=" << (bound.inequality_holds() ? "true" : "false")
                  << " forms_agree=" << (bound.forms_agree() ? "true" : "false") << '\n';
        } else if (farey->parsed()) {
            const auto u = farey_union(qmax, parse_rational(halfwidth));
            w.header(csv::kFarey);
            w.row(qmax, parse_rational(halfwidth), u.measure, u.subadditive_bound, u.subadditive());
        }
        sink->flush();
    } catch (const Error& e) {
        err << "error kind=" << kind_name(e.kind()) << " message=" << detail::one_line(e.what()) << '\n';
        return exit_code(e.kind());
    } catch (const std::bad_alloc&) {
        err << "error kind=guard message=out of memory\n";
        return 4;
    }

    err << notes.str();

    std::vector<std::string> digest_parts;
    for (const auto& a : effective)
        if (a != "--out" && a != out_path && a != "--manifest" && a != manifest_path) digest_parts.push_back(a);
    nlohmann::json manifest = {
        {"command_line", args},
        {"effective_arguments", effective},
        {"config_digest", detail::fnv1a(digest_parts)},
        {"seed", seed},
        {"library_version", BEATTY_VERSION},
        {"timestamp", detail::utc_timestamp()},
        {"outputs", outputs},
    };
    if (manifest_path.empty() && !out_path.empty()) manifest_path = out_path + ".manifest.json";
    if (manifest_path.empty()) {
        err << "manifest " << manifest.dump() << '\n';
    } else {
        std::ofstream mf(manifest_path);
        if (!mf) {
            err << "error kind=parameter message=cannot write " << manifest_path << '\n';
            return 2;
        }
        mf << manifest.dump(2) << '\n';
    }
    return 0;
}

} // namespace beatty::cli
