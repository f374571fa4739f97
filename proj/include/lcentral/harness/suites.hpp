#pragma once

/**
 * @file suites.hpp
 * @brief Bound-verification suites over deterministic, seed-keyed grids.
 *
 * A suite evaluates one family of sums on a q-grid, compares every value with
 * its envelope, and fits log-log slopes of the per-q maxima. Rows come out in
 * grid order regardless of the worker count.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lcentral/arith.hpp"
#include "lcentral/expsum.hpp"
#include "lcentral/harness/csv.hpp"
#include "lcentral/harness/frozen.hpp"
#include "lcentral/harness/parallel.hpp"
#include "lcentral/harness/rng.hpp"
#include "lcentral/quartic.hpp"
#include "lcentral/roots.hpp"
#include "lcentral/stats.hpp"

namespace lcentral::harness {

using arith::i64;

enum class Suite { weil, lemma51, lemma52, lemma53, prop42, prop43, thm12 };

inline constexpr Suite all_suites[] = {Suite::weil,   Suite::lemma51, Suite::lemma52, Suite::lemma53,
                                       Suite::prop42, Suite::prop43,  Suite::thm12};

inline std::string suite_name(Suite s) {
    switch (s) {
        case Suite::weil: return "weil";
        case Suite::lemma51: return "lemma51";
        case Suite::lemma52: return "lemma52";
        case Suite::lemma53: return "lemma53";
        case Suite::prop42: return "prop42";
        case Suite::prop43: return "prop43";
        case Suite::thm12: return "thm12";
    }
    return "?";
}

inline Suite parse_suite(const std::string& name) {
    for (Suite s : all_suites) {
        if (suite_name(s) == name) return s;
    }
    throw precondition_error("unknown suite: " + name);
}

struct SweepConfig {
    Suite suite = Suite::weil;
    std::optional<i64> qmin;     // per-suite default when unset
    std::optional<i64> qmax;
    std::optional<i64> samples;  // per-q sample count
    std::optional<i64> bmax;     // thm12 only; unset means B = min(q, 12)
    unsigned threads = 1;
    std::uint64_t seed = default_seed;
    std::string out = "-";
};

struct QRange {
    i64 lo, hi, samples;
};

/// Grid defaults: the ranges the acceptance criteria are stated on.
inline QRange resolve_range(const SweepConfig& cfg) {
    QRange r{};
    switch (cfg.suite) {
        case Suite::weil: r = {1, 2000, 100}; break;
        case Suite::lemma51:
        case Suite::lemma52: r = {50, 2000, 20}; break;
        case Suite::lemma53: r = {50, 1000, 8}; break;
        case Suite::prop42: r = {11, 199, 24}; break;
        case Suite::prop43: r = {2, 13, 20}; break;
        case Suite::thm12: r = {1, 125, 0}; break;
    }
    if (cfg.qmin) r.lo = *cfg.qmin;
    if (cfg.qmax) r.hi = *cfg.qmax;
    if (cfg.samples) r.samples = *cfg.samples;
    if (r.lo < 1) throw precondition_error("qmin must be >= 1");
    if (r.samples < 0) throw precondition_error("samples must be >= 0");
    if (r.hi > 1'000'000) throw precondition_error("qmax too large for a desk-scale suite");
    return r;
}

struct BoundRow {
    std::string suite;
    i64 q = 0;
    std::string param1;
    std::string param2;
    double value = 0.0;
    double envelope = 0.0;
    double ratio = 0.0;
    bool pass = true;
};

struct SlopeCheck {
    std::string label;
    i64 points = 0;
    double slope = 0.0;
    double limit = 0.0;
    bool pass = true;
};

struct SuiteResult {
    std::vector<BoundRow> rows;
    std::vector<SlopeCheck> checks;

    bool passed() const {
        return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; }) &&
               std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    }
};

inline const Schema bounds_schema{"suite", "q", "param1", "param2", "value_abs", "envelope", "ratio"};
inline const Schema report_schema{"suite", "q", "param1", "param2", "value_abs", "envelope", "ratio", "pass"};

inline std::vector<Row> bounds_rows(const SuiteResult& r) {
    std::vector<Row> out;
    for (const auto& b : r.rows) {
        out.push_back({b.suite, static_cast<std::int64_t>(b.q), b.param1, b.param2, b.value, b.envelope, b.ratio});
    }
    return out;
}

/// Grid rows followed by one row per slope check (q = points, value = slope, envelope = limit).
inline std::vector<Row> report_rows(const SuiteResult& r) {
    std::vector<Row> out;
    for (const auto& b : r.rows) {
        out.push_back({b.suite, static_cast<std::int64_t>(b.q), b.param1, b.param2, b.value, b.envelope, b.ratio,
                       std::string(b.pass ? "pass" : "fail")});
    }
    for (const auto& c : r.checks) {
        out.push_back({c.label, static_cast<std::int64_t>(c.points), std::string("slope"), std::string(), c.slope,
                       c.limit, c.limit != 0.0 ? c.slope / c.limit : 0.0, std::string(c.pass ? "pass" : "fail")});
    }
    return out;
}

namespace detail {

inline std::string join(std::initializer_list<i64> xs) {
    std::string s;
    for (i64 x : xs) s += (s.empty() ? "" : ":") + std::to_string(x);
    return s;
}

/// Rows per grid point, computed in parallel and concatenated in grid order.
template <typename Fn>
std::vector<BoundRow> collect(const std::vector<i64>& grid, unsigned threads, Fn&& fn) {
    std::vector<std::vector<BoundRow>> slots(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) { slots[i] = fn(grid[i]); });
    std::vector<BoundRow> rows;
    for (auto& s : slots) rows.insert(rows.end(), s.begin(), s.end());
    return rows;
}

/// Slope of log(max normalized value per q) against log q, over rows with the given label.
/// `normalize` maps a row to the quantity whose per-q maximum is fitted.
template <typename Norm>
SlopeCheck max_slope(const std::vector<BoundRow>& rows, const std::string& label, double limit, Norm&& normalize) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < rows.size();) {
        if (rows[i].suite != label) {
            ++i;
            continue;
        }
        const i64 q = rows[i].q;
        double best = 0.0;
        for (; i < rows.size() && rows[i].suite == label && rows[i].q == q; ++i) {
            best = std::max(best, normalize(rows[i]));
        }
        xs.push_back(static_cast<double>(q));
        ys.push_back(best);
    }
    SlopeCheck c{label + "[slope]", 0, 0.0, limit, true};
    const auto fit = fit_loglog(xs, ys);
    c.points = static_cast<i64>(fit.points);
    c.slope = fit.points >= 2 ? fit.slope : 0.0;
    c.pass = fit.points < 2 || c.slope <= limit;
    return c;
}

inline std::vector<i64> q_grid(i64 lo, i64 hi) {
    std::vector<i64> g;
    for (i64 q = lo; q <= hi; ++q) g.push_back(q);
    return g;
}

// value / envelope * q^{1/2}: |sum| / gcd^{1/2}, times rho^{1/2} for the U sums.
inline double normalized_max(const BoundRow& b) { return b.value / b.envelope * std::sqrt(static_cast<double>(b.q)); }

inline double sqrt_gcd(i64 a, i64 b, i64 q) { return std::sqrt(static_cast<double>(arith::gcd3(a, b, q))); }

// |S(a,b;q)| <= d(q) (a,b,q)^{1/2} q^{1/2}
inline SuiteResult weil_suite(const QRange& r, const SweepConfig& cfg) {
    SuiteResult res;
    res.rows = collect(q_grid(r.lo, r.hi), cfg.threads, [&](i64 q) {
        const RootTable roots(q);
        const UnitTable units(q);
        const double d = static_cast<double>(arith::divisor_count(arith::factor(static_cast<arith::u64>(q))));
        std::vector<BoundRow> rows;
        for (i64 k = 0; k < r.samples; ++k) {
            KeyedRng rng(cfg.seed, {0, static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(k)});
            const i64 a = rng.uniform(0, q - 1), b = rng.uniform(0, q - 1);
            const auto v = expsum::kloosterman_naive(a, b, roots, units);
            BoundRow row{"weil", q, std::to_string(a), std::to_string(b), std::abs(v.re),
                         d * sqrt_gcd(a, b, q) * std::sqrt(static_cast<double>(q)), 0.0, true};
            row.ratio = row.value / row.envelope;
            row.pass = row.value <= row.envelope + v.err && std::abs(v.im) <= v.err;
            rows.push_back(row);
        }
        return rows;
    });
    return res;
}

/// Shared shape of the three lemma suites: envelope (gcd)^{1/2} q^{1/2} [rho^{-1/2}],
/// a row passes when ratio <= cap * d(q), and the per-q maxima must grow like q^{1/2}.
inline void lemma_row(BoundRow& row, double gcd_root, double rho, double err, i64 q, double cap) {
    const double d = static_cast<double>(arith::divisor_count(arith::factor(static_cast<arith::u64>(q))));
    row.envelope = gcd_root * std::sqrt(static_cast<double>(q) / rho);
    row.ratio = row.value / row.envelope;
    row.pass = row.value <= cap * d * row.envelope + err;
}

inline SuiteResult lemma51_suite(const QRange& r, const SweepConfig& cfg) {
    SuiteResult res;
    res.rows = collect(q_grid(r.lo, r.hi), cfg.threads, [&](i64 q) {
        const RootTable roots(q);
        const UnitTable units(q);
        std::vector<BoundRow> rows;
        for (i64 k = 0; k < r.samples; ++k) {
            KeyedRng rng(cfg.seed, {51, static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(k)});
            const i64 g = rng.uniform(0, q - 1), mu = rng.uniform(0, q - 1);
            const auto v = expsum::salie_type_S(g, mu, roots, units);
            BoundRow row{"lemma51", q, std::to_string(g), std::to_string(mu), v.abs()};
            lemma_row(row, sqrt_gcd(g, mu, q), 1.0, v.err, q, frozen::lemma_row_cap);
            rows.push_back(row);
        }
        return rows;
    });
    res.checks.push_back(max_slope(res.rows, "lemma51", frozen::lemma_slope_limit,
                                   normalized_max));
    return res;
}

struct NamedPoly {
    std::string label;
    expsum::PolySpec poly;
};

inline const std::vector<NamedPoly>& lemma52_polys() {
    static const std::vector<NamedPoly> polys{
        {"P=1", {{}}}, {"P=1+x", {{1}}}, {"P=1+2x+3x^2", {{2, 3}}}};
    return polys;
}

inline SuiteResult lemma52_suite(const QRange& r, const SweepConfig& cfg) {
    SuiteResult res;
    const auto& polys = lemma52_polys();
    res.rows = collect(q_grid(r.lo, r.hi), cfg.threads, [&](i64 q) {
        const RootTable roots(q);
        const i64 qstar = arith::factor(static_cast<arith::u64>(q)).qstar;
        std::vector<BoundRow> rows;
        for (std::size_t pi = 0; pi < polys.size(); ++pi) {
            for (i64 k = 0; k < r.samples; ++k) {
                KeyedRng rng(cfg.seed, {52, static_cast<std::uint64_t>(q), pi, static_cast<std::uint64_t>(k)});
                const i64 a1 = rng.uniform(0, q - 1), a2 = rng.uniform(0, q - 1);
                const auto v = expsum::poly_gauss_frakS(a1, a2, polys[pi].poly, roots, qstar);
                BoundRow row{"lemma52[" + polys[pi].label + "]", q, std::to_string(a1), std::to_string(a2), v.abs()};
                lemma_row(row, sqrt_gcd(a1, a2, q), 1.0, v.err, q, frozen::lemma_row_cap);
                rows.push_back(row);
            }
        }
        return rows;
    });
    // Per-polynomial rows are interleaved by q; regroup so each label is contiguous.
    std::stable_sort(res.rows.begin(), res.rows.end(), [&](const BoundRow& x, const BoundRow& y) {
        auto rank = [&](const std::string& s) {
            for (std::size_t i = 0; i < polys.size(); ++i) {
                if (s == "lemma52[" + polys[i].label + "]") return i;
            }
            return polys.size();
        };
        return rank(x.suite) < rank(y.suite);
    });
    for (const auto& p : polys) {
        res.checks.push_back(max_slope(res.rows, "lemma52[" + p.label + "]", frozen::lemma_slope_limit,
                                       normalized_max));
    }
    return res;
}

/// Square-free divisors of q coprime to 3, ascending.
inline std::vector<i64> lemma53_rhos(i64 q) {
    std::vector<i64> out;
    for (i64 d : arith::divisors(arith::factor(static_cast<arith::u64>(q)))) {
        if (d % 3 != 0 && arith::mobius(d) != 0) out.push_back(d);
    }
    return out;
}

inline SuiteResult lemma53_suite(const QRange& r, const SweepConfig& cfg) {
    SuiteResult res;
    res.rows = collect(q_grid(r.lo, r.hi), cfg.threads, [&](i64 q) {
        std::vector<BoundRow> rows;
        for (i64 rho : lemma53_rhos(q)) {
            for (i64 k = 0; k < r.samples; ++k) {
                KeyedRng rng(cfg.seed, {53, static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(rho),
                                        static_cast<std::uint64_t>(k)});
                const i64 g = rng.uniform(0, q * rho - 1), mu = rng.uniform(0, q * rho - 1);
                const auto v = expsum::constrained_U(g, mu, rho, q);
                BoundRow row{"lemma53", q, detail::join({g, mu}), std::to_string(rho), v.abs()};
                lemma_row(row, sqrt_gcd(g, mu, q), static_cast<double>(rho), v.err, q, frozen::lemma_row_cap);
                rows.push_back(row);
            }
        }
        return rows;
    });
    // |U| rho^{1/2} / (gamma,mu,q)^{1/2} = value * q^{1/2} / envelope
    res.checks.push_back(max_slope(res.rows, "lemma53", frozen::lemma_slope_limit, normalized_max));
    return res;
}

/// Tuples of units mod p, half fully paired (in D(p)) and half not.
inline quartic::BTuple prop42_tuple(KeyedRng& rng, i64 p, bool paired) {
    for (;;) {
        quartic::BTuple t;
        if (paired) {
            const i64 x = rng.uniform(1, p - 1), y = rng.uniform(1, p - 1);
            const i64 shape = rng.uniform(0, 2);  // (x,x,y,y) (x,y,x,y) (x,y,y,x)
            t.b = shape == 0 ? std::array<i64, 4>{x, x, y, y}
                             : shape == 1 ? std::array<i64, 4>{x, y, x, y} : std::array<i64, 4>{x, y, y, x};
        } else {
            for (auto& b : t.b) b = rng.uniform(1, p - 1);
        }
        if (quartic::in_D(p, t) == paired) return t;
    }
}

inline SuiteResult prop42_suite(const QRange& r, const SweepConfig& cfg) {
    std::vector<i64> primes;
    for (i64 p = std::max<i64>(r.lo, 2); p <= r.hi; ++p) {
        if (arith::is_prime(static_cast<arith::u64>(p))) primes.push_back(p);
    }
    SuiteResult res;
    res.rows = collect(primes, cfg.threads, [&](i64 p) {
        std::vector<BoundRow> rows;
        for (int paired = 0; paired <= 1; ++paired) {
            const double expo = paired ? 3.0 : 2.5;
            for (i64 k = 0; k < r.samples; ++k) {
                KeyedRng rng(cfg.seed, {42, static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(paired),
                                        static_cast<std::uint64_t>(k)});
                const auto t = prop42_tuple(rng, p, paired != 0);
                const auto v = quartic::g_naive(p, t);
                BoundRow row{paired ? "prop42[in-D]" : "prop42[off-D]", p, detail::join({t[0], t[1], t[2], t[3]}),
                             "", std::abs(v.re), std::pow(static_cast<double>(p), expo)};
                row.ratio = row.value / row.envelope;
                const double cap = paired ? frozen::prop42_in_cap : frozen::prop42_off_cap;
                row.pass = row.value <= cap * row.envelope + v.err && std::abs(v.im) <= v.err;
                rows.push_back(row);
            }
        }
        return rows;
    });
    std::stable_sort(res.rows.begin(), res.rows.end(),
                     [](const BoundRow& x, const BoundRow& y) { return x.suite > y.suite; });  // off-D first
    auto raw = [](const BoundRow& b) { return b.value; };
    res.checks.push_back(max_slope(res.rows, "prop42[off-D]", frozen::prop42_off_slope_limit, raw));
    res.checks.push_back(max_slope(res.rows, "prop42[in-D]", frozen::prop42_in_slope_limit, raw));
    return res;
}

inline constexpr i64 prop43_rhos[] = {2, 3, 4, 5, 7, 9, 11, 13};

// |G_{rho^2}(b)| <= C rho^5 N1(rho)
inline SuiteResult prop43_suite(const QRange& r, const SweepConfig& cfg) {
    std::vector<i64> rhos;
    for (i64 rho : prop43_rhos) {
        if (rho >= r.lo && rho <= r.hi) rhos.push_back(rho);
    }
    SuiteResult res;
    res.rows = collect(rhos, cfg.threads, [&](i64 rho) {
        const i64 q = rho * rho;
        std::vector<BoundRow> rows;
        for (i64 k = 0; k < r.samples; ++k) {
            KeyedRng rng(cfg.seed, {43, static_cast<std::uint64_t>(rho), static_cast<std::uint64_t>(k)});
            quartic::BTuple t;
            do {
                for (auto& b : t.b) b = rng.uniform(1, q);
            } while (!t.coprime_to(q));
            const auto v = quartic::g_naive(q, t);
            const double n1 = static_cast<double>(quartic::n1_count(rho, t));
            BoundRow row{"prop43", q, detail::join({t[0], t[1], t[2], t[3]}), std::to_string(rho), std::abs(v.re),
                         std::pow(static_cast<double>(rho), 5.0) * n1};
            const bool zero = row.value <= v.err;
            row.ratio = row.envelope > 0 ? row.value / row.envelope
                                         : (zero ? 0.0 : std::numeric_limits<double>::infinity());
            row.pass = zero || row.value <= frozen::prop43_constant * row.envelope + v.err;
            rows.push_back(row);
        }
        return rows;
    });
    return res;
}

inline constexpr i64 thm12_default_qs[] = {8, 27, 32, 45, 99, 101, 125};
inline constexpr i64 thm12_default_bcap = 12;

inline SuiteResult thm12_suite(const QRange& r, const SweepConfig& cfg) {
    std::vector<i64> qs;
    for (i64 q : thm12_default_qs) {
        if (q >= r.lo && q <= r.hi) qs.push_back(q);
    }
    for (i64 q : qs) {
        if (cfg.bmax && *cfg.bmax > q) {
            throw precondition_error("thm12: B = " + std::to_string(*cfg.bmax) + " exceeds q = " + std::to_string(q));
        }
    }
    if (cfg.bmax && *cfg.bmax < 1) throw precondition_error("thm12: B must be positive");
    SuiteResult res;
    std::vector<double> xs, ys;
    for (i64 q : qs) {
        const i64 b = cfg.bmax ? *cfg.bmax : std::min(q, thm12_default_bcap);
        const auto sweep = quartic::g_sweep(q, b, cfg.threads);
        BoundRow row{"thm12", q, std::to_string(b), std::to_string(sweep.skipped), quartic::a_sum(sweep),
                     quartic::theorem12_envelope(q, b)};
        row.ratio = row.value / row.envelope;
        row.pass = row.ratio <= frozen::thm12_max_ratio;
        res.rows.push_back(row);
        xs.push_back(static_cast<double>(q));
        ys.push_back(row.ratio);
    }
    SlopeCheck c{"thm12[slope]", 0, 0.0, 0.0, true};
    const auto fit = fit_loglog(xs, ys);
    c.points = static_cast<i64>(fit.points);
    c.slope = fit.points >= 2 ? fit.slope : 0.0;
    c.pass = c.slope <= 0.0;
    res.checks.push_back(c);
    return res;
}

}  // namespace detail

/// Evaluates one suite. Throws precondition_error on an invalid configuration.
inline SuiteResult evaluate_suite(const SweepConfig& cfg) {
    const QRange r = resolve_range(cfg);
    if (r.lo > r.hi) return {};
    switch (cfg.suite) {
        case Suite::weil: return detail::weil_suite(r, cfg);
        case Suite::lemma51: return detail::lemma51_suite(r, cfg);
        case Suite::lemma52: return detail::lemma52_suite(r, cfg);
        case Suite::lemma53: return detail::lemma53_suite(r, cfg);
        case Suite::prop42: return detail::prop42_suite(r, cfg);
        case Suite::prop43: return detail::prop43_suite(r, cfg);
        case Suite::thm12: return detail::thm12_suite(r, cfg);
    }
    return {};
}

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_usage = 2;

/// Runs the suite and writes the pass/fail report. Returns the exit code:
/// 0 all pass, 1 any failure, 2 bad configuration or unwritable output.
/// Usage errors are described on `diag` when given.
inline int run_suite(const SweepConfig& cfg, bool with_pass_column = true, std::ostream* diag = nullptr) {
    SuiteResult res;
    try {
        res = evaluate_suite(cfg);
    } catch (const precondition_error& e) {
        if (diag) *diag << "error: " << e.what() << "\n";
        return exit_usage;
    }
    try {
        if (with_pass_column) {
            emit_csv(report_rows(res), report_schema, cfg.out);
        } else {
            emit_csv(bounds_rows(res), bounds_schema, cfg.out);
        }
    } catch (const output_error& e) {
        if (diag) *diag << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return res.passed() ? exit_pass : exit_fail;
}

}  // namespace lcentral::harness
