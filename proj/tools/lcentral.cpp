// lcentral: command-line front end for the central-value toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lcentral/arith.hpp"
#include "lcentral/dirichlet/mollifier.hpp"
#include "lcentral/harness/config.hpp"
#include "lcentral/harness/csv.hpp"
#include "lcentral/harness/parallel.hpp"
#include "lcentral/harness/rng.hpp"
#include "lcentral/harness/suites.hpp"
#include "lcentral/quartic.hpp"

using namespace lcentral;
using arith::i64;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
    std::optional<unsigned> threads;
    std::optional<unsigned> config_threads;
    std::uint64_t seed = harness::default_seed;
    std::string out = "-";
    std::string config;
};

unsigned resolve_threads(const Globals& g) {
    if (g.threads) return std::max(1u, *g.threads);
    if (std::getenv(harness::threads_env)) return harness::default_threads();
    if (g.config_threads) return std::max(1u, *g.config_threads);
    return harness::default_threads();
}

template <typename T>
T need(const std::optional<T>& v, const char* flag) {
    if (!v) throw precondition_error(std::string("missing required option ") + flag);
    return *v;
}

void write_text(const std::string& text, const std::string& path) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw harness::output_error("cannot open output file: " + path);
    out << text;
    if (!out.flush()) throw harness::output_error("write failed: " + path);
}

void write_json(const json& j, const std::string& path) { write_text(j.dump(2) + "\n", path); }

dirichlet::Rational parse_rational(const std::string& s) {
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return dirichlet::to_rational(std::stod(s));
        const i64 den = std::stoll(s.substr(slash + 1));
        if (den == 0) throw precondition_error("zero denominator in " + s);
        return {std::stoll(s.substr(0, slash)), den};
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const precondition_error*>(&e)) throw;
        throw precondition_error("not a rational number: " + s);
    }
}

std::string rational_str(const dirichlet::Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double as_double(const dirichlet::Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Config values fill options that were not given on the command line.
void apply_config(CLI::App& app, CLI::App* sub, Globals& g) {
    if (g.config.empty()) return;
    for (const auto& [key, value] : harness::load_config(g.config)) {
        if (key == "threads") {
            g.config_threads = static_cast<unsigned>(std::stoul(value));
            continue;
        }
        if (key == "config") continue;
        CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
        if (!opt) opt = app.get_option_no_throw("--" + key);
        if (!opt) {
            bool known = false;
            for (const auto* other : app.get_subcommands({})) known = known || other->get_option_no_throw("--" + key);
            if (!known) throw precondition_error("unknown config key: " + key);
            continue;
        }
        if (opt->count() > 0) continue;
        opt->add_result(value);
        opt->run_callback();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kloosterman sums, quartic averages and mollified central L-values"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Globals g;
    app.add_option("--threads", g.threads, "worker threads (overrides LCENTRAL_THREADS)");
    app.add_option("--seed", g.seed, "64-bit seed for sampled grids");
    app.add_option("--out", g.out, "output file, - for stdout");
    app.add_option("--config", g.config, "flat key=value file; command-line flags win");

    // factor
    auto* factor_cmd = app.add_subcommand("factor", "factorization and modulus invariants");
    std::optional<i64> factor_n;
    factor_cmd->add_option("--n,--q", factor_n, "positive integer");

    // gsweep
    auto* gsweep_cmd = app.add_subcommand("gsweep", "G_q(b) over the box [1,B]^4");
    std::optional<i64> sweep_q, sweep_b;
    gsweep_cmd->add_option("--q", sweep_q, "modulus");
    gsweep_cmd->add_option("--bmax", sweep_b, "box size B <= q");

    // bounds and suite share the sweep options
    harness::SweepConfig sweep;
    std::string suite_name;
    std::optional<i64> qmin, qmax, samples, bmax;
    auto add_sweep_opts = [&](CLI::App* cmd) {
        cmd->add_option("--suite", suite_name, "weil, lemma51, lemma52, lemma53, prop42, prop43 or thm12");
        cmd->add_option("--qmin", qmin, "smallest q (rho for prop43)");
        cmd->add_option("--qmax", qmax, "largest q (rho for prop43)");
        cmd->add_option("--samples", samples, "samples per grid point");
        cmd->add_option("--bmax", bmax, "thm12 box size; default min(q, 12)");
    };
    auto* bounds_cmd = app.add_subcommand("bounds", "envelope table: suite,q,param1,param2,value_abs,envelope,ratio");
    add_sweep_opts(bounds_cmd);
    auto* suite_cmd = app.add_subcommand("suite", "bound suite with per-row pass/fail and slope checks");
    add_sweep_opts(suite_cmd);

    // moments
    auto* moments_cmd = app.add_subcommand("moments", "mollified first and second moments");
    std::optional<i64> mom_q;
    double theta1 = 0.2, theta2 = 0.2, c1 = 0.5, c2 = 0.5, vanish_tol = 1e-8;
    moments_cmd->add_option("--q", mom_q, "modulus");
    moments_cmd->add_option("--theta1", theta1)->capture_default_str();
    moments_cmd->add_option("--theta2", theta2)->capture_default_str();
    moments_cmd->add_option("--c1", c1)->capture_default_str();
    moments_cmd->add_option("--c2", c2)->capture_default_str();
    moments_cmd->add_option("--vanish-tol", vanish_tol)->capture_default_str();

    // theta
    auto* theta_cmd = app.add_subcommand("theta", "optimal mollifier exponents for q° = q^gamma");
    std::optional<std::string> gamma_str;
    theta_cmd->add_option("--gamma", gamma_str, "gamma in [0, 1/3], decimal or p/q");

    // proportion
    auto* prop_cmd = app.add_subcommand("proportion", "non-vanishing census over even primitive characters");
    std::optional<i64> pq_min, pq_max;
    double prop_tol = 1e-8;
    prop_cmd->add_option("--qmin", pq_min);
    prop_cmd->add_option("--qmax", pq_max);
    prop_cmd->add_option("--vanish-tol", prop_tol)->capture_default_str();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return harness::exit_usage;
    }

    try {
        auto* sub = app.get_subcommands().front();
        apply_config(app, sub, g);
        const unsigned threads = resolve_threads(g);

        if (sub == factor_cmd) {
            const i64 n = need(factor_n, "--n");
            if (n < 1) throw precondition_error("factor: n must be positive");
            const auto fm = arith::factor(static_cast<arith::u64>(n));
            const auto d = arith::decompose_six_one(fm);
            json j;
            j["n"] = n;
            j["factors"] = json::array();
            for (const auto& f : fm.factors) j["factors"].push_back({{"p", f.prime}, {"e", f.exponent}});
            j["radical"] = fm.qstar;
            j["odd_power_kernel"] = fm.qring;
            j["phi"] = fm.phi;
            j["phistar"] = fm.phistar;
            j["divisor_count"] = arith::divisor_count(fm);
            j["mobius"] = arith::mobius(n);
            j["decomposition"] = {{"rho", d.rho}, {"c", d.c}, {"d", d.d}, {"dstar", d.dstar}, {"three_odd", d.three_odd}};
            write_json(j, g.out);
            return 0;
        }

        if (sub == gsweep_cmd) {
            const auto res = quartic::g_sweep(need(sweep_q, "--q"), need(sweep_b, "--bmax"), threads);
            std::vector<harness::Row> rows;
            rows.reserve(res.entries.size());
            for (const auto& e : res.entries) {
                rows.push_back({e.b[0], e.b[1], e.b[2], e.b[3], e.abs()});
            }
            harness::emit_csv(rows, {"b1", "b2", "b3", "b4", "g_abs"}, g.out);
            return 0;
        }

        if (sub == bounds_cmd || sub == suite_cmd) {
            if (suite_name.empty()) throw precondition_error("missing required option --suite");
            sweep.suite = harness::parse_suite(suite_name);
            sweep.qmin = qmin;
            sweep.qmax = qmax;
            sweep.samples = samples;
            sweep.bmax = bmax;
            sweep.threads = threads;
            sweep.seed = g.seed;
            sweep.out = g.out;
            return harness::run_suite(sweep, sub == suite_cmd, &std::cerr);
        }

        if (sub == moments_cmd) {
            const i64 q = need(mom_q, "--q");
            const auto cfg = dirichlet::MollifierConfig::for_modulus(q, theta1, theta2, c1, c2);
            const auto r = dirichlet::kappa_report(q, cfg, vanish_tol, threads);
            json j;
            j["q"] = r.q;
            j["config"] = {{"theta1", cfg.theta1}, {"theta2", cfg.theta2}, {"c1", cfg.c1},
                           {"c2", cfg.c2},         {"M", cfg.M},           {"R", cfg.R}};
            j["m1"] = {{"re", r.m1.real()}, {"im", r.m1.imag()}};
            j["m2"] = r.m2;
            j["m2_main_term"] = dirichlet::second_moment_main_term(cfg);
            j["kappa_lb"] = r.kappa_lb;
            j["kappa_degenerate"] = r.kappa_degenerate;
            j["n_even_primitive"] = r.n_even_primitive;
            j["n_nonvanishing"] = r.n_nonvanishing;
            j["proportion"] = r.proportion;
            j["vanish_tol"] = r.vanish_tol;
            write_json(j, g.out);
            return 0;
        }

        if (sub == theta_cmd) {
            const auto gamma = parse_rational(need(gamma_str, "--gamma"));
            const auto t = dirichlet::theta_optimizer(gamma);
            json j;
            j["gamma"] = rational_str(gamma);
            j["theta1"] = rational_str(t.theta1);
            j["theta2"] = rational_str(t.theta2);
            j["proportion"] = rational_str(t.proportion);
            j["values"] = {as_double(t.theta1), as_double(t.theta2), as_double(t.proportion)};
            write_json(j, g.out);
            return 0;
        }

        if (sub == prop_cmd) {
            const i64 lo = need(pq_min, "--qmin"), hi = need(pq_max, "--qmax");
            std::vector<harness::Row> rows;
            for (i64 q = std::max<i64>(lo, 3); q <= hi; ++q) {
                if (q % 4 == 2) continue;
                const auto c = dirichlet::nonvanishing_census(q, prop_tol, threads);
                rows.push_back({c.q, c.n_even_primitive, c.n_nonvanishing, c.proportion});
            }
            harness::emit_csv(rows, {"q", "n_even_primitive", "n_nonvanishing", "proportion"}, g.out);
            return 0;
        }
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return harness::exit_usage;
    } catch (const harness::output_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return harness::exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return harness::exit_usage;
    }
    return harness::exit_usage;
}
