#pragma once

/**
 * @file mollifier.hpp
 * @brief Two-piece mollifier, mollified moments over even primitive
 * characters, the Cauchy-Schwarz non-vanishing lower bound, and the
 * piecewise-optimal mollifier lengths.
 *
 *   M(chi) = c1 sum_{m<=M} a(m) chi(m) m^{-1/2}
 *          + c2 (conj(tau_chi)/q^{1/2}) sum_{m<=R} a(m) conj(chi(m)) m^{-1/2},
 *   a(m)   = mu(m) log(y/m) / log(y),   y = q^theta of the piece.
 */

#include <boost/rational.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "lcentral/arith.hpp"
#include "lcentral/dirichlet/characters.hpp"
#include "lcentral/dirichlet/lvalues.hpp"
#include "lcentral/expsum.hpp"
#include "lcentral/harness/parallel.hpp"
#include "lcentral/roots.hpp"

namespace lcentral::dirichlet {

using arith::i64;

struct MollifierConfig {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    i64 M = 1;         // floor(q^theta1)
    i64 R = 1;         // floor(q^theta2)
    double y1 = 1.0;   // q^theta1, the log-scale of a(m) in the chi piece
    double y2 = 1.0;   // q^theta2, the same for the conj(chi) piece

    /// Lengths from exponents; theta_i must lie in (0, 1/2).
    static MollifierConfig for_modulus(i64 q, double theta1, double theta2, double c1, double c2) {
        if (!(theta1 > 0 && theta1 < 0.5 && theta2 > 0 && theta2 < 0.5)) {
            throw precondition_error("MollifierConfig: theta1, theta2 must lie in (0, 1/2)");
        }
        MollifierConfig cfg;
        cfg.theta1 = theta1;
        cfg.theta2 = theta2;
        cfg.c1 = c1;
        cfg.c2 = c2;
        const double qd = static_cast<double>(q);
        cfg.y1 = std::pow(qd, theta1);
        cfg.y2 = std::pow(qd, theta2);
        cfg.M = std::max<i64>(1, static_cast<i64>(std::floor(cfg.y1 * (1.0 + 1e-12))));
        cfg.R = std::max<i64>(1, static_cast<i64>(std::floor(cfg.y2 * (1.0 + 1e-12))));
        return cfg;
    }

    /// Explicit integer lengths with y equal to the length.
    static MollifierConfig with_lengths(i64 M, i64 R, double c1, double c2) {
        if (M < 1 || R < 1) throw precondition_error("MollifierConfig: lengths must be >= 1");
        MollifierConfig cfg;
        cfg.c1 = c1;
        cfg.c2 = c2;
        cfg.M = M;
        cfg.R = R;
        cfg.y1 = static_cast<double>(M);
        cfg.y2 = static_cast<double>(R);
        return cfg;
    }
};

/// a(m) = mu(m) log(y/m)/log(y); zero for m > y. a(1) = 1 for every y.
inline double mollifier_coeff(i64 m, double y) {
    if (m < 1) throw precondition_error("mollifier_coeff: m must be positive");
    if (m == 1) return 1.0;
    if (static_cast<double>(m) > y || y <= 1.0) return 0.0;
    const int mu = arith::mobius(m);
    if (mu == 0) return 0.0;
    return mu * std::log(y / static_cast<double>(m)) / std::log(y);
}

/// Coefficients a(m) m^{-1/2} for m = 1..length (index 0 unused).
inline std::vector<double> mollifier_weights(i64 length, double y) {
    std::vector<double> w(static_cast<std::size_t>(length) + 1, 0.0);
    for (i64 m = 1; m <= length; ++m) w[static_cast<std::size_t>(m)] = mollifier_coeff(m, y) / std::sqrt(static_cast<double>(m));
    return w;
}

/// M(chi) given its Gauss sum.
inline std::complex<double> mollifier_eval(const CharacterTable& chi, const MollifierConfig& cfg,
                                           std::complex<double> tau) {
    if (!chi.primitive) throw precondition_error("mollifier_eval: character must be primitive");
    std::complex<double> first{}, second{};
    if (cfg.c1 != 0.0) {
        for (i64 m = 1; m <= cfg.M; ++m) first += mollifier_coeff(m, cfg.y1) * chi(m) / std::sqrt(static_cast<double>(m));
    }
    if (cfg.c2 != 0.0) {
        for (i64 m = 1; m <= cfg.R; ++m) {
            second += mollifier_coeff(m, cfg.y2) * std::conj(chi(m)) / std::sqrt(static_cast<double>(m));
        }
    }
    return cfg.c1 * first + cfg.c2 * std::conj(tau) / std::sqrt(static_cast<double>(chi.q)) * second;
}

inline std::complex<double> mollifier_eval(const CharacterTable& chi, const MollifierConfig& cfg) {
    return mollifier_eval(chi, cfg, expsum::gauss_sum_tau(chi).value());
}

namespace detail {

inline void require_moment_modulus(i64 q, const char* who) {
    if (q < 3) throw precondition_error(std::string(who) + ": q must be >= 3");
    if (q % 4 == 2) throw precondition_error(std::string(who) + ": no primitive characters when q = 2 mod 4");
}

}  // namespace detail

struct TauIdentity {
    std::complex<double> lhs;  // sum over even primitive chi of tau_chi chi(m)
    double rhs = 0.0;          // sum_{q1 q2 = q, (q1,q2)=1} mu^2(q1) phi(q2) cos(2 pi conj(m q1)/q2)
};

inline TauIdentity tau_identity_check(i64 q, i64 m) {
    if (q < 1) throw precondition_error("tau_identity_check: q must be positive");
    if (q % 4 == 2) throw precondition_error("tau_identity_check: q = 2 mod 4 has no primitive characters");
    if (arith::gcd(m, q) != 1) throw not_coprime_error("tau_identity_check: m must be coprime to q");

    TauIdentity out;
    const CharacterGroup group(q);
    const RootTable roots(q);
    for (i64 idx : group.even_primitive_indices()) {
        const auto chi = group.character(idx);
        out.lhs += expsum::gauss_sum_tau(chi, roots).value() * chi(m);
    }
    for (i64 q1 : arith::divisors(group.factored())) {
        const i64 q2 = q / q1;
        if (arith::gcd(q1, q2) != 1) continue;
        if (arith::mobius(q1) == 0) continue;
        const i64 inv = q2 == 1 ? 0 : arith::mod_inverse(expsum::mulmod(m, q1, q2), q2);
        out.rhs += static_cast<double>(arith::euler_phi(q2)) *
                   std::cos(2.0 * std::numbers::pi * static_cast<double>(inv) / static_cast<double>(q2));
    }
    return out;
}

/// Raw sums over the even primitive characters mod q.
struct MomentSums {
    std::complex<double> sum_lm;  // sum L(1/2,chi) M(chi)
    double sum_lm2 = 0.0;         // sum |L(1/2,chi) M(chi)|^2
    i64 n_even_primitive = 0;
    i64 n_nonvanishing = 0;       // |L(1/2,chi)| > vanish_tol
    double min_abs_l = 0.0;
};

inline MomentSums moment_sums(i64 q, const MollifierConfig& cfg, double vanish_tol = 1e-8, unsigned threads = 1) {
    detail::require_moment_modulus(q, "moments");
    const CharacterGroup group(q);
    const HurwitzTable zeta(q);
    const RootTable roots(q);
    const auto indices = group.even_primitive_indices();
    const std::size_t n = indices.size();

    std::vector<std::complex<double>> lm(n);
    std::vector<double> lm2(n), labs(n);
    harness::parallel_for(n, threads, [&](std::size_t k) {
        const auto chi = group.character(indices[k]);
        const auto l = zeta.central_value(chi);
        const auto tau = expsum::gauss_sum_tau(chi, roots).value();
        const auto v = l * mollifier_eval(chi, cfg, tau);
        lm[k] = v;
        lm2[k] = std::norm(v);
        labs[k] = std::abs(l);
    });

    MomentSums out;
    out.sum_lm = harness::tree_sum(lm);
    out.sum_lm2 = harness::tree_sum(lm2);
    out.n_even_primitive = static_cast<i64>(n);
    out.min_abs_l = n ? labs[0] : 0.0;
    for (double a : labs) {
        if (a > vanish_tol) ++out.n_nonvanishing;
        out.min_abs_l = std::min(out.min_abs_l, a);
    }
    return out;
}

/// (2/phi*(q)) sum' L(1/2,chi) M(chi) over even primitive chi.
inline std::complex<double> first_moment(i64 q, const MollifierConfig& cfg, unsigned threads = 1) {
    const auto s = moment_sums(q, cfg, 1e-8, threads);
    return 2.0 / static_cast<double>(arith::factor(static_cast<arith::u64>(q)).phistar) * s.sum_lm;
}

/// (2/phi*(q)) sum' |L(1/2,chi) M(chi)|^2 over even primitive chi.
inline double second_moment(i64 q, const MollifierConfig& cfg, unsigned threads = 1) {
    const auto s = moment_sums(q, cfg, 1e-8, threads);
    return 2.0 / static_cast<double>(arith::factor(static_cast<arith::u64>(q)).phistar) * s.sum_lm2;
}

/// c1^2/theta1 + c2^2/theta2 + (c1+c2)^2.
inline double second_moment_main_term(const MollifierConfig& cfg) {
    return cfg.c1 * cfg.c1 / cfg.theta1 + cfg.c2 * cfg.c2 / cfg.theta2 + (cfg.c1 + cfg.c2) * (cfg.c1 + cfg.c2);
}

struct MomentReport {
    i64 q = 0;
    MollifierConfig config;
    std::complex<double> m1;
    double m2 = 0.0;
    double kappa_lb = 0.0;
    bool kappa_degenerate = false;  // zero denominator, kappa_lb forced to 0
    i64 n_even_primitive = 0;
    i64 n_nonvanishing = 0;
    double proportion = 0.0;
    double vanish_tol = 1e-8;
};

inline MomentReport kappa_report(i64 q, const MollifierConfig& cfg, double vanish_tol = 1e-8, unsigned threads = 1) {
    const auto s = moment_sums(q, cfg, vanish_tol, threads);
    const double phistar = static_cast<double>(arith::factor(static_cast<arith::u64>(q)).phistar);
    MomentReport r;
    r.q = q;
    r.config = cfg;
    r.vanish_tol = vanish_tol;
    r.m1 = 2.0 / phistar * s.sum_lm;
    r.m2 = 2.0 / phistar * s.sum_lm2;
    r.n_even_primitive = s.n_even_primitive;
    r.n_nonvanishing = s.n_nonvanishing;
    r.proportion = s.n_even_primitive ? static_cast<double>(s.n_nonvanishing) / static_cast<double>(s.n_even_primitive) : 0.0;
    const double denom = static_cast<double>(s.n_even_primitive) * s.sum_lm2;
    if (denom > 0.0) {
        r.kappa_lb = std::norm(s.sum_lm) / denom;
    } else {
        r.kappa_degenerate = true;
    }
    return r;
}

/// Non-vanishing count of L(1/2, chi) over the even primitive characters mod q.
struct Census {
    i64 q = 0;
    i64 n_even_primitive = 0;
    i64 n_nonvanishing = 0;
    double proportion = 0.0;
};

inline Census nonvanishing_census(i64 q, double vanish_tol = 1e-8, unsigned threads = 1) {
    detail::require_moment_modulus(q, "proportion");
    const CharacterGroup group(q);
    const HurwitzTable zeta(q);
    const auto indices = group.even_primitive_indices();
    std::vector<int> nonzero(indices.size());
    harness::parallel_for(indices.size(), threads, [&](std::size_t k) {
        nonzero[k] = std::abs(zeta.central_value(group.character(indices[k]))) > vanish_tol;
    });
    Census c{q, static_cast<i64>(indices.size()), 0, 0.0};
    for (int z : nonzero) c.n_nonvanishing += z;
    if (c.n_even_primitive) c.proportion = static_cast<double>(c.n_nonvanishing) / static_cast<double>(c.n_even_primitive);
    return c;
}

// ---------------------------------------------------------------------------
// Mollifier lengths

using Rational = boost::rational<i64>;

struct ThetaChoice {
    Rational theta1;
    Rational theta2;
    Rational proportion;  // (1 + 1/(theta1 + theta2))^{-1}
};

/// Optimal (theta1, theta2) for q° = q^gamma at the eps = 0 boundary:
///   gamma <= 1/5: ((1-gamma)/4, (1+gamma)/3),   proportion (7+gamma)/(19+gamma)
///   gamma >  1/5: ((3-7gamma)/8, (1+3gamma)/4), proportion (5-gamma)/(13-gamma)
inline ThetaChoice theta_optimizer(Rational gamma) {
    if (gamma < 0 || gamma > Rational(1, 3)) throw precondition_error("theta_optimizer: gamma must lie in [0, 1/3]");
    ThetaChoice out;
    if (gamma <= Rational(1, 5)) {
        out.theta1 = (1 - gamma) / 4;
        out.theta2 = (1 + gamma) / 3;
    } else {
        out.theta1 = (3 - 7 * gamma) / 8;
        out.theta2 = (1 + 3 * gamma) / 4;
    }
    out.proportion = 1 / (1 + 1 / (out.theta1 + out.theta2));
    return out;
}

/// The admissible region for the second moment, with equality allowed:
/// 4 t1 + 6 t2 <= 3 + gamma, 2 t1 + t2 <= 1 - gamma, 4 t1 <= 1 - gamma, 0 < t_i <= 1/2.
inline bool theta_admissible(Rational gamma, Rational theta1, Rational theta2) {
    return theta1 > 0 && theta2 > 0 && theta1 <= Rational(1, 2) && theta2 <= Rational(1, 2) &&
           4 * theta1 + 6 * theta2 <= 3 + gamma && 2 * theta1 + theta2 <= 1 - gamma && 4 * theta1 <= 1 - gamma;
}

/// Decimal gamma rounded to the nearest 1/10^6 rational.
inline Rational to_rational(double x) {
    constexpr i64 den = 1'000'000;
    return Rational(static_cast<i64>(std::llround(x * den)), den);
}

}  // namespace lcentral::dirichlet
