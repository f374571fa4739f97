#pragma once

/**
 * @file expsum.hpp
 * @brief Exponential sums over Z/qZ.
 *
 * Every evaluator is an exact finite sum with roots of unity taken from a
 * RootTable. The error field is a worst-case bound: one table-precision
 * quantum per summed term.
 *
 *   S(a,b;q)        = sum*_{x mod q} e_q(a x + b xbar)                 Kloosterman
 *   tau_chi         = sum_{a mod q} chi(a) e_q(a)                      Gauss
 *   Sal(g,m,q)      = sum*_{s mod q} e_q(g sbar^2 + m s)
 *   Frak(a1,a2,q,P) = sum_{s mod q} e_q(a1 s + a2 s^2 P(s q*))
 *   U(g,m,rho,q)    = sum*_{u mod q, m u = g ubar^2 (rho)} e_{q rho}(g ubar^2 + 2 m u)
 */

#include <cmath>
#include <complex>
#include <vector>

#include "lcentral/arith.hpp"
#include "lcentral/dirichlet/characters.hpp"
#include "lcentral/roots.hpp"

namespace lcentral::expsum {

using arith::i64;

/// Precision budget of one table entry.
inline constexpr double root_precision = 1e-12;

struct ExpSumValue {
    double re = 0.0;
    double im = 0.0;
    double err = 0.0;

    std::complex<double> value() const { return {re, im}; }
    double abs() const { return std::hypot(re, im); }

    static ExpSumValue from(std::complex<double> v, std::size_t terms) {
        return {v.real(), v.imag(), static_cast<double>(terms) * root_precision};
    }
};

/// P(x) = 1 + c_1 x + ... + c_{k-1} x^{k-1}; the constant term is fixed at 1.
struct PolySpec {
    std::vector<i64> coefficients;  // c_1, c_2, ...

    /// P(x) mod n, by Horner.
    i64 eval_mod(i64 x, i64 n) const {
        if (n == 1) return 0;
        const auto un = static_cast<arith::u64>(n);
        const auto ux = static_cast<arith::u64>(arith::reduce(x, n));
        arith::u64 acc = 0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
            acc = (arith::mulmod(acc, ux, un) + static_cast<arith::u64>(arith::reduce(*it, n))) % un;
        }
        return static_cast<i64>((arith::mulmod(acc, ux, un) + 1) % un);
    }
};

inline i64 mulmod(i64 a, i64 b, i64 n) {
    return static_cast<i64>(arith::mulmod(static_cast<arith::u64>(arith::reduce(a, n)),
                                          static_cast<arith::u64>(arith::reduce(b, n)),
                                          static_cast<arith::u64>(n)));
}

// ---------------------------------------------------------------------------
// Kloosterman sums

/// S(a,b;q) by direct summation over the units of q.
inline ExpSumValue kloosterman_naive(i64 a, i64 b, const RootTable& roots, const UnitTable& units) {
    const i64 q = roots.modulus();
    a = arith::reduce(a, q);
    b = arith::reduce(b, q);
    std::complex<double> sum{};
    for (std::size_t k = 0; k < units.units.size(); ++k) {
        const i64 x = units.units[k];
        const i64 xbar = units.inverses[k];
        sum += roots.at((mulmod(a, x, q) + mulmod(b, xbar, q)) % q);
    }
    return ExpSumValue::from(sum, units.units.size());
}

inline ExpSumValue kloosterman_naive(i64 a, i64 b, i64 q) {
    if (q <= 0) throw precondition_error("kloosterman_naive: q must be positive");
    return kloosterman_naive(a, b, RootTable(q), UnitTable(q));
}

/// S(a,b;q) through twisted multiplicativity over the prime powers of q:
///   S(a,b;q1 q2) = S(a q2bar, b q2bar; q1) S(a q1bar, b q1bar; q2).
/// A prime-power factor p^e, e >= 2, with exactly one of a, b divisible by p
/// vanishes identically and makes the result an exact zero.
inline ExpSumValue kloosterman_fast(i64 a, i64 b, const arith::FactoredModulus& fm) {
    const i64 q = fm.q;
    a = arith::reduce(a, q);
    b = arith::reduce(b, q);

    struct Local {
        i64 a, b, modulus;
    };
    std::vector<Local> locals;
    for (const auto& f : fm.factors) {
        const i64 pe = f.value;
        const i64 cofactor_inv = arith::mod_inverse(q / pe, pe);
        const i64 la = mulmod(a, cofactor_inv, pe);
        const i64 lb = mulmod(b, cofactor_inv, pe);
        if (f.exponent >= 2 && ((la % f.prime == 0) != (lb % f.prime == 0))) return {};
        locals.push_back({la, lb, pe});
    }

    std::complex<double> product{1.0, 0.0};
    double bound = 1.0;  // running |product| + err
    double err = 0.0;
    for (const auto& l : locals) {
        const auto v = kloosterman_naive(l.a, l.b, l.modulus);
        const double mag = v.abs();
        err = err * (mag + v.err) + bound * v.err;
        bound *= mag + v.err;
        product *= v.value();
    }
    return {product.real(), product.imag(), err};
}

// ---------------------------------------------------------------------------
// Gauss sums

inline ExpSumValue gauss_sum_tau(const dirichlet::CharacterTable& chi, const RootTable& roots) {
    std::complex<double> sum{};
    for (i64 a = 0; a < chi.q; ++a) sum += chi.values[static_cast<std::size_t>(a)] * roots.at(a);
    return ExpSumValue::from(sum, static_cast<std::size_t>(chi.q));
}

inline ExpSumValue gauss_sum_tau(const dirichlet::CharacterTable& chi) {
    return gauss_sum_tau(chi, RootTable(chi.q));
}

// ---------------------------------------------------------------------------
// Kloosterman analogues

/// sum*_{s mod q} e_q(gamma sbar^2 + mu s).
inline ExpSumValue salie_type_S(i64 gamma, i64 mu, const RootTable& roots, const UnitTable& units) {
    const i64 q = roots.modulus();
    std::complex<double> sum{};
    for (std::size_t k = 0; k < units.units.size(); ++k) {
        const i64 s = units.units[k];
        const i64 sbar = units.inverses[k];
        sum += roots.at((mulmod(gamma, mulmod(sbar, sbar, q), q) + mulmod(mu, s, q)) % q);
    }
    return ExpSumValue::from(sum, units.units.size());
}

inline ExpSumValue salie_type_S(i64 gamma, i64 mu, i64 q) {
    if (q <= 0) throw precondition_error("salie_type_S: q must be positive");
    return salie_type_S(gamma, mu, RootTable(q), UnitTable(q));
}

/// sum_{s mod q} e_q(a1 s + a2 s^2 P(s q*)), over all residues.
inline ExpSumValue poly_gauss_frakS(i64 a1, i64 a2, const PolySpec& poly, const RootTable& roots,
                                    i64 qstar) {
    const i64 q = roots.modulus();
    std::complex<double> sum{};
    for (i64 s = 0; s < q; ++s) {
        const i64 p = poly.eval_mod(mulmod(s, qstar, q), q);
        const i64 quad = mulmod(mulmod(a2, mulmod(s, s, q), q), p, q);
        sum += roots.at((mulmod(a1, s, q) + quad) % q);
    }
    return ExpSumValue::from(sum, static_cast<std::size_t>(q));
}

inline ExpSumValue poly_gauss_frakS(i64 a1, i64 a2, i64 q, const PolySpec& poly) {
    if (q <= 0) throw precondition_error("poly_gauss_frakS: q must be positive");
    const auto fm = arith::factor(static_cast<arith::u64>(q));
    return poly_gauss_frakS(a1, a2, poly, RootTable(q), fm.qstar);
}

/// U(gamma, mu, rho, q). ubar is the inverse of u modulo q*rho and the phase is
/// taken modulo q*rho. Only the few units satisfying the mod-rho constraint
/// contribute, so their roots of unity are evaluated directly instead of from a
/// table of size q*rho.
inline ExpSumValue constrained_U(i64 gamma, i64 mu, i64 rho, i64 q) {
    if (q <= 0 || rho <= 0) throw precondition_error("constrained_U: q and rho must be positive");
    if (q % rho != 0) throw precondition_error("constrained_U: rho must divide q");
    if (rho % 3 == 0) throw precondition_error("constrained_U: 3 must not divide rho");
    const i64 m = q * rho;
    std::complex<double> sum{};
    std::size_t terms = 0;
    for (i64 u = 0; u < q; ++u) {
        if (arith::gcd(u, q) != 1) continue;
        const i64 ubar = arith::mod_inverse(u, m);
        const i64 g_ubar2 = mulmod(gamma, mulmod(ubar, ubar, m), m);
        if (arith::reduce(mulmod(mu, u, m) - g_ubar2, rho) != 0) continue;
        sum += RootTable::root((g_ubar2 + mulmod(2 * arith::reduce(mu, m), u, m)) % m, m);
        ++terms;
    }
    return ExpSumValue::from(sum, terms);
}

}  // namespace lcentral::expsum
