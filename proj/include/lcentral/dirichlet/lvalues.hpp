#pragma once

/**
 * @file lvalues.hpp
 * @brief Central values L(1/2, chi) by two independent routes.
 *
 * Hurwitz route:  L(1/2, chi) = q^{-1/2} sum_{a=1}^{q} chi(a) zeta(1/2, a/q),
 *                 with zeta(s, x) by Euler-Maclaurin.
 * AFE route:      |L(1/2, chi)|^2 = 2 sum_{n1,n2} chi(n1) conj(chi(n2)) (n1 n2)^{-1/2} V(n1 n2 / q),
 *                 V(x) = (1/2 pi i) int_{(2)} G(s)^2/G(1/4)^2 (pi x)^{-s} ds/s,  G = Gamma(s/2 + 1/4),
 *                 by trapezoidal quadrature on Re s = 2.
 */

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "lcentral/arith.hpp"
#include "lcentral/dirichlet/characters.hpp"

namespace lcentral::dirichlet {

namespace detail {

// B_{2k} for k = 1..12.
inline constexpr std::array<double, 12> bernoulli_even{
    1.0 / 6.0,           -1.0 / 30.0,     1.0 / 42.0,       -1.0 / 30.0,
    5.0 / 66.0,          -691.0 / 2730.0, 7.0 / 6.0,        -3617.0 / 510.0,
    43867.0 / 798.0,     -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0};

}  // namespace detail

/// log Gamma(z) for Re z > 0 (any branch; callers only exponentiate).
inline std::complex<double> lgamma_complex(std::complex<double> z) {
    std::complex<double> shift_sum{};
    while (z.real() < 15.0) {
        shift_sum += std::log(z);
        z += 1.0;
    }
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    std::complex<double> series{};
    std::complex<double> power = inv;
    for (std::size_t k = 1; k <= 8; ++k) {
        const double b = detail::bernoulli_even[k - 1];
        series += b / static_cast<double>(2 * k * (2 * k - 1)) * power;
        power *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift_sum;
}

/// Hurwitz zeta(s, x) for real s != 1 and x > 0, to ~1e-15 relative.
inline double hurwitz_zeta(double s, double x) {
    if (x <= 0) throw precondition_error("hurwitz_zeta: x must be positive");
    if (s == 1.0) throw precondition_error("hurwitz_zeta: pole at s = 1");
    constexpr int n_direct = 20;
    double sum = 0.0;
    for (int n = 0; n < n_direct; ++n) sum += std::pow(n + x, -s);
    const double a = n_direct + x;
    sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    // sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * a^{-s-2k+1}
    double rising = s;                     // s (s+1) ... (s+2k-2)
    double fact = 2.0;                     // (2k)!
    double apow = std::pow(a, -s - 1.0);   // a^{-s-2k+1}
    for (std::size_t k = 1; k <= detail::bernoulli_even.size(); ++k) {
        sum += detail::bernoulli_even[k - 1] / fact * rising * apow;
        const double m = static_cast<double>(2 * k);
        rising *= (s + m - 1.0) * (s + m);
        fact *= (m + 1.0) * (m + 2.0);
        apow /= a * a;
    }
    return sum;
}

/// zeta(1/2, a/q) for a = 1..q; shared by every character mod q.
class HurwitzTable {
public:
    explicit HurwitzTable(arith::i64 q) : q_(q), values_(static_cast<std::size_t>(q) + 1, 0.0) {
        for (arith::i64 a = 1; a <= q; ++a) {
            values_[static_cast<std::size_t>(a)] = hurwitz_zeta(0.5, static_cast<double>(a) / static_cast<double>(q));
        }
    }

    arith::i64 modulus() const { return q_; }

    /// L(1/2, chi) for any character mod q (q = 1 gives zeta(1/2)).
    std::complex<double> central_value(const CharacterTable& chi) const {
        if (chi.q != q_) throw precondition_error("HurwitzTable: character modulus mismatch");
        std::complex<double> sum{};
        for (arith::i64 a = 1; a <= q_; ++a) sum += chi(a) * values_[static_cast<std::size_t>(a)];
        return sum / std::sqrt(static_cast<double>(q_));
    }

private:
    arith::i64 q_;
    std::vector<double> values_;
};

/// The AFE weight V(x) for even (Gamma(s/2+1/4)) or odd (Gamma(s/2+3/4)) characters.
/// The Gamma ratio is tabulated once at the quadrature nodes; each V(x) is then
/// a weighted sum of (pi x)^{-s}.
class VWeight {
public:
    static constexpr double line = 2.0;     // Re s
    static constexpr double cutoff = 60.0;  // |Im s| truncation
    static constexpr double step = 0.05;

    explicit VWeight(Parity parity = Parity::even) {
        const double shift = parity == Parity::even ? 0.25 : 0.75;
        const std::complex<double> norm = 2.0 * lgamma_complex({shift, 0.0});
        const int n = static_cast<int>(std::lround(cutoff / step));
        for (int k = -n; k <= n; ++k) {
            const std::complex<double> s{line, k * step};
            const double w = (k == -n || k == n) ? 0.5 : 1.0;
            nodes_.push_back(s);
            weights_.push_back(w * std::exp(2.0 * lgamma_complex(s / 2.0 + shift) - norm) / s);
        }
    }

    /// Full quadrature value; the imaginary part vanishes by conjugate symmetry.
    std::complex<double> evaluate(double x) const {
        if (!(x > 0)) throw precondition_error("v_weight: x must be positive");
        const double log_pix = std::log(std::numbers::pi * x);
        std::complex<double> sum{};
        for (std::size_t k = 0; k < nodes_.size(); ++k) sum += weights_[k] * std::exp(-nodes_[k] * log_pix);
        return sum * (step / (2.0 * std::numbers::pi));
    }

    double operator()(double x) const { return evaluate(x).real(); }

    /// Smallest x (to 1e-6 relative) beyond which V(x) < tol; V is decreasing.
    double tail_start(double tol) const {
        double lo = 1e-3, hi = 1.0;
        while ((*this)(hi) >= tol) hi *= 2.0;
        while (hi - lo > 1e-6 * hi) {
            const double mid = 0.5 * (lo + hi);
            ((*this)(mid) >= tol ? lo : hi) = mid;
        }
        return hi;
    }

private:
    std::vector<std::complex<double>> nodes_;
    std::vector<std::complex<double>> weights_;
};

inline double v_weight(double x, Parity parity = Parity::even) {
    static const VWeight even(Parity::even);
    static const VWeight odd(Parity::odd);
    return parity == Parity::even ? even(x) : odd(x);
}

/// |L(1/2, chi)|^2 by the approximate functional equation, for primitive
/// characters mod q. V(m/q) is cached for every m up to the truncation point.
class AfeEvaluator {
public:
    static constexpr double truncation = 1e-15;

    explicit AfeEvaluator(arith::i64 q, Parity parity = Parity::even) : q_(q), parity_(parity) {
        const VWeight v(parity);
        const double x_end = v.tail_start(truncation);
        length_ = static_cast<arith::i64>(std::ceil(x_end * static_cast<double>(q)));
        weights_.assign(static_cast<std::size_t>(length_) + 1, 0.0);
        for (arith::i64 m = 1; m <= length_; ++m) {
            weights_[static_cast<std::size_t>(m)] =
                v(static_cast<double>(m) / static_cast<double>(q)) / std::sqrt(static_cast<double>(m));
        }
    }

    arith::i64 length() const { return length_; }

    double modulus_squared(const CharacterTable& chi) const {
        if (chi.q != q_) throw precondition_error("AfeEvaluator: character modulus mismatch");
        if (!chi.primitive) throw precondition_error("l_central(afe): character must be primitive");
        if (chi.is_principal()) throw precondition_error("l_central: principal character rejected");
        if (chi.parity != parity_) throw precondition_error("AfeEvaluator: parity mismatch");
        // c(m) = sum_{d | m} chi(d) conj(chi(m/d)); real by d <-> m/d.
        std::vector<std::complex<double>> coeff(static_cast<std::size_t>(length_) + 1);
        for (arith::i64 d = 1; d <= length_; ++d) {
            const auto cd = chi(d);
            if (cd == 0.0) continue;
            for (arith::i64 k = 1; d * k <= length_; ++k) {
                coeff[static_cast<std::size_t>(d * k)] += cd * std::conj(chi(k));
            }
        }
        double sum = 0.0;
        for (arith::i64 m = 1; m <= length_; ++m) {
            sum += coeff[static_cast<std::size_t>(m)].real() * weights_[static_cast<std::size_t>(m)];
        }
        return 2.0 * sum;
    }

private:
    arith::i64 q_;
    Parity parity_;
    arith::i64 length_ = 0;
    std::vector<double> weights_;
};

enum class LMethod { hurwitz, afe };

/// hurwitz: L(1/2, chi) (complex). afe: |L(1/2, chi)|^2 in the real part.
inline std::complex<double> l_central(const CharacterTable& chi, LMethod method) {
    if (method == LMethod::hurwitz) {
        if (chi.q > 1 && chi.is_principal()) throw precondition_error("l_central: principal character rejected");
        return HurwitzTable(chi.q).central_value(chi);
    }
    if (!chi.primitive) throw precondition_error("l_central(afe): character must be primitive");
    return AfeEvaluator(chi.q, chi.parity).modulus_squared(chi);
}

}  // namespace lcentral::dirichlet
