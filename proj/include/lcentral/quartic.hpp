#pragma once

/**
 * @file quartic.hpp
 * @brief The quartic Kloosterman average
 *
 *   G_q(b1,b2,b3,b4) = sum_{h mod q} prod_i S(h, bbar_i; q)
 *
 * with its sweep over the box 1 <= b_i <= B, the counting functions that
 * control it on q = rho^2 and q = rho^2 rho*, and the three-term envelope
 *
 *   A(q) = sum* |G_q(b)|  <<  B^4 q^{5/2} q°^{-1/2} + B^2 q^3 q° + B q^{7/2} q°^{1/2}.
 *
 * The h-sum runs over every residue including h = 0.
 */

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "lcentral/arith.hpp"
#include "lcentral/expsum.hpp"
#include "lcentral/harness/parallel.hpp"
#include "lcentral/roots.hpp"
#include "lcentral/stats.hpp"

namespace lcentral::quartic {

using arith::i64;
using expsum::ExpSumValue;

struct BTuple {
    std::array<i64, 4> b{1, 1, 1, 1};

    i64 operator[](std::size_t i) const { return b[i]; }
    friend bool operator==(const BTuple&, const BTuple&) = default;
    friend auto operator<=>(const BTuple&, const BTuple&) = default;

    bool coprime_to(i64 q) const {
        for (i64 x : b) {
            if (arith::gcd(x, q) != 1) return false;
        }
        return true;
    }
};

namespace detail {

inline void require_coprime(const BTuple& t, i64 q, const char* who) {
    if (!t.coprime_to(q)) {
        throw not_coprime_error(std::string(who) + ": every b_i must be coprime to " + std::to_string(q));
    }
}

}  // namespace detail

/// Real Kloosterman values S(h, bbar; q) for all h mod q, one column per b.
class KloostermanMatrix {
public:
    KloostermanMatrix(i64 q, std::span<const i64> bs) : q_(q), bs_(bs.begin(), bs.end()) {
        const RootTable roots(q);
        const UnitTable units(q);
        cols_.assign(bs_.size(), std::vector<double>(static_cast<std::size_t>(q)));
        for (std::size_t j = 0; j < bs_.size(); ++j) {
            const i64 bbar = arith::mod_inverse(bs_[j], q);
            // S(h, bbar) = sum_x e(bbar xbar) e(h x): accumulate the x-phases once,
            // then take the h-transform.
            std::vector<std::complex<double>> weight(units.units.size());
            for (std::size_t k = 0; k < units.units.size(); ++k) {
                weight[k] = roots.at(expsum::mulmod(bbar, units.inverses[k], q));
            }
            for (i64 h = 0; h < q; ++h) {
                double acc = 0.0;
                for (std::size_t k = 0; k < units.units.size(); ++k) {
                    const auto r = roots.at(expsum::mulmod(h, units.units[k], q));
                    acc += weight[k].real() * r.real() - weight[k].imag() * r.imag();
                }
                cols_[j][static_cast<std::size_t>(h)] = acc;
            }
        }
        term_err_ = static_cast<double>(units.units.size()) * expsum::root_precision;
    }

    i64 modulus() const { return q_; }
    std::size_t columns() const { return bs_.size(); }
    i64 b(std::size_t j) const { return bs_[j]; }
    std::span<const double> column(std::size_t j) const { return cols_[j]; }

    /// G for the column indices (j1, j2, j3, j4).
    double g(std::size_t j1, std::size_t j2, std::size_t j3, std::size_t j4) const {
        const double* c1 = cols_[j1].data();
        const double* c2 = cols_[j2].data();
        const double* c3 = cols_[j3].data();
        const double* c4 = cols_[j4].data();
        double acc = 0.0;
        for (i64 h = 0; h < q_; ++h) acc += c1[h] * c2[h] * c3[h] * c4[h];
        return acc;
    }

    /// Worst-case error of g(): q products of four sums of phi(q) terms.
    double g_err() const {
        const double s = static_cast<double>(q_);  // |S| <= phi(q) < q
        return static_cast<double>(q_) * 4.0 * s * s * s * term_err_;
    }

private:
    i64 q_;
    std::vector<i64> bs_;
    std::vector<std::vector<double>> cols_;
    double term_err_ = 0.0;
};

/// G_q(b) directly from four Kloosterman sums per h, with error propagation.
inline ExpSumValue g_naive(i64 q, const BTuple& t) {
    if (q <= 0) throw precondition_error("g_naive: q must be positive");
    detail::require_coprime(t, q, "g_naive");
    const RootTable roots(q);
    const UnitTable units(q);
    std::array<i64, 4> bbar{};
    for (std::size_t i = 0; i < 4; ++i) bbar[i] = arith::mod_inverse(t[i], q);

    std::complex<double> sum{};
    double err = 0.0;
    for (i64 h = 0; h < q; ++h) {
        std::complex<double> prod{1.0, 0.0};
        double bound = 1.0, perr = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const auto s = expsum::kloosterman_naive(h, bbar[i], roots, units);
            perr = perr * (s.abs() + s.err) + bound * s.err;
            bound *= s.abs() + s.err;
            prod *= s.value();
        }
        sum += prod;
        err += perr;
    }
    return {sum.real(), sum.imag(), err};
}

struct SweepEntry {
    BTuple b;
    double g = 0.0;  // G_q(b), real

    double abs() const { return std::abs(g); }
};

struct SweepResult {
    i64 q = 1;
    i64 bmax = 1;
    std::vector<SweepEntry> entries;  // lexicographic in (b1, b2, b3, b4)
    std::size_t skipped = 0;          // tuples with some gcd(b_i, q) > 1
    double err = 0.0;                 // per-entry error bound
};

/// Every G_q(b) with 1 <= b_i <= bmax and all b_i coprime to q. The Kloosterman
/// matrix is built once on the calling thread; the b1 index is split over workers.
inline SweepResult g_sweep(i64 q, i64 bmax, unsigned threads = 1) {
    if (q <= 0 || bmax <= 0) throw precondition_error("g_sweep: q and B must be positive");
    if (bmax > q) throw precondition_error("g_sweep: B must not exceed q");

    std::vector<i64> bs;
    for (i64 b = 1; b <= bmax; ++b) {
        if (arith::gcd(b, q) == 1) bs.push_back(b);
    }
    const KloostermanMatrix mat(q, bs);
    const std::size_t n = bs.size();

    SweepResult out;
    out.q = q;
    out.bmax = bmax;
    const auto box = static_cast<std::size_t>(bmax);
    out.skipped = box * box * box * box - n * n * n * n;
    out.err = mat.g_err();
    out.entries.resize(n * n * n * n);

    harness::parallel_for(n, threads, [&](std::size_t j1) {
        std::vector<double> p12(static_cast<std::size_t>(q));
        std::size_t slot = j1 * n * n * n;
        const auto c1 = mat.column(j1);
        for (std::size_t j2 = 0; j2 < n; ++j2) {
            const auto c2 = mat.column(j2);
            for (std::size_t h = 0; h < p12.size(); ++h) p12[h] = c1[h] * c2[h];
            for (std::size_t j3 = 0; j3 < n; ++j3) {
                const auto c3 = mat.column(j3);
                for (std::size_t j4 = 0; j4 < n; ++j4) {
                    const auto c4 = mat.column(j4);
                    double acc = 0.0;
                    for (std::size_t h = 0; h < p12.size(); ++h) acc += p12[h] * (c3[h] * c4[h]);
                    out.entries[slot++] = {BTuple{{bs[j1], bs[j2], bs[j3], bs[j4]}}, acc};
                }
            }
        }
    });
    return out;
}

/// A(q) = sum of |G_q(b)| over the coprime part of the box [1, B]^4.
inline double a_sum(const SweepResult& sweep) {
    std::vector<double> mags(sweep.entries.size());
    for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = sweep.entries[i].abs();
    return harness::tree_sum(mags);
}

inline double a_sum(i64 q, i64 bmax, unsigned threads = 1) { return a_sum(g_sweep(q, bmax, threads)); }

/// B^4 q^{5/2} q°^{-1/2} + B^2 q^3 q° + B q^{7/2} q°^{1/2}.
inline double theorem12_envelope(i64 q, i64 bmax) {
    if (q <= 0 || bmax <= 0) throw precondition_error("theorem12_envelope: q and B must be positive");
    if (bmax > q) throw precondition_error("theorem12_envelope: B must not exceed q");
    const double qr = static_cast<double>(arith::factor(static_cast<arith::u64>(q)).qring);
    const double qd = static_cast<double>(q), b = static_cast<double>(bmax);
    return b * b * b * b * std::pow(qd, 2.5) / std::sqrt(qr) + b * b * qd * qd * qd * qr +
           b * std::pow(qd, 3.5) * std::sqrt(qr);
}

// ---------------------------------------------------------------------------
// Structure of the b-tuples

/// True iff every b_i agrees mod p with some other b_j (the paired set D(p)).
inline bool in_D(i64 p, const BTuple& t) {
    if (p < 2 || !arith::is_prime(static_cast<arith::u64>(p))) throw precondition_error("in_D: p must be prime");
    for (std::size_t i = 0; i < 4; ++i) {
        bool paired = false;
        for (std::size_t j = 0; j < 4 && !paired; ++j) {
            paired = j != i && arith::reduce(t[i] - t[j], p) == 0;
        }
        if (!paired) return false;
    }
    return true;
}

namespace detail {

// Number of (x1..x4), x_i in lists[i], with x1+x2+x3+x4 = 0 mod m.
inline i64 count_zero_sum(const std::array<std::vector<i64>, 4>& lists, i64 m) {
    std::vector<i64> h12(static_cast<std::size_t>(m), 0), h34(static_cast<std::size_t>(m), 0);
    for (i64 x : lists[0])
        for (i64 y : lists[1]) ++h12[static_cast<std::size_t>((x + y) % m)];
    for (i64 x : lists[2])
        for (i64 y : lists[3]) ++h34[static_cast<std::size_t>((x + y) % m)];
    i64 count = 0;
    for (i64 r = 0; r < m; ++r) {
        count += h12[static_cast<std::size_t>(r)] * h34[static_cast<std::size_t>(arith::reduce(-r, m))];
    }
    return count;
}

}  // namespace detail

/// N1(rho): #{s, s_i units mod rho : sum s_i = 0, s s_i^2 = bbar_i (mod rho)}.
inline i64 n1_count(i64 rho, const BTuple& t) {
    if (rho <= 0) throw precondition_error("n1_count: rho must be positive");
    detail::require_coprime(t, rho, "n1_count");
    const UnitTable units(rho);
    std::array<i64, 4> bbar{};
    for (std::size_t i = 0; i < 4; ++i) bbar[i] = arith::mod_inverse(t[i], rho);

    i64 total = 0;
    for (i64 s : units.units) {
        std::array<std::vector<i64>, 4> lists;
        for (i64 si : units.units) {
            const i64 lhs = expsum::mulmod(s, expsum::mulmod(si, si, rho), rho);
            for (std::size_t i = 0; i < 4; ++i) {
                if (lhs == bbar[i]) lists[i].push_back(si);
            }
        }
        total += detail::count_zero_sum(lists, rho);
    }
    return total;
}

/// Membership in the N2 set for arbitrary integer representatives of u, u_i:
/// u u_i = bbar_i ubar_i (mod rho) and sum (u u_i + bbar_i ubar_i) = 0 (mod rho rho*),
/// inverses taken mod rho rho*.
inline bool n2_member(i64 rho, i64 rhostar, const BTuple& t, i64 u, const std::array<i64, 4>& us) {
    const i64 m = rho * rhostar;
    if (arith::gcd(u, rho) != 1) return false;
    i64 total = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (arith::gcd(us[i], rho) != 1) return false;
        const i64 bbar = arith::mod_inverse(t[i], m);
        const i64 ubar = arith::mod_inverse(us[i], m);
        const i64 left = expsum::mulmod(u, us[i], m);
        const i64 right = expsum::mulmod(bbar, ubar, m);
        if (arith::reduce(left - right, rho) != 0) return false;
        total = (total + left + right) % m;
    }
    return total == 0;
}

/// N2(rho): count of (u, u_1..u_4) units mod rho in the N2 set, using
/// canonical representatives in [0, rho). rhostar must be the radical of rho.
inline i64 n2_count(i64 rho, i64 rhostar, const BTuple& t) {
    if (rho <= 0 || rhostar <= 0) throw precondition_error("n2_count: rho and rho* must be positive");
    if (arith::factor(static_cast<arith::u64>(rho)).qstar != rhostar) {
        throw precondition_error("n2_count: rho* must be the radical of rho");
    }
    const i64 m = rho * rhostar;
    detail::require_coprime(t, m, "n2_count");
    const UnitTable units(rho);
    std::array<i64, 4> bbar{};
    for (std::size_t i = 0; i < 4; ++i) bbar[i] = arith::mod_inverse(t[i], m);
    std::vector<i64> ubar_m(units.units.size());
    for (std::size_t k = 0; k < units.units.size(); ++k) ubar_m[k] = arith::mod_inverse(units.units[k], m);

    i64 total = 0;
    for (i64 u : units.units) {
        std::array<std::vector<i64>, 4> lists;  // values u u_i + bbar_i ubar_i mod m
        for (std::size_t k = 0; k < units.units.size(); ++k) {
            const i64 left = expsum::mulmod(u, units.units[k], m);
            for (std::size_t i = 0; i < 4; ++i) {
                const i64 right = expsum::mulmod(bbar[i], ubar_m[k], m);
                if (arith::reduce(left - right, rho) == 0) lists[i].push_back((left + right) % m);
            }
        }
        total += detail::count_zero_sum(lists, m);
    }
    return total;
}

// ---------------------------------------------------------------------------

struct BoundPoint {
    i64 q = 1;
    i64 bmax = 1;
    double value = 0.0;
    double envelope = 1.0;
    double ratio = 0.0;
};

struct BoundReport {
    std::vector<BoundPoint> grid;
    double fitted_slope = 0.0;  // log(ratio) against log(q)
    double max_ratio = 0.0;
};

/// A(q) against its envelope on a q-grid with B = min(q, bcap).
inline BoundReport theorem12_report(std::span<const i64> qs, i64 bcap, unsigned threads = 1) {
    BoundReport report;
    std::vector<double> xs, ys;
    for (i64 q : qs) {
        const i64 bmax = std::min(q, bcap);
        BoundPoint pt{q, bmax, a_sum(q, bmax, threads), theorem12_envelope(q, bmax), 0.0};
        pt.ratio = pt.value / pt.envelope;
        report.max_ratio = std::max(report.max_ratio, pt.ratio);
        report.grid.push_back(pt);
        xs.push_back(static_cast<double>(q));
        ys.push_back(pt.ratio);
    }
    if (xs.size() >= 2) report.fitted_slope = fit_loglog(xs, ys).slope;
    return report;
}

}  // namespace lcentral::quartic
