#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "lcentral/arith.hpp"

namespace lcentral {

/// e_n(k) = exp(2 pi i k / n) for every residue k mod n, built once per modulus
/// and shared read-only afterwards.
class RootTable {
public:
    explicit RootTable(arith::i64 n) : n_(n) {
        if (n <= 0) throw precondition_error("RootTable: modulus must be positive");
        table_.resize(static_cast<std::size_t>(n));
        for (arith::i64 k = 0; k < n; ++k) table_[static_cast<std::size_t>(k)] = root(k, n);
    }

    arith::i64 modulus() const { return n_; }

    /// e_n(k) for any integer k.
    std::complex<double> operator()(arith::i64 k) const {
        return table_[static_cast<std::size_t>(arith::reduce(k, n_))];
    }

    /// e_n(k) for k already in [0, n).
    std::complex<double> at(arith::i64 k) const { return table_[static_cast<std::size_t>(k)]; }

    /// Direct evaluation, exact up to the last ulp of cos/sin. Symmetric
    /// reduction keeps the argument in [-pi, pi].
    static std::complex<double> root(arith::i64 k, arith::i64 n) {
        k = arith::reduce(k, n);
        if (2 * k > n) k -= n;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        return {std::cos(angle), std::sin(angle)};
    }

private:
    arith::i64 n_;
    std::vector<std::complex<double>> table_;
};

/// Units of Z/qZ with their inverses, in increasing order.
struct UnitTable {
    arith::i64 q;
    std::vector<arith::i64> units;
    std::vector<arith::i64> inverses;

    explicit UnitTable(arith::i64 modulus) : q(modulus) {
        for (arith::i64 x = 0; x < q; ++x) {
            if (arith::gcd(x, q) != 1) continue;
            units.push_back(x);
            inverses.push_back(arith::mod_inverse(x, q));
        }
    }
};

}  // namespace lcentral
