#pragma once

/**
 * @file arith.hpp
 * @brief Exact integer arithmetic for residue rings Z/qZ.
 *
 * Factorization of 64-bit moduli, modular inverses, CRT, the classical
 * multiplicative functions, and the modulus decompositions used by the
 * Kloosterman-sum machinery:
 *
 *   q*  radical (product of the distinct primes of q)
 *   q°  odd-power kernel (product of p with p^e || q, e odd, e >= 3)
 *   q = rho * c^2 * (d^2 d*)   or   q = rho * (3 c^2) * (d^2 d*)
 *
 * Residues are always canonical in [0, q).
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lcentral {

/// A precondition on an argument was violated.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two integers that had to be coprime were not.
class not_coprime_error : public precondition_error {
public:
    using precondition_error::precondition_error;
};

namespace arith {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 max_modulus = u64{1} << 63;

constexpr u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Canonical representative of a in [0, q).
constexpr i64 reduce(i64 a, i64 q) {
    i64 r = a % q;
    return r < 0 ? r + q : r;
}

/// gcd with the convention gcd(0, n) = n.
constexpr i64 gcd(i64 a, i64 b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

constexpr i64 gcd3(i64 a, i64 b, i64 c) { return gcd(gcd(a, b), c); }

/// Inverse of a modulo q in [0, q). Throws not_coprime_error if gcd(a, q) != 1.
inline i64 mod_inverse(i64 a, i64 q) {
    if (q <= 0) throw precondition_error("mod_inverse: modulus must be positive");
    if (q == 1) return 0;
    i64 r0 = reduce(a, q), r1 = q;
    i64 s0 = 1, s1 = 0;
    while (r1 != 0) {
        i64 t = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - t * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - t * s1};
    }
    if (r0 != 1) {
        throw not_coprime_error("mod_inverse: " + std::to_string(a) + " is not invertible mod " +
                                std::to_string(q));
    }
    return reduce(s0, q);
}

/// The unique residue mod q1*q2 congruent to r1 mod q1 and r2 mod q2.
inline i64 crt_pair(i64 r1, i64 q1, i64 r2, i64 q2) {
    if (q1 <= 0 || q2 <= 0) throw precondition_error("crt_pair: moduli must be positive");
    if (gcd(q1, q2) != 1) throw not_coprime_error("crt_pair: moduli are not coprime");
    r1 = reduce(r1, q1);
    // x = r1 + q1 * ((r2 - r1) * q1^{-1} mod q2)
    const i64 inv = mod_inverse(q1, q2);
    const i64 diff = reduce(r2 - r1, q2);
    const i64 t = static_cast<i64>(mulmod(static_cast<u64>(diff), static_cast<u64>(inv),
                                          static_cast<u64>(q2)));
    return r1 + q1 * t;
}

namespace detail {

// Deterministic for all 64-bit n with these bases.
inline bool miller_rabin(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2u, 325u, 9375u, 28178u, 450775u, 9780504u, 1795265022u}) {
        u64 x = powmod(a % n, d, n);
        if (a % n == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Brent's variant of Pollard rho; n odd composite.
inline u64 pollard_brent(u64 n) {
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void split_large(u64 n, std::vector<u64>& primes) {
    if (n == 1) return;
    if (miller_rabin(n)) {
        primes.push_back(n);
        return;
    }
    const u64 d = pollard_brent(n);
    split_large(d, primes);
    split_large(n / d, primes);
}

}  // namespace detail

inline bool is_prime(u64 n) { return detail::miller_rabin(n); }

struct PrimePower {
    i64 prime;
    int exponent;
    i64 value;  // prime^exponent

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A modulus together with its factorization and derived parts.
struct FactoredModulus {
    i64 q = 1;
    std::vector<PrimePower> factors;  // primes strictly increasing
    i64 qstar = 1;                    // radical
    i64 qring = 1;                    // odd-power kernel
    i64 phi = 1;                      // Euler totient
    i64 phistar = 1;                  // number of primitive characters mod q
};

/// Full factorization of 1 <= n <= 2^63: trial division to 10^6, then
/// Miller-Rabin / Pollard rho on the cofactor.
inline FactoredModulus factor(u64 n) {
    if (n == 0) throw precondition_error("factor: n must be >= 1");
    if (n > max_modulus) throw precondition_error("factor: n exceeds the 2^63 ceiling");

    std::vector<u64> primes;
    u64 m = n;
    for (u64 p = 2; p <= 1'000'000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            primes.push_back(p);
            m /= p;
        }
    }
    if (m > 1) detail::split_large(m, primes);
    std::sort(primes.begin(), primes.end());

    FactoredModulus fm;
    fm.q = static_cast<i64>(n);
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        i64 value = 1;
        while (j < primes.size() && primes[j] == primes[i]) {
            value *= static_cast<i64>(primes[j]);
            ++j;
        }
        fm.factors.push_back({static_cast<i64>(primes[i]), static_cast<int>(j - i), value});
        i = j;
    }
    for (const auto& f : fm.factors) {
        const i64 p = f.prime;
        const i64 pe1 = f.value / p;  // p^{e-1}
        fm.qstar *= p;
        if (f.exponent % 2 == 1 && f.exponent >= 3) fm.qring *= p;
        fm.phi *= pe1 * (p - 1);
        // primitive characters mod p^e: p-2 for e = 1, p^{e-2}(p-1)^2 for e >= 2
        fm.phistar *= (f.exponent == 1) ? (p - 2) : (pe1 / p) * (p - 1) * (p - 1);
    }
    return fm;
}

/// Moebius function.
inline int mobius(i64 n) {
    if (n <= 0) throw precondition_error("mobius: n must be positive");
    int sign = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    return n > 1 ? -sign : sign;
}

inline i64 euler_phi(i64 n) { return factor(static_cast<u64>(n)).phi; }

/// Number of divisors d(n).
inline i64 divisor_count(const FactoredModulus& fm) {
    i64 d = 1;
    for (const auto& f : fm.factors) d *= f.exponent + 1;
    return d;
}

/// All positive divisors of fm.q in increasing order.
inline std::vector<i64> divisors(const FactoredModulus& fm) {
    std::vector<i64> out{1};
    for (const auto& f : fm.factors) {
        const std::size_t n = out.size();
        i64 pk = 1;
        for (int k = 1; k <= f.exponent; ++k) {
            pk *= f.prime;
            for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// q = rho * c^2 * (d^2 d*), or q = rho * (3 c^2) * (d^2 d*) when 3^{2k+1} || q, k >= 1.
struct SixOneDecomposition {
    i64 rho = 1;    // square-free part: primes with exponent 1
    i64 c = 1;      // c^2 collects even prime powers (and 3^{2k+1} as 3 c^2)
    i64 d = 1;      // d^2 d* collects the remaining odd powers >= 3
    i64 dstar = 1;  // radical of d^2 d*
    bool three_odd = false;

    i64 c_part() const { return three_odd ? 3 * c * c : c * c; }
    i64 d_part() const { return d * d * dstar; }
};

inline SixOneDecomposition decompose_six_one(const FactoredModulus& fm) {
    SixOneDecomposition out;
    for (const auto& f : fm.factors) {
        const i64 p = f.prime;
        if (f.exponent == 1) {
            out.rho *= p;
        } else if (f.exponent % 2 == 0) {
            for (int k = 0; k < f.exponent / 2; ++k) out.c *= p;
        } else if (p == 3) {
            // 3^{2k+1} = 3 * (3^k)^2
            out.three_odd = true;
            for (int k = 0; k < (f.exponent - 1) / 2; ++k) out.c *= 3;
        } else {
            for (int k = 0; k < (f.exponent - 1) / 2; ++k) out.d *= p;
            out.dstar *= p;
        }
    }
    return out;
}

}  // namespace arith
}  // namespace lcentral
