#pragma once

/**
 * @file characters.hpp
 * @brief Dirichlet characters modulo q.
 *
 * (Z/qZ)^* is split by CRT into prime-power groups. Odd p^e is cyclic with a
 * primitive root; 2^e (e >= 3) is <-1> x <5>. A character is a choice of
 * exponent j_k for every cyclic generator, so chi(a) = e(sum_k j_k log_k(a) / n_k).
 * Phases are kept as exact integers modulo the group exponent L and only
 * turned into complex numbers at the end.
 */

#include <complex>
#include <cstdint>
#include <memory>
#include <numeric>
#include <vector>

#include "lcentral/arith.hpp"
#include "lcentral/roots.hpp"

namespace lcentral::dirichlet {

using arith::i64;

enum class Parity { even, odd };

/// One Dirichlet character mod q as a full value table.
struct CharacterTable {
    i64 q = 1;
    std::vector<std::complex<double>> values;  // chi(a), 0 when gcd(a, q) > 1
    Parity parity = Parity::even;
    i64 conductor = 1;
    bool primitive = true;
    i64 index = 0;  // position in the CharacterGroup enumeration

    std::complex<double> operator()(i64 a) const {
        return values[static_cast<std::size_t>(arith::reduce(a, q))];
    }

    bool is_principal() const {
        for (i64 a = 0; a < q; ++a) {
            const auto v = values[static_cast<std::size_t>(a)];
            if (v != 0.0 && std::abs(v - 1.0) > 1e-12) return false;
        }
        return true;
    }
};

namespace detail {

inline i64 primitive_root_mod_prime(i64 p) {
    if (p == 2) return 1;
    const auto fm = arith::factor(static_cast<arith::u64>(p - 1));
    for (i64 g = 2;; ++g) {
        bool ok = true;
        for (const auto& f : fm.factors) {
            if (arith::powmod(static_cast<arith::u64>(g), static_cast<arith::u64>((p - 1) / f.prime),
                              static_cast<arith::u64>(p)) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
}

}  // namespace detail

/// The character group mod q, enumerable by index in [0, phi(q)).
class CharacterGroup {
public:
    explicit CharacterGroup(i64 q) : q_(q), fm_(arith::factor(static_cast<arith::u64>(q))) {
        for (const auto& f : fm_.factors) add_component(f);
        exponent_ = 1;
        for (const auto& g : gens_) exponent_ = std::lcm(exponent_, g.order);
        roots_ = std::make_shared<const RootTable>(exponent_);
    }

    i64 modulus() const { return q_; }
    const arith::FactoredModulus& factored() const { return fm_; }
    i64 size() const { return fm_.phi; }

    i64 conductor(i64 index) const {
        const auto js = split(index);
        i64 cond = 1;
        for (const auto& comp : comps_) {
            if (comp.num_gens == 0) continue;  // mod 2: trivial group
            if (comp.prime != 2) {
                const auto& g0 = gens_[comp.first_gen];
                const i64 j = js[comp.first_gen];
                const i64 ord = g0.order / std::gcd(j, g0.order);
                if (ord == 1) continue;
                i64 c = comp.prime;
                for (i64 o = ord; o % comp.prime == 0; o /= comp.prime) c *= comp.prime;
                cond *= c;
            } else if (comp.num_gens == 1) {  // mod 4
                if (js[comp.first_gen] != 0) cond *= 4;
            } else if (comp.num_gens == 2) {  // mod 2^e, e >= 3
                const i64 jsign = js[comp.first_gen];
                const auto& g5 = gens_[comp.first_gen + 1];
                const i64 j5 = js[comp.first_gen + 1];
                const i64 ord5 = g5.order / std::gcd(j5, g5.order);
                if (ord5 == 1) {
                    if (jsign != 0) cond *= 4;
                } else {
                    cond *= 4 * ord5;
                }
            }
        }
        return cond;
    }

    Parity parity(i64 index) const {
        if (q_ <= 2) return Parity::even;
        return phase(split(index), q_ - 1) == 0 ? Parity::even : Parity::odd;
    }

    bool primitive(i64 index) const { return conductor(index) == q_; }

    CharacterTable character(i64 index) const {
        const auto js = split(index);
        CharacterTable chi;
        chi.q = q_;
        chi.index = index;
        chi.values.assign(static_cast<std::size_t>(q_), {0.0, 0.0});
        for (i64 a = 0; a < q_; ++a) {
            if (arith::gcd(a, q_) != 1) continue;
            chi.values[static_cast<std::size_t>(a)] = roots_->at(phase(js, a));
        }
        chi.conductor = conductor(index);
        chi.primitive = chi.conductor == q_;
        chi.parity = parity(index);
        return chi;
    }

    std::vector<CharacterTable> all() const {
        std::vector<CharacterTable> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (i64 i = 0; i < size(); ++i) out.push_back(character(i));
        return out;
    }

    /// Indices of the even primitive characters, in enumeration order.
    std::vector<i64> even_primitive_indices() const {
        std::vector<i64> out;
        for (i64 i = 0; i < size(); ++i) {
            if (parity(i) == Parity::even && primitive(i)) out.push_back(i);
        }
        return out;
    }

private:
    struct Generator {
        i64 order;
        std::vector<i64> log;  // discrete log of every residue mod the component modulus
    };
    struct Component {
        i64 prime;
        i64 modulus;
        std::size_t first_gen;
        std::size_t num_gens;
    };

    void add_component(const arith::PrimePower& f) {
        const i64 p = f.prime, pe = f.value;
        Component comp{p, pe, gens_.size(), 0};
        if (p != 2) {
            i64 g = detail::primitive_root_mod_prime(p);
            if (f.exponent >= 2 &&
                arith::powmod(static_cast<arith::u64>(g), static_cast<arith::u64>(p - 1),
                              static_cast<arith::u64>(p * p)) == 1) {
                g += p;
            }
            const i64 order = pe / p * (p - 1);
            Generator gen{order, std::vector<i64>(static_cast<std::size_t>(pe), 0)};
            i64 x = 1;
            for (i64 k = 0; k < order; ++k) {
                gen.log[static_cast<std::size_t>(x)] = k;
                x = x * g % pe;
            }
            gens_.push_back(std::move(gen));
            comp.num_gens = 1;
        } else if (f.exponent == 2) {
            gens_.push_back(Generator{2, {0, 0, 0, 1}});
            comp.num_gens = 1;
        } else if (f.exponent >= 3) {
            const i64 order5 = pe / 4;
            Generator sign{2, std::vector<i64>(static_cast<std::size_t>(pe), 0)};
            Generator five{order5, std::vector<i64>(static_cast<std::size_t>(pe), 0)};
            i64 x = 1;
            for (i64 k = 0; k < order5; ++k) {
                five.log[static_cast<std::size_t>(x)] = k;
                five.log[static_cast<std::size_t>(pe - x)] = k;
                sign.log[static_cast<std::size_t>(pe - x)] = 1;
                x = x * 5 % pe;
            }
            gens_.push_back(std::move(sign));
            gens_.push_back(std::move(five));
            comp.num_gens = 2;
        }
        comps_.push_back(comp);
    }

    std::vector<i64> split(i64 index) const {
        if (index < 0 || index >= size()) throw precondition_error("CharacterGroup: index out of range");
        std::vector<i64> js(gens_.size());
        for (std::size_t k = 0; k < gens_.size(); ++k) {
            js[k] = index % gens_[k].order;
            index /= gens_[k].order;
        }
        return js;
    }

    i64 phase(const std::vector<i64>& js, i64 a) const {
        i64 ph = 0;
        for (const auto& comp : comps_) {
            const auto r = static_cast<std::size_t>(a % comp.modulus);
            for (std::size_t k = comp.first_gen; k < comp.first_gen + comp.num_gens; ++k) {
                const auto& g = gens_[k];
                const i64 scale = exponent_ / g.order;
                ph = (ph + static_cast<i64>(arith::mulmod(static_cast<arith::u64>(js[k] * g.log[r]),
                                                          static_cast<arith::u64>(scale),
                                                          static_cast<arith::u64>(exponent_)))) %
                     exponent_;
            }
        }
        return ph;
    }

    i64 q_;
    arith::FactoredModulus fm_;
    std::vector<Component> comps_;
    std::vector<Generator> gens_;
    i64 exponent_ = 1;
    std::shared_ptr<const RootTable> roots_;
};

/// All phi(q) characters mod q.
inline std::vector<CharacterTable> char_group(i64 q) { return CharacterGroup(q).all(); }

}  // namespace lcentral::dirichlet
