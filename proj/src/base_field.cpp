#include "ghsgls/base_field.hpp"

#include <string>

#include "ghsgls/error.hpp"
#include "ghsgls/gf2.hpp"

namespace ghsgls {

BaseField::BaseField(std::uint32_t modulus) : modulus_(modulus), n_(gf2::degree(modulus)) {
    if (n_ < 1 || n_ > 16) throw Error("BaseField: degree must be in 1..16, got " + std::to_string(n_));
    if (!gf2::is_irreducible(modulus)) throw InvariantError("base modulus is not irreducible over F_2");
    const std::uint32_t q = order();
    const std::uint32_t group = q - 1;
    exp_.assign(2 * group + 2, 0);
    log_.assign(q, 0);
    // Smallest primitive element.
    for (std::uint32_t g = (q == 2 ? 1 : 2); g < q; ++g) {
        std::uint64_t x = 1;
        std::uint32_t k = 0;
        do {
            exp_[k] = static_cast<std::uint16_t>(x);
            x = gf2::mulmod(x, g, modulus_);
            ++k;
        } while (x != 1 && k <= group);
        if (k == group) break;
    }
    for (std::uint32_t k = 0; k < group; ++k) {
        log_[exp_[k]] = k;
        exp_[k + group] = exp_[k];
    }
    exp_[2 * group] = exp_[0];
}

Fq BaseField::element(std::uint32_t bits) const {
    if (bits >= order()) throw Error("element bitmask out of range for F_2^" + std::to_string(n_));
    return Fq{static_cast<std::uint16_t>(bits)};
}

Fq BaseField::inv(Fq a) const {
    if (a.is_zero()) throw DivisionByZero("inverse of zero in F_2^" + std::to_string(n_));
    const std::uint32_t group = order() - 1;
    return Fq{exp_[(group - log_[a.bits]) % group]};
}

Fq BaseField::pow(Fq a, std::int64_t e) const {
    const std::int64_t group = order() - 1;
    if (a.is_zero()) {
        if (e == 0) return kOne;
        if (e < 0) throw DivisionByZero("negative power of zero");
        return kZero;
    }
    std::int64_t k = (static_cast<std::int64_t>(log_[a.bits]) * (e % group)) % group;
    if (k < 0) k += group;
    return Fq{exp_[k]};
}

Fq BaseField::pow(Fq a, const BigInt& e) const {
    const BigInt group = order() - 1;
    BigInt r = mod_reduce(e, group);
    if (a.is_zero()) {
        if (e == 0) return kOne;
        if (e < 0) throw DivisionByZero("negative power of zero");
        return kZero;
    }
    return pow(a, static_cast<std::int64_t>(r.get_si()));
}

Fq BaseField::frobenius(Fq a, std::int64_t k) const noexcept {
    k %= n_;
    if (k < 0) k += n_;
    if (a.is_zero()) return a;
    const std::uint64_t group = order() - 1;
    return Fq{exp_[(static_cast<std::uint64_t>(log_[a.bits]) << k) % group]};
}

std::uint32_t BaseField::log(Fq a) const {
    if (a.is_zero()) throw DivisionByZero("logarithm of zero");
    return log_[a.bits];
}

Fq BaseField::exp(std::int64_t k) const noexcept {
    const std::int64_t group = order() - 1;
    k %= group;
    if (k < 0) k += group;
    return Fq{exp_[k]};
}

int BaseField::trace(Fq a) const noexcept {
    Fq t = kZero, x = a;
    for (int i = 0; i < n_; ++i) {
        t += x;
        x = sqr(x);
    }
    return t.bits & 1;
}

std::vector<Fq> BaseField::elements() const {
    std::vector<Fq> out(order());
    for (std::uint32_t i = 0; i < order(); ++i) out[i] = Fq{static_cast<std::uint16_t>(i)};
    return out;
}

}  // namespace ghsgls
