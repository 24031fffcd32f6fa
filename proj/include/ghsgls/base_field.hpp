#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

#include "ghsgls/bigint.hpp"

namespace ghsgls {

/// An element of F_q = F_2[t]/(base_modulus), stored as its coefficient
/// bitmask (bit j is the coefficient of t^j). The integer value of the mask
/// is the element ordering used wherever ties are broken.
struct Fq {
    std::uint16_t bits = 0;

    constexpr bool is_zero() const noexcept { return bits == 0; }
    constexpr auto operator<=>(const Fq&) const = default;

    friend constexpr Fq operator+(Fq a, Fq b) noexcept { return Fq{static_cast<std::uint16_t>(a.bits ^ b.bits)}; }
    Fq& operator+=(Fq b) noexcept {
        bits ^= b.bits;
        return *this;
    }
};

inline constexpr Fq kZero{0};
inline constexpr Fq kOne{1};

/// The base field F_{2^n}, n <= 16, with log/antilog tables.
class BaseField {
public:
    /// `modulus` is the bitmask of an irreducible degree-n polynomial.
    explicit BaseField(std::uint32_t modulus);

    int n() const noexcept { return n_; }
    std::uint32_t modulus() const noexcept { return modulus_; }
    std::uint32_t order() const noexcept { return std::uint32_t{1} << n_; }

    Fq element(std::uint32_t bits) const;
    Fq generator() const noexcept { return Fq{exp_[1]}; }

    Fq mul(Fq a, Fq b) const noexcept {
        if (a.is_zero() || b.is_zero()) return kZero;
        return Fq{exp_[log_[a.bits] + log_[b.bits]]};
    }
    Fq sqr(Fq a) const noexcept { return mul(a, a); }
    Fq inv(Fq a) const;  // throws DivisionByZero
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    Fq pow(Fq a, std::int64_t e) const;  // negative exponents invert
    Fq pow(Fq a, const BigInt& e) const;
    Fq sqrt(Fq a) const noexcept { return frobenius(a, n_ - 1); }

    /// a^(2^k); k is reduced modulo n.
    Fq frobenius(Fq a, std::int64_t k) const noexcept;

    /// Discrete log with respect to generator(); a must be nonzero.
    std::uint32_t log(Fq a) const;
    Fq exp(std::int64_t k) const noexcept;

    /// Absolute trace Tr_{F_q/F_2}(a) as 0 or 1.
    int trace(Fq a) const noexcept;

    /// All elements in increasing order.
    std::vector<Fq> elements() const;

    bool operator==(const BaseField& o) const noexcept { return modulus_ == o.modulus_; }

private:
    std::uint32_t modulus_;
    int n_;
    std::vector<std::uint16_t> exp_;  // doubled to skip the mod in mul
    std::vector<std::uint32_t> log_;
};

using BaseFieldPtr = std::shared_ptr<const BaseField>;

inline BaseFieldPtr make_base_field(std::uint32_t modulus) { return std::make_shared<const BaseField>(modulus); }

}  // namespace ghsgls
