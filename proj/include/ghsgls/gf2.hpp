#pragma once

#include <cstdint>

// Polynomials over F_2 packed into machine words, and a flat binary field
// F_{2^m} (m <= 32) built on them. Used where a whole field must be
// enumerated quickly (point counting) rather than for tower arithmetic.

namespace ghsgls::gf2 {

int degree(std::uint64_t p);  // -1 for the zero polynomial

// Carry-less product of two polynomials of degree < 32.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b);

std::uint64_t mod(std::uint64_t a, std::uint64_t m);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
bool is_irreducible(std::uint64_t p);  // degree <= 32

// Smallest irreducible polynomial of the given degree (1..32) under the
// integer ordering of bitmasks.
std::uint64_t smallest_irreducible(int degree);

class FlatField {
public:
    explicit FlatField(std::uint64_t modulus);

    int m() const noexcept { return m_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    std::uint64_t size() const noexcept { return std::uint64_t{1} << m_; }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mulmod(a, b, modulus_); }
    std::uint64_t sqr(std::uint64_t a) const { return mulmod(a, a, modulus_); }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;  // throws DivisionByZero

    // Absolute trace via a precomputed linear mask.
    int trace(std::uint64_t a) const noexcept { return __builtin_popcountll(a & trace_mask_) & 1; }

private:
    std::uint64_t modulus_;
    int m_;
    std::uint64_t trace_mask_ = 0;
};

}  // namespace ghsgls::gf2
