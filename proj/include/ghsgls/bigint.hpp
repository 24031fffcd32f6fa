#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ghsgls {

using BigInt = mpz_class;

// Accepts decimal or 0x-prefixed hexadecimal.
BigInt parse_bigint(std::string_view text);
std::string to_decimal(const BigInt& x);
std::string to_hex(const BigInt& x);  // upper-case, 0x prefix

BigInt bigint_from_u64(std::uint64_t x);
std::uint64_t bigint_to_u64(const BigInt& x);  // throws if it does not fit
bool fits_u64(const BigInt& x);

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& mod);
BigInt mod_inv(const BigInt& a, const BigInt& mod);  // throws DivisionByZero
BigInt mod_reduce(const BigInt& a, const BigInt& mod);  // result in [0, mod)
bool is_probable_prime(const BigInt& x);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);
bool is_prime_u64(std::uint64_t n);

// Prime factorization as (prime, exponent) pairs in increasing prime order.
// Trial division to 2^16 followed by Pollard-Brent on the cofactor; the
// cofactor left after trial division must fit in 64 bits.
using Factored = std::vector<std::pair<BigInt, unsigned>>;
Factored factor_integer(const BigInt& n);
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

}  // namespace ghsgls
