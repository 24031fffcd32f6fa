#include "ghsgls/gf2.hpp"

#include <string>

#include "ghsgls/error.hpp"

namespace ghsgls::gf2 {

int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - __builtin_clzll(p); }

std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    // 4-bit windowed shift-and-add.
    std::uint64_t table[16];
    table[0] = 0;
    table[1] = a;
    for (int i = 2; i < 16; i += 2) {
        table[i] = table[i / 2] << 1;
        table[i + 1] = table[i] ^ a;
    }
    std::uint64_t r = 0;
    for (int shift = 28; shift >= 0; shift -= 4) {
        r = (r << 4) ^ table[(b >> shift) & 0xF];
    }
    return r;
}

std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
    const int dm = degree(m);
    if (dm < 0) throw DivisionByZero("reduction modulo the zero polynomial");
    for (int d = degree(a); d >= dm; d = degree(a)) a ^= m << (d - dm);
    return a;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return mod(clmul(a, b), m); }

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a = mod(a, b);
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(std::uint64_t p) {
    const int n = degree(p);
    if (n <= 0) return false;
    if (n == 1) return true;
    // Rabin: x^(2^n) == x mod p and gcd(x^(2^(n/k)) - x, p) == 1 for prime k | n.
    auto x_pow_2k = [&](int k) {
        std::uint64_t x = 2;
        for (int i = 0; i < k; ++i) x = mulmod(x, x, p);
        return x;
    };
    if (x_pow_2k(n) != mod(2, p)) return false;
    int rem = n;
    for (int k = 2; k <= rem; ++k) {
        if (rem % k) continue;
        while (rem % k == 0) rem /= k;
        if (gcd(p, x_pow_2k(n / k) ^ mod(2, p)) != 1) return false;
    }
    return true;
}

std::uint64_t smallest_irreducible(int deg) {
    if (deg < 1 || deg > 32) throw Error("smallest_irreducible: degree out of range " + std::to_string(deg));
    const std::uint64_t top = std::uint64_t{1} << deg;
    for (std::uint64_t low = 0; low < top; ++low) {
        if (is_irreducible(top | low)) return top | low;
    }
    throw NotFound("no irreducible polynomial of degree " + std::to_string(deg));
}

FlatField::FlatField(std::uint64_t modulus) : modulus_(modulus), m_(degree(modulus)) {
    if (m_ < 1 || m_ > 32 || !is_irreducible(modulus)) throw Error("FlatField: modulus must be irreducible of degree 1..32");
    for (int i = 0; i < m_; ++i) {
        std::uint64_t z = std::uint64_t{1} << i;
        std::uint64_t t = 0, acc = z;
        for (int k = 0; k < m_; ++k) {
            t ^= acc;
            acc = sqr(acc);
        }
        if (t & 1) trace_mask_ |= std::uint64_t{1} << i;
    }
}

std::uint64_t FlatField::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = sqr(a);
        e >>= 1;
    }
    return r;
}

std::uint64_t FlatField::inv(std::uint64_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero in F_2^" + std::to_string(m_));
    return pow(a, size() - 2);
}

}  // namespace ghsgls::gf2
