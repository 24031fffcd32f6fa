#include "ghsgls/bigint.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ghsgls/error.hpp"

namespace ghsgls {

BigInt parse_bigint(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t start = s.find_first_not_of(" \t");
    if (start == std::string::npos) throw Error("empty integer literal");
    s = s.substr(start);
    bool neg = false;
    if (s[0] == '-') {
        neg = true;
        s = s.substr(1);
    }
    int base = 10;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        base = 16;
        s = s.substr(2);
    }
    BigInt out;
    if (s.empty() || out.set_str(s, base) != 0) throw Error("malformed integer literal '" + std::string(text) + "'");
    return neg ? BigInt(-out) : out;
}

std::string to_decimal(const BigInt& x) { return x.get_str(10); }

std::string to_hex(const BigInt& x) {
    std::string s = BigInt(abs(x)).get_str(16);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return (x < 0 ? "-0x" : "0x") + s;
}

BigInt bigint_from_u64(std::uint64_t x) {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(x), 0, 0, &x);
    return out;
}

bool fits_u64(const BigInt& x) { return x >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64; }

std::uint64_t bigint_to_u64(const BigInt& x) {
    if (!fits_u64(x)) throw Error("integer does not fit in 64 bits: " + x.get_str());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
    return out;
}

BigInt mod_reduce(const BigInt& a, const BigInt& mod) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
    return r;
}

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& mod) {
    BigInt r;
    BigInt b = mod_reduce(base, mod);
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

BigInt mod_inv(const BigInt& a, const BigInt& mod) {
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw DivisionByZero("no inverse of " + a.get_str() + " modulo " + mod.get_str());
    return r;
}

bool is_probable_prime(const BigInt& x) { return mpz_probab_prime_p(x.get_mpz_t(), 40) != 0; }

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
    __int128 t = 0, newt = 1;
    __int128 r = m, newr = a % m;
    while (newr != 0) {
        __int128 q = r / newr;
        std::tie(t, newt) = std::make_pair(newt, t - q * newt);
        std::tie(r, newr) = std::make_pair(newr, r - q * newr);
    }
    if (r != 1) throw DivisionByZero("no inverse of " + std::to_string(a) + " modulo " + std::to_string(m));
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit inputs.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        const std::uint64_t m = 128;
        auto f = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
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

void factor_rec(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        ++out[n];
        return;
    }
    std::uint64_t d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
    std::map<std::uint64_t, unsigned> acc;
    for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++acc[p];
            n /= p;
        }
    }
    factor_rec(n, acc);
    return {acc.begin(), acc.end()};
}

Factored factor_integer(const BigInt& n_in) {
    if (n_in <= 0) throw Error("factor_integer requires a positive integer");
    BigInt n = n_in;
    std::map<BigInt, unsigned> acc;
    for (unsigned long p = 2; p < (1ul << 16); p += (p == 2 ? 1 : 2)) {
        if (n == 1) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++acc[BigInt(p)];
            n /= p;
        }
    }
    if (n > 1) {
        if (is_probable_prime(n)) {
            ++acc[n];
        } else {
            if (!fits_u64(n)) throw TooLarge("composite cofactor exceeds 64 bits: " + n.get_str());
            for (auto [p, e] : factor_u64(bigint_to_u64(n))) acc[bigint_from_u64(p)] += e;
        }
    }
    return {acc.begin(), acc.end()};
}

}  // namespace ghsgls
