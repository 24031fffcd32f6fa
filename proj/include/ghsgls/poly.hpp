#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "ghsgls/base_field.hpp"
#include "ghsgls/bigint.hpp"

namespace ghsgls {

/// Univariate polynomial over F_q, degree-0 coefficient first. The zero
/// polynomial is the empty vector; there is never a trailing zero.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Fq> coeffs) : c_(std::move(coeffs)) { normalize(); }
    static Poly constant(Fq c) { return Poly(std::vector<Fq>{c}); }
    static Poly monomial(Fq c, int degree);
    static Poly x() { return monomial(kOne, 1); }
    static Poly one() { return constant(kOne); }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == kOne; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == kOne; }
    Fq lead() const noexcept { return c_.empty() ? kZero : c_.back(); }
    Fq operator[](int i) const noexcept { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : kZero; }
    const std::vector<Fq>& coeffs() const noexcept { return c_; }

    void set(int i, Fq v);

    /// Total order: shorter first, then the coefficient vector read as a
    /// little-endian integer.
    std::strong_ordering operator<=>(const Poly& o) const noexcept;
    bool operator==(const Poly& o) const noexcept { return c_ == o.c_; }

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Fq> c_;
};

struct PolyHash {
    std::size_t operator()(const Poly& p) const noexcept;
};

/// Monic irreducible factors with multiplicities plus the leading coefficient.
struct Factorization {
    Fq lead = kOne;
    std::vector<std::pair<Poly, unsigned>> factors;  // sorted by Poly order

    bool operator==(const Factorization&) const = default;
};

/// Polynomial arithmetic over a fixed base field.
class PolyRing {
public:
    explicit PolyRing(BaseFieldPtr field) : F_(std::move(field)) {}

    const BaseField& field() const noexcept { return *F_; }
    const BaseFieldPtr& field_ptr() const noexcept { return F_; }

    Poly add(const Poly& a, const Poly& b) const;
    Poly mul(const Poly& a, const Poly& b) const;
    Poly sqr(const Poly& a) const;
    Poly scale(const Poly& a, Fq c) const;
    std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;  // throws DivisionByZero
    Poly div(const Poly& a, const Poly& b) const { return divmod(a, b).first; }
    Poly mod(const Poly& a, const Poly& b) const;
    Poly monic(const Poly& a) const;
    /// Monic gcd; gcd(0, 0) = 0.
    Poly gcd(const Poly& a, const Poly& b) const;
    /// Returns (g, s, t) with s*a + t*b = g, g monic.
    struct XGcd {
        Poly g, s, t;
    };
    XGcd xgcd(const Poly& a, const Poly& b) const;
    Fq eval(const Poly& p, Fq x) const;
    Poly derivative(const Poly& p) const;
    /// Square root of a polynomial that is a perfect square (char 2).
    Poly sqrt(const Poly& p) const;

    Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const { return mod(mul(a, b), m); }
    Poly sqrmod(const Poly& a, const Poly& m) const { return mod(sqr(a), m); }
    Poly powmod(const Poly& a, const BigInt& e, const Poly& m) const;
    /// Inverse of a modulo m; throws DivisionByZero when gcd(a, m) != 1.
    Poly invmod(const Poly& a, const Poly& m) const;
    /// a^(q^k) mod m via k*n squarings.
    Poly frobmod(const Poly& a, int k, const Poly& m) const;

    Poly random(std::mt19937_64& rng, int degree, bool monic) const;

    bool is_irreducible(const Poly& p) const;
    Factorization factorize(const Poly& p, std::uint64_t seed = kDefaultSeed) const;
    std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& monic_p) const;
    /// Distinct-degree split of a squarefree monic polynomial: (product of
    /// all irreducible factors of degree d, d).
    std::vector<std::pair<Poly, int>> distinct_degree(const Poly& squarefree) const;
    /// Splits a product of distinct irreducibles of degree d.
    std::vector<Poly> equal_degree(const Poly& p, int d, std::mt19937_64& rng) const;
    /// Factorization iff every irreducible factor has degree <= s.
    std::optional<Factorization> smooth_factor(const Poly& monic_u, int s, std::uint64_t seed = kDefaultSeed) const;

    /// Coefficient-wise c -> c^(2^ell).
    Poly sigma(const Poly& p, int ell) const;
    /// delta^(deg p) * p(x / delta); coefficient i becomes p_i * delta^(deg p - i).
    Poly scale_sub(const Poly& p, Fq delta) const;  // throws ZeroScale

    /// All monic irreducible polynomials of exact degree d, in increasing
    /// order. Guarded at q^d <= 2^24.
    std::vector<Poly> monic_irreducibles(int d) const;

    /// Little-endian packing of the coefficients into an integer.
    BigInt encode(const Poly& p) const;

    static constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ull;

private:
    BaseFieldPtr F_;
};

}  // namespace ghsgls
