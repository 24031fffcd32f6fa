#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "ghsgls/base_field.hpp"
#include "ghsgls/bigint.hpp"
#include "ghsgls/error.hpp"
#include "ghsgls/poly.hpp"

namespace ghsgls {

/// Element of F_q[y]/(m(y)): exactly deg m coefficients over F_q, degree-0
/// first. Ordered as a little-endian integer.
struct ExtElement {
    std::vector<Fq> c;

    std::strong_ordering operator<=>(const ExtElement& o) const noexcept;
    bool operator==(const ExtElement& o) const noexcept { return c == o.c; }
    bool is_zero() const noexcept;
};

/// Extension F_q[y]/(m) for a monic irreducible m over F_q. Used both for
/// the tower top F_{q^l} and for residue fields F_q[x]/(u).
class ExtField {
public:
    using Element = ExtElement;

    /// Checks irreducibility of `modulus` unless `trusted` is set.
    ExtField(BaseFieldPtr base, Poly modulus, bool trusted = false);

    const BaseField& base() const noexcept { return *F_; }
    const BaseFieldPtr& base_ptr() const noexcept { return F_; }
    const Poly& modulus() const noexcept { return m_; }
    int degree() const noexcept { return d_; }
    int absolute_degree() const noexcept { return d_ * F_->n(); }

    Element zero() const { return Element{std::vector<Fq>(d_, kZero)}; }
    Element one() const;
    Element from_base(Fq c) const;
    Element gen() const;  // the class of y
    Element from_coeffs(std::vector<Fq> coeffs) const;  // reduces if longer than d
    Element from_poly(const Poly& p) const;
    Poly to_poly(const Element& a) const { return Poly(a.c); }

    Element add(const Element& a, const Element& b) const;
    Element mul(const Element& a, const Element& b) const;
    Element scale(const Element& a, Fq c) const;
    Element sqr(const Element& a) const;
    Element inv(const Element& a) const;  // throws DivisionByZero
    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
    Element pow(const Element& a, const BigInt& e) const;
    /// a^(2^k) by k squarings.
    Element frobenius(const Element& a, std::int64_t k) const;
    /// Absolute trace to F_2, 0 or 1.
    int trace(const Element& a) const;
    bool in_base(const Element& a) const;

    Element random(std::mt19937_64& rng) const;

    // F_2-coordinates: bit (i*n + j) is bit j of coefficient i.
    std::vector<std::uint8_t> to_bits(const Element& a) const;
    Element from_bits(const std::vector<std::uint8_t>& bits) const;

private:
    BaseFieldPtr F_;
    Poly m_;
    int d_;
};

/// Solutions {y, y + 1} of y^2 + y = c; std::nullopt when the absolute
/// trace of c is 1. Works for BaseField and ExtField.
std::optional<std::pair<ExtElement, ExtElement>> try_solve_quadratic(const ExtField& K, const ExtElement& c);
std::optional<std::pair<Fq, Fq>> try_solve_quadratic(const BaseField& F, Fq c);
/// As above but throws NoSolution.
std::pair<ExtElement, ExtElement> solve_quadratic(const ExtField& K, const ExtElement& c);
std::pair<Fq, Fq> solve_quadratic(const BaseField& F, Fq c);

/// The pair F_q = F_{2^n} and F_{q^l}.
class FieldTower {
public:
    /// `ext_modulus` lists the monic degree-l modulus over F_q as bitmasks,
    /// degree-0 coefficient first.
    FieldTower(std::uint32_t base_modulus, const std::vector<std::uint32_t>& ext_modulus);

    int n() const noexcept { return base_->n(); }
    int ell() const noexcept { return ext_->degree(); }
    const BaseField& base() const noexcept { return *base_; }
    const BaseFieldPtr& base_ptr() const noexcept { return base_; }
    const ExtField& ext() const noexcept { return *ext_; }
    std::uint32_t base_modulus() const noexcept { return base_->modulus(); }
    std::vector<std::uint32_t> ext_modulus_bits() const;

    ExtElement element(const std::vector<std::uint32_t>& coeffs) const;

private:
    BaseFieldPtr base_;
    std::shared_ptr<const ExtField> ext_;
};

/// x^(2^k) in F_q or F_{q^l}.
Fq frobenius(const BaseField& F, Fq x, std::int64_t k);
ExtElement frobenius(const ExtField& K, const ExtElement& x, std::int64_t k);

/// delta with delta^2 + delta = a + a^(2^l), via the half-trace sum over
/// j = 0..(n l - 1)/2 of (a + a^(2^l))^(4^j). Throws OddityViolated when n l
/// is even.
ExtElement gls_delta(const ExtElement& a, const FieldTower& tower);

/// Basis of the subfield F_{2^l} of F_{q^l} over F_2, in reduced row
/// echelon form of the F_2-coordinates.
std::vector<ExtElement> subfield_basis(const FieldTower& tower);

/// First w of F_{2^l} (enumerated through subfield_basis) with
/// w + w^2 + ... + w^(2^(l-1)) = 1 and {w^(2^j)} independent over F_q.
ExtElement find_normal_element(const FieldTower& tower);

/// Coordinates with respect to the normal basis {w^(2^j) : j < l}.
class NormalBasis {
public:
    NormalBasis(const FieldTower& tower, ExtElement w);

    const ExtElement& w() const noexcept { return conj_[0]; }
    const std::vector<ExtElement>& conjugates() const noexcept { return conj_; }
    int ell() const noexcept { return static_cast<int>(conj_.size()); }

    std::vector<Fq> coords(const ExtElement& x) const;
    ExtElement from_coords(const std::vector<Fq>& xs) const;

    /// True when w satisfies both defining conditions.
    static bool is_valid(const FieldTower& tower, const ExtElement& w);

private:
    std::shared_ptr<const ExtField> K_;
    std::vector<ExtElement> conj_;
    std::vector<std::vector<Fq>> inverse_;  // l x l over F_q
};

namespace detail {
/// Inverse of a square matrix over F_q, std::nullopt if singular.
std::optional<std::vector<std::vector<Fq>>> invert_matrix(const BaseField& F, std::vector<std::vector<Fq>> a);
std::size_t matrix_rank(const BaseField& F, std::vector<std::vector<Fq>> a);
}  // namespace detail

}  // namespace ghsgls
