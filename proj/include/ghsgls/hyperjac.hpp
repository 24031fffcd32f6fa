#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "ghsgls/bigint.hpp"
#include "ghsgls/error.hpp"
#include "ghsgls/poly.hpp"

namespace ghsgls {

/// Imaginary model y^2 + h(x) y = f(x) over F_q with deg f = 2g + 1,
/// deg h <= g, h != 0.
class HyperCurve {
public:
    HyperCurve(BaseFieldPtr field, Poly h, Poly f);

    const BaseField& field() const noexcept { return *F_; }
    const BaseFieldPtr& field_ptr() const noexcept { return F_; }
    const Poly& h() const noexcept { return h_; }
    const Poly& f() const noexcept { return f_; }
    int genus() const noexcept { return g_; }
    PolyRing ring() const { return PolyRing(F_); }

    bool operator==(const HyperCurve& o) const { return *F_ == *o.F_ && h_ == o.h_ && f_ == o.f_; }

private:
    BaseFieldPtr F_;
    Poly h_, f_;
    int g_;
};

/// Reduced divisor class div(u, v). Ordered by (deg u, u, v) with the
/// polynomial order of Poly.
struct MumfordDivisor {
    Poly u = Poly::one();
    Poly v;

    auto operator<=>(const MumfordDivisor&) const = default;
    bool operator==(const MumfordDivisor&) const = default;
    bool is_zero() const noexcept { return u.is_one(); }
};

struct JacobianOrderData {
    std::vector<BigInt> counts;     // #H(F_{q^k}) for k = 1..g
    std::vector<BigInt> lpoly;      // a_0..a_{2g}
    BigInt order;                   // L(1)
    Factored factors;
};

/// Cantor arithmetic on Jac_H(F_q).
class Jacobian {
public:
    explicit Jacobian(HyperCurve curve);

    const HyperCurve& curve() const noexcept { return H_; }
    const PolyRing& ring() const noexcept { return R_; }
    int genus() const noexcept { return H_.genus(); }

    MumfordDivisor zero() const { return MumfordDivisor{}; }
    bool is_valid(const MumfordDivisor& D) const;
    /// Validated divisor; u is made monic first. Throws InvalidDivisor.
    MumfordDivisor make(Poly u, Poly v) const;

    MumfordDivisor neg(const MumfordDivisor& D) const;
    MumfordDivisor add(const MumfordDivisor& a, const MumfordDivisor& b) const;
    MumfordDivisor dbl(const MumfordDivisor& D) const { return add(D, D); }
    MumfordDivisor mul(const MumfordDivisor& D, const BigInt& k) const;  // k may be negative

    /// Irreducible parts with multiplicities, sorted by divisor order.
    std::vector<std::pair<MumfordDivisor, unsigned>> decompose(const MumfordDivisor& D, std::uint64_t seed = PolyRing::kDefaultSeed) const;
    /// Both solutions of v^2 + h v + f = 0 mod u for irreducible u, in
    /// increasing order (equal when h = 0 mod u); nullopt if none.
    std::optional<std::pair<Poly, Poly>> v_solutions(const Poly& irreducible_u) const;
    /// Number of v modulo an irreducible u: 0, 1 or 2.
    int v_count(const Poly& irreducible_u) const;

    MumfordDivisor random_divisor(std::mt19937_64& rng) const;
    MumfordDivisor random_divisor(std::uint64_t seed) const;

    /// Reduction of a semi-reduced pair (u monic, u | v^2 + v h + f).
    MumfordDivisor reduce(Poly u, Poly v) const;

private:
    HyperCurve H_;
    PolyRing R_;
};

/// #H(F_{q^k}) including the point at infinity. Guarded at q^k <= 2^24.
BigInt count_points(const HyperCurve& H, int k, int workers = 1);
/// L-polynomial from counts k = 1..g, N = L(1) and its factorization.
JacobianOrderData jacobian_order(const HyperCurve& H, int workers = 1);
/// Exact order of D given the factorization of a multiple of it.
BigInt divisor_order(const Jacobian& J, const MumfordDivisor& D, const BigInt& N, const Factored& N_factored);
/// Affine smoothness: gcd(h, h'^2 f + f'^2) = 1.
bool is_nonsingular(const HyperCurve& H);

}  // namespace ghsgls
