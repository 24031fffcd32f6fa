#pragma once

#include <optional>
#include <random>

#include "ghsgls/bigint.hpp"
#include "ghsgls/endo.hpp"
#include "ghsgls/tower.hpp"

namespace ghsgls {

struct ECPoint {
    bool infinity = true;
    ExtElement x, y;

    static ECPoint at_infinity() { return ECPoint{}; }
    bool operator==(const ECPoint& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
};

/// y^2 + x y = x^3 + a x^2 + b over F_{q^l}.
class BinaryCurve {
public:
    BinaryCurve(FieldTower tower, ExtElement a, ExtElement b);

    const FieldTower& tower() const noexcept { return tower_; }
    const ExtField& field() const noexcept { return tower_.ext(); }
    const ExtElement& a() const noexcept { return a_; }
    const ExtElement& b() const noexcept { return b_; }

    bool contains(const ExtElement& x, const ExtElement& y) const;
    /// Validated affine point; throws PointNotOnCurve.
    ECPoint point(ExtElement x, ExtElement y) const;
    /// Uniform-ish random affine point (random x, random root choice).
    ECPoint random_point(std::mt19937_64& rng) const;

    ECPoint neg(const ECPoint& P) const;
    ECPoint add(const ECPoint& P, const ECPoint& Q) const;
    ECPoint dbl(const ECPoint& P) const;
    ECPoint mul(const ECPoint& P, const BigInt& k) const;  // k may be negative

    std::optional<BigInt> cofactor, order;  // c and r when known

private:
    FieldTower tower_;
    ExtElement a_, b_;
};

/// (x, y) -> (x^(2^l), y^(2^l) + delta x^(2^l)).
ECPoint gls_psi(const BinaryCurve& E, const ECPoint& P, const ExtElement& delta);

/// Unique lambda in [0, r) with psi(P) = [lambda]P among the roots of
/// lambda^n = +-1 mod r. Throws NoEigenvalue.
EigenvalueData psi_eigenvalue_ec(const BinaryCurve& E, const ECPoint& P, const BigInt& r, const ExtElement& delta);

}  // namespace ghsgls
