#pragma once

#include <vector>

#include "ghsgls/ecurve.hpp"
#include "ghsgls/tower.hpp"

namespace ghsgls {

/// Normal-basis coordinates (x_0..x_{l-1}, y_0..y_{l-1}) of an affine point,
/// or the point at infinity.
struct CoordVector {
    bool infinity = false;
    std::vector<Fq> xs, ys;

    bool operator==(const CoordVector&) const = default;
};

CoordVector iota(const ECPoint& P, const NormalBasis& nb);
ECPoint iota_inv(const CoordVector& v, const NormalBasis& nb);

/// Squares every coordinate and shifts cyclically: x_j -> x_{j-1}^2.
CoordVector big_pi(const CoordVector& v, const BaseField& F);
/// y_j -> y_j + delta x_j.
CoordVector big_phi(const CoordVector& v, Fq delta, const BaseField& F);
/// big_phi after l applications of big_pi.
CoordVector big_psi(const CoordVector& v, Fq delta, int ell, const BaseField& F);

/// Left-hand sides of x^3 + a x^2 + x y_j + y_{j-1}^2 + b_j for j < l, with
/// y_{-1} = y_{l-1}.
std::vector<Fq> aprime_residuals(const BaseField& F, Fq x, const std::vector<Fq>& ys, Fq a, const std::vector<int>& b_bits);

}  // namespace ghsgls
