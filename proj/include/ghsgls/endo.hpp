#pragma once

#include <optional>
#include <vector>

#include "ghsgls/bigint.hpp"
#include "ghsgls/hyperjac.hpp"

namespace ghsgls {

/// (delta1, delta3, delta4) with delta2 = 0 and delta5 = 1/delta1. The map
/// sends div(u, v) to div(u*, v*) with u* = delta1^deg(u) (sigma u)(x/delta1)
/// and v* = delta3 (sigma v)(x/delta1) + delta4 (sigma h)(x/delta1) mod u*.
struct EndoParams {
    Fq delta1 = kOne, delta3 = kOne, delta4 = kZero;
    int ell = 1;  // sigma is c -> c^(2^ell)
    int n = 1;    // order of the Frobenius part

    Fq delta2() const noexcept { return kZero; }
    Fq delta5(const BaseField& F) const { return F.inv(delta1); }
    bool operator==(const EndoParams&) const = default;
};

struct EigenvalueData {
    BigInt lambda;
    int sign = 1;  // lambda^n = sign mod r
    BigInt r;
};

EigenvalueData make_eigenvalue_data(const BigInt& lambda, int n, const BigInt& r);

/// All lambda mod r with lambda^n = 1 or lambda^n = -1, increasing.
std::vector<BigInt> roots_of_unity(int n, const BigInt& r);

/// Coefficient-wise sigma applied to h and f.
HyperCurve sigma_curve(const HyperCurve& H, int ell);

/// True when (delta1, delta3, delta4) satisfies the two curve identities
/// h(delta1 x) = delta3 (sigma h)(x) and
/// f(delta1 x) = delta3^2 (sigma f)(x) + (delta4^2 + delta3 delta4) (sigma h)(x)^2.
bool satisfies_curve_identities(const HyperCurve& H, const EndoParams& p);

/// First triple in (delta1, delta3, delta4) element order satisfying the
/// identities; nullopt if none. Guarded at q <= 2^8.
std::optional<EndoParams> find_endo_params(const HyperCurve& H, int ell, int n);
/// Every satisfying triple, in the same order.
std::vector<EndoParams> find_all_endo_params(const HyperCurve& H, int ell, int n);

MumfordDivisor psi_star(const Jacobian& J, const MumfordDivisor& D, const EndoParams& p);
/// psi_star applied k times.
MumfordDivisor psi_star_pow(const Jacobian& J, const MumfordDivisor& D, const EndoParams& p, int k);

/// Parameters reproducing D -> D_lambda, or nullopt when the pair is
/// degenerate (the linear system for delta3, delta4 has rank < 2, or
/// delta1 is not determined).
std::optional<EndoParams> recover_params(const Jacobian& J, const MumfordDivisor& D, const MumfordDivisor& D_lambda, int ell, int n);

/// lambda with [lambda]D = psi_star(D). Throws NoEigenvalue.
EigenvalueData eigenvalue(const Jacobian& J, const MumfordDivisor& D, const BigInt& r, const EndoParams& p);

struct OrbitRep {
    MumfordDivisor rep;
    int j = 0;  // rep = psi_star^j(D)
};

/// Maximum of {psi_star^i(D) : 0 <= i < n} under the divisor order.
OrbitRep orbit_rep(const Jacobian& J, const MumfordDivisor& D, const EndoParams& p);

/// u -> delta1^deg(u) (sigma u)(x/delta1), the action on u-parts.
Poly u_star(const PolyRing& R, const Poly& u, const EndoParams& p);

}  // namespace ghsgls
