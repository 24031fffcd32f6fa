#pragma once

#include <cstdint>

#include "ghsgls/instance.hpp"

namespace ghsgls {

struct GenOptions {
    int n = 3;
    int ell = 5;
    int genus = 3;
    std::uint64_t seed = 1;
    int min_r_bits = 16;
    int max_attempts = 400;
    int workers = 1;
};

/// Curve y^2 + h y = f over F_{2^n} carrying the map psi* for random
/// (delta1, delta3, delta4): each coefficient of h and f is solved for
/// separately so that both curve identities hold, f is monic. Retries until
/// #Jac has a prime factor r >= 2^min_r_bits with r^2 not dividing it and
/// psi* acts on the r-part by some lambda != +-1. D has order r, D' = [dlog]D
/// for a random planted dlog. Throws GenerationFailed.
InstanceFile gen_instance(const GenOptions& opt);

/// Smallest monic irreducible polynomial of degree ell over F_q in the
/// polynomial order.
Poly smallest_irreducible_over(const PolyRing& R, int ell);

}  // namespace ghsgls
