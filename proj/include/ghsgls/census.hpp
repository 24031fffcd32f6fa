#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ghsgls/bigint.hpp"
#include "ghsgls/endo.hpp"
#include "ghsgls/hyperjac.hpp"

namespace ghsgls {

using Rational = mpq_class;

/// (1/2)(1/s') sum_{d | s'} mu(s'/d) q^d, evaluated exactly.
Rational irreducible_divisor_count(int s_prime, std::uint64_t q);

/// sum_{i=1..g} [x^i] prod_{s'<=s} ((1 + x^s') / (1 - x^s'))^{A_s'} with each
/// A_s' rounded to the nearest integer.
BigInt smooth_count(int g, int s, std::uint64_t q);

struct CostReport {
    std::uint64_t q = 0;
    int g = 0, s = 0, eps = 0, n = 1, d = 0;
    std::vector<Rational> A;  // A_1..A_s
    Rational F;               // sum of A
    BigInt M;
    Rational E, T, L;
    Rational T_orbit, L_orbit;  // with base size F/n + eps
};

/// Costs E = q^g / M, T = (F + eps) E, L = d (F + eps)^2 and the orbit
/// variants. d defaults to g when passed as 0.
CostReport expected_costs(std::uint64_t q, int g, int s, int eps, int n, int d = 0);
/// s in [1, g] minimising T + L.
int best_smoothness(std::uint64_t q, int g, int eps, int n, int d = 0);

std::string format_cost_report(const CostReport& r, bool csv);

struct CensusResult {
    int s = 0;
    // Indexed by degree 1..s (entry 0 unused).
    std::vector<std::uint64_t> irreducible;  // monic irreducible u
    std::vector<std::uint64_t> admitting;    // u with at least one v
    std::vector<std::uint64_t> divisors;     // irreducible divisors div(u, v)
    std::vector<std::uint64_t> u_orbits;     // orbits of admitting u under u -> u*
    std::vector<std::uint64_t> divisor_orbits;
    bool has_orbits = false;

    std::uint64_t total_admitting() const;
    std::uint64_t total_divisors() const;
    std::uint64_t total_u_orbits() const;
    std::uint64_t total_divisor_orbits() const;
};

/// Exhaustive count over monic irreducible u of degree <= s (guard q^s <=
/// 2^24). Orbit statistics are filled when params are given.
CensusResult exact_census(const HyperCurve& H, int s, const std::optional<EndoParams>& params, int workers = 1);

std::string format_census(const CensusResult& c, bool csv);

}  // namespace ghsgls
