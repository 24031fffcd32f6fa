#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghsgls/ecurve.hpp"
#include "ghsgls/endo.hpp"
#include "ghsgls/hyperjac.hpp"
#include "ghsgls/tower.hpp"

namespace ghsgls {

struct EllipticSection {
    ExtElement a, b;
    ECPoint P, P_prime;
    std::optional<ECPoint> P_prime_base;  // P_prime = [c] P_prime_base when present
    BigInt c, r;
};

struct HyperSection {
    Poly h, f;
    MumfordDivisor D, D_prime;
    BigInt r;
    std::optional<BigInt> N;  // #Jac_H(F_q) when known
};

struct EndoSection {
    EndoParams params;
    std::optional<BigInt> lambda;
    std::optional<int> sign;
};

/// Line-oriented `key = value` instance file with [header], [elliptic],
/// [hyperelliptic], [endo] and [answer] sections.
struct InstanceFile {
    int format = 1;
    std::uint32_t base_modulus = 0;
    std::vector<std::uint32_t> ext_modulus;  // degree-0 first, monic
    std::optional<EllipticSection> elliptic;
    HyperSection hyper;
    std::optional<EndoSection> endo;
    std::optional<BigInt> dlog;
    std::optional<BigInt> dlog_decimal;  // independent decimal statement of dlog

    FieldTower tower() const { return FieldTower(base_modulus, ext_modulus); }
    int n() const;
    int ell() const { return static_cast<int>(ext_modulus.size()) - 1; }
    HyperCurve hyper_curve() const;
    BinaryCurve elliptic_curve() const;  // requires the elliptic section
};

/// Throws ParseError for malformed input and InvariantError (or a more
/// specific error) when parsed values break module invariants.
InstanceFile parse_instance_text(const std::string& text);
InstanceFile parse_instance(const std::string& path);
std::string write_instance_text(const InstanceFile& inst);
void write_instance(const InstanceFile& inst, const std::string& path);

std::string format_fq(Fq c);
std::string format_ext(const ExtElement& x);
std::string format_poly(const Poly& p);

}  // namespace ghsgls
