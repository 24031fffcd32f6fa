#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ghsgls/endo.hpp"
#include "ghsgls/hyperjac.hpp"

namespace ghsgls {

enum class BaseMode { Plain, Orbit };

const char* to_string(BaseMode m);
BaseMode parse_base_mode(const std::string& s);

/// Irreducible divisors with deg u <= s, one canonical divisor per u (the
/// smaller v). In orbit mode one entry per orbit of u-parts, namely the
/// orbit maximum of the canonical divisor at the largest u.
class FactorBase {
public:
    FactorBase(const Jacobian& J, int s, BaseMode mode, std::optional<EndoParams> params = std::nullopt,
               std::optional<BigInt> lambda = std::nullopt, bool dynamic = false);

    BaseMode mode() const noexcept { return mode_; }
    int s() const noexcept { return s_; }
    bool dynamic() const noexcept { return dynamic_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<MumfordDivisor>& entries() const noexcept { return entries_; }
    const std::optional<EndoParams>& params() const noexcept { return params_; }
    const std::optional<BigInt>& lambda() const noexcept { return lambda_; }

    std::optional<std::size_t> index_of(const Poly& key) const;
    /// Index of the entry with this key, inserting it in dynamic mode.
    std::size_t insert(const Poly& key, const MumfordDivisor& entry);

    /// Entry key (its u) and entry divisor for an irreducible divisor C.
    struct Mapped {
        Poly key;
        MumfordDivisor entry;
        int sign = 1;  // C' = sign * entry, C' = psi*^j(C)
        int j = 0;
    };
    Mapped map(const MumfordDivisor& C) const;
    /// Coefficient of entry for e copies of C: e * sign * lambda^(-j) mod r.
    BigInt coefficient(const Mapped& m, long e, const BigInt& r) const;

private:
    MumfordDivisor canonical(const Poly& u) const;
    Poly orbit_key(const Poly& u) const;

    const Jacobian* J_;
    int s_;
    BaseMode mode_;
    bool dynamic_;
    std::optional<EndoParams> params_;
    std::optional<BigInt> lambda_;
    std::vector<MumfordDivisor> entries_;
    std::unordered_map<Poly, std::size_t, PolyHash> index_;
};

struct Relation {
    BigInt alpha, beta;
    std::vector<std::pair<std::size_t, BigInt>> row;  // sorted by index, coefficients in [1, r)
    std::uint64_t worker = 0, trial = 0;
};

struct SearchOptions {
    std::uint64_t seed = 1;
    std::uint64_t budget = 1000000;  // total trials across workers
    std::size_t wanted = 0;          // stop at this many rows; 0 means base size + eps
    int eps = 10;
    int workers = 1;
    double verify_fraction = 1.0;    // share of relations re-expanded
    std::optional<BigInt> group_order;  // enables the r-part check of folded rows
};

struct SearchResult {
    std::vector<Relation> relations;
    std::uint64_t trials = 0;
    std::uint64_t verified = 0;
    bool exhausted = false;
};

/// Independent trials T = [alpha]D + [beta]D' with (alpha, beta) uniform mod
/// r; s-smooth T are decomposed and mapped onto the base. Relations already
/// present are kept and counted towards the target.
SearchResult relation_search(const Jacobian& J, const MumfordDivisor& D, const MumfordDivisor& D_prime, const BigInt& r,
                             FactorBase& base, const SearchOptions& opt, std::vector<Relation> existing = {});

/// Re-expansion check of one relation: exact decomposition identity is not
/// available after folding, so this checks [N/r](alpha D + beta D') against
/// the folded row when N is given, and the plain-mode identity otherwise.
bool check_relation(const Jacobian& J, const MumfordDivisor& D, const MumfordDivisor& D_prime, const BigInt& r,
                    const FactorBase& base, const Relation& rel, const std::optional<BigInt>& group_order);

/// Basis of {gamma : gamma^T M = 0 mod r} for the relation matrix (rows =
/// relations, columns = base indices). Requires r < 2^63.
std::vector<std::vector<std::uint64_t>> solve_kernel(const std::vector<Relation>& rels, std::size_t columns, const BigInt& r);

/// -(gamma.alpha) / (gamma.beta) mod r, or nullopt when gamma.beta = 0.
std::optional<BigInt> extract_log(const std::vector<std::uint64_t>& gamma, const std::vector<Relation>& rels, const BigInt& r);

struct SolveOptions {
    int s = 1;
    BaseMode mode = BaseMode::Plain;
    bool dynamic = false;
    int eps = 10;
    std::uint64_t seed = 1;
    std::uint64_t budget = 1000000;
    int workers = 1;
    double verify_fraction = 1.0;
    std::optional<EndoParams> params;   // required in orbit mode
    std::optional<BigInt> lambda;       // computed when absent
    std::optional<BigInt> group_order;
    std::string checkpoint;             // relation file to resume from and update
};

struct SolveStats {
    BigInt dlog;
    std::size_t base_size = 0;
    std::size_t columns_used = 0;
    std::size_t relations = 0;
    std::uint64_t trials = 0;
    std::uint64_t verified = 0;
    double relation_seconds = 0, algebra_seconds = 0;
    int rounds = 0;
};

/// Full pipeline; the returned log always satisfies [dlog]D = D'. Throws
/// BudgetExhausted and Unverifiable.
SolveStats solve_dlp(const Jacobian& J, const MumfordDivisor& D, const MumfordDivisor& D_prime, const BigInt& r,
                     const SolveOptions& opt);

void write_relations(const std::string& path, const std::vector<Relation>& rels);
std::vector<Relation> read_relations(const std::string& path);

}  // namespace ghsgls
