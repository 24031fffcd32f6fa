#include "ghsgls/indexcalc.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace ghsgls {

const char* to_string(BaseMode m) { return m == BaseMode::Plain ? "plain" : "orbit"; }

BaseMode parse_base_mode(const std::string& s) {
    if (s == "plain") return BaseMode::Plain;
    if (s == "orbit") return BaseMode::Orbit;
    throw InvariantError("mode must be 'plain' or 'orbit', got '" + s + "'");
}

FactorBase::FactorBase(const Jacobian& J, int s, BaseMode mode, std::optional<EndoParams> params, std::optional<BigInt> lambda,
                       bool dynamic)
    : J_(&J), s_(s), mode_(mode), dynamic_(dynamic), params_(std::move(params)), lambda_(std::move(lambda)) {
    if (s < 1) throw InvariantError("smoothness bound must be positive");
    if (s > J.genus()) s_ = J.genus();
    if (mode == BaseMode::Orbit && (!params_ || !lambda_)) throw InvariantError("orbit mode needs endomorphism parameters and lambda");
    if (dynamic_) return;
    for (int d = 1; d <= s_; ++d) {
        for (const Poly& u : J.ring().monic_irreducibles(d)) {
            if (J.v_count(u) == 0) continue;
            if (mode_ == BaseMode::Plain) {
                insert(u, canonical(u));
            } else if (orbit_key(u) == u) {
                insert(u, orbit_rep(J, canonical(u), *params_).rep);
            }
        }
    }
}

std::optional<std::size_t> FactorBase::index_of(const Poly& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t FactorBase::insert(const Poly& key, const MumfordDivisor& entry) {
    auto [it, fresh] = index_.emplace(key, entries_.size());
    if (fresh) entries_.push_back(entry);
    return it->second;
}

MumfordDivisor FactorBase::canonical(const Poly& u) const {
    auto sols = J_->v_solutions(u);
    if (!sols) throw InvalidDivisor("u admits no v");
    return MumfordDivisor{u, sols->first};
}

Poly FactorBase::orbit_key(const Poly& u) const {
    Poly best = u, cur = u;
    for (int i = 1; i < params_->n; ++i) {
        cur = u_star(J_->ring(), cur, *params_);
        if (best < cur) best = cur;
    }
    return best;
}

FactorBase::Mapped FactorBase::map(const MumfordDivisor& C) const {
    Mapped m;
    MumfordDivisor cur = C;
    if (mode_ == BaseMode::Plain) {
        m.key = C.u;
    } else {
        m.key = orbit_key(C.u);
        while (cur.u != m.key) {
            cur = psi_star(*J_, cur, *params_);
            if (++m.j > 2 * params_->n) throw InternalError("u-part never reaches its orbit key");
        }
    }
    if (auto idx = index_of(m.key)) {
        m.entry = entries_[*idx];
    } else if (mode_ == BaseMode::Plain) {
        m.entry = canonical(m.key);
    } else {
        m.entry = orbit_rep(*J_, canonical(m.key), *params_).rep;
    }
    if (cur == m.entry) {
        m.sign = 1;
    } else if (cur == J_->neg(m.entry)) {
        m.sign = -1;
    } else {
        throw InternalError("component does not match its factor-base entry up to sign");
    }
    return m;
}

BigInt FactorBase::coefficient(const Mapped& m, long e, const BigInt& r) const {
    BigInt c = BigInt(e) * m.sign;
    if (m.j > 0) c *= mod_pow(mod_inv(*lambda_, r), m.j, r);
    return mod_reduce(c, r);
}

namespace {

BigInt random_below(std::mt19937_64& rng, const BigInt& r) {
    const std::size_t words = mpz_sizeinbase(r.get_mpz_t(), 2) / 64 + 2;
    BigInt x = 0;
    for (std::size_t i = 0; i < words; ++i) {
        x <<= 64;
        x += bigint_from_u64(rng());
    }
    return mod_reduce(x, r);
}

struct RawRelation {
    BigInt alpha, beta;
    std::uint64_t worker = 0, trial = 0;
    bool verified = false;
    std::vector<FactorBase::Mapped> parts;
    std::vector<BigInt> coefs;
};

MumfordDivisor combine(const Jacobian& J, const std::vector<MumfordDivisor>& entries, const std::vector<BigInt>& coefs,
                       const BigInt& r, bool signed_coefs) {
    MumfordDivisor acc = J.zero();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        BigInt c = coefs[i];
        if (signed_coefs && 2 * c > r) c -= r;
        acc = J.add(acc, J.mul(entries[i], c));
    }
    return acc;
}

// Folded check in the r-part, or the exact plain-mode identity.
bool check_folded(const Jacobian& J, const MumfordDivisor& T, const std::vector<MumfordDivisor>& entries,
                  const std::vector<BigInt>& coefs, const BigInt& r, BaseMode mode, const std::optional<BigInt>& N) {
    if (N) {
        const BigInt h = *N / r;
        std::vector<MumfordDivisor> projected;
        for (const auto& E : entries) projected.push_back(J.mul(E, h));
        return J.mul(T, h) == combine(J, projected, coefs, r, false);
    }
    if (mode == BaseMode::Plain) return T == combine(J, entries, coefs, r, true);
    throw Unverifiable("orbit-mode relations need the group order for the r-part check");
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(trial),
                      static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

bool check_relation(const Jacobian& J, const MumfordDivisor& D, const MumfordDivisor& D_prime, const BigInt& r,
                    const FactorBase& base, const Relation& rel, const std::optional<BigInt>& group_order) {
    const MumfordDivisor T = J.add(J.mul(D, rel.alpha), J.mul(D_prime, rel.beta));
    std::vector<MumfordDivisor> entries;
    std::vector<BigInt> coefs;
    for (const auto& [idx, c] : rel.row) {
        if (idx >= base.size()) return false;
        entries.push_back(base.entries()[idx]);
        coefs.push_back(c);
    }
    return check_folded(J, T, entries, coefs, r, base.mode(), group_order);
}

SearchResult relation_search(const Jacobian& J, const MumfordDivisor& D, const MumfordDivisor& D_prime, const BigInt& r,
                             FactorBase& base, const SearchOptions& opt, std::vector<Relation> existing) {
    const int workers = std::max(1, opt.workers);
    const std::size_t wanted = opt.wanted ? opt.wanted : base.size() + static_cast<std::size_t>(opt.eps);
    std::mutex mu;
    std::vector<RawRelation> raw;
    std::map<Poly, int> seen_keys;
    std::atomic<bool> stop{false};
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;

    auto satisfied = [&](std::size_t rows, std::size_t new_keys) {
        if (base.dynamic()) return existing.size() + rows >= base.size() + new_keys + static_cast<std::size_t>(opt.eps);
        return existing.size() + rows >= wanted;
    };

    // Trial t draws from its own stream, so the outcome of every trial is
    // independent of which worker ran it.
    auto run = [&](int w) {
        try {
            std::uniform_real_distribution<double> coin(0.0, 1.0);
            while (!stop) {
                const std::uint64_t t = next.fetch_add(1);
                if (t >= opt.budget) break;
                std::mt19937_64 rng = trial_rng(opt.seed, t);
                RawRelation rel;
                rel.alpha = random_below(rng, r);
                rel.beta = random_below(rng, r);
                rel.worker = static_cast<std::uint64_t>(w);
                rel.trial = t;
                const MumfordDivisor T = J.add(J.mul(D, rel.alpha), J.mul(D_prime, rel.beta));
                const bool check = coin(rng) < opt.verify_fraction;
                std::vector<std::pair<MumfordDivisor, unsigned>> comps;
                if (!T.is_zero()) {
                    auto fac = J.ring().smooth_factor(T.u, base.s(), rng());
                    if (!fac) continue;
                    for (const auto& [p, e] : fac->factors) comps.emplace_back(MumfordDivisor{p, J.ring().mod(T.v, p)}, e);
                }
                std::vector<MumfordDivisor> entries;
                for (const auto& [C, e] : comps) {
                    rel.parts.push_back(base.map(C));
                    rel.coefs.push_back(base.coefficient(rel.parts.back(), static_cast<long>(e), r));
                    entries.push_back(rel.parts.back().entry);
                }
                if (check) {
                    MumfordDivisor sum = J.zero();
                    for (const auto& [C, e] : comps) sum = J.add(sum, J.mul(C, BigInt(e)));
                    if (sum != T) throw InternalError("smooth decomposition does not recompose to the trial divisor");
                    if (base.mode() == BaseMode::Plain || opt.group_order) {
                        if (!check_folded(J, T, entries, rel.coefs, r, base.mode(), opt.group_order))
                            throw InternalError("relation fails its re-expansion check");
                    }
                    rel.verified = true;
                }
                std::lock_guard<std::mutex> lk(mu);
                for (const auto& m : rel.parts)
                    if (!base.index_of(m.key)) seen_keys.emplace(m.key, 0);
                raw.push_back(std::move(rel));
                if (satisfied(raw.size(), seen_keys.size())) stop = true;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu);
            if (!failure) failure = std::current_exception();
            stop = true;
        }
    };

    // Replays the finished trials in index order and keeps the shortest
    // prefix meeting the target, which is what a single worker would emit.
    std::size_t keep = 0;
    std::uint64_t used = 0;
    bool met = satisfied(0, 0);
    while (!met) {
        stop = false;
        if (workers == 1) {
            run(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
            for (auto& t : pool) t.join();
        }
        if (failure) std::rethrow_exception(failure);
        std::sort(raw.begin(), raw.end(), [](const RawRelation& a, const RawRelation& b) { return a.trial < b.trial; });
        std::set<Poly> keys;
        keep = 0;
        for (const RawRelation& rr : raw) {
            ++keep;
            for (const auto& m : rr.parts)
                if (!base.index_of(m.key)) keys.insert(m.key);
            if (satisfied(keep, keys.size())) {
                met = true;
                break;
            }
        }
        const std::uint64_t claimed = std::min<std::uint64_t>(next.load(), opt.budget);
        used = met ? raw[keep - 1].trial + 1 : claimed;
        if (met || claimed >= opt.budget) break;
    }
    raw.resize(keep);

    SearchResult out;
    out.relations = std::move(existing);
    for (auto& rr : raw) {
        std::map<std::size_t, BigInt> row;
        for (std::size_t i = 0; i < rr.parts.size(); ++i) {
            const std::size_t idx = base.insert(rr.parts[i].key, rr.parts[i].entry);
            row[idx] = mod_reduce(row[idx] + rr.coefs[i], r);
        }
        Relation rel{rr.alpha, rr.beta, {}, rr.worker, rr.trial};
        for (auto& [idx, c] : row)
            if (c != 0) rel.row.emplace_back(idx, c);
        out.relations.push_back(std::move(rel));
        out.verified += rr.verified;
    }
    out.trials = used;
    out.exhausted = !met;
    return out;
}

std::vector<std::vector<std::uint64_t>> solve_kernel(const std::vector<Relation>& rels, std::size_t columns, const BigInt& r) {
    if (!fits_u64(r) || r >= (BigInt(1) << 63)) throw TooLarge("dense linear algebra needs r < 2^63");
    const std::uint64_t p = bigint_to_u64(r);
    const std::size_t R = rels.size();
    // Rows of the transposed matrix: one per used column.
    std::vector<std::size_t> used(columns, SIZE_MAX);
    std::size_t C = 0;
    for (const auto& rel : rels)
        for (const auto& [idx, c] : rel.row) {
            if (idx >= columns) throw InvariantError("relation index outside the factor base");
            if (used[idx] == SIZE_MAX) used[idx] = C++;
        }
    std::vector<std::vector<std::uint64_t>> A(C, std::vector<std::uint64_t>(R, 0));
    for (std::size_t i = 0; i < R; ++i)
        for (const auto& [idx, c] : rels[i].row) A[used[idx]][i] = bigint_to_u64(mod_reduce(c, r));
    std::vector<std::size_t> pivot_col;
    std::vector<char> is_pivot(R, 0);
    std::size_t row = 0;
    for (std::size_t col = 0; col < R && row < C; ++col) {
        std::size_t piv = row;
        while (piv < C && A[piv][col] == 0) ++piv;
        if (piv == C) continue;
        std::swap(A[piv], A[row]);
        const std::uint64_t inv = invmod_u64(A[row][col], p);
        for (std::size_t j = col; j < R; ++j) A[row][j] = mulmod_u64(A[row][j], inv, p);
        for (std::size_t i = 0; i < C; ++i) {
            if (i == row || A[i][col] == 0) continue;
            const std::uint64_t f = A[i][col];
            for (std::size_t j = col; j < R; ++j) {
                if (A[row][j] == 0) continue;
                const std::uint64_t t = mulmod_u64(f, A[row][j], p);
                A[i][j] = A[i][j] >= t ? A[i][j] - t : A[i][j] + p - t;
            }
        }
        pivot_col.push_back(col);
        is_pivot[col] = 1;
        ++row;
    }
    std::vector<std::vector<std::uint64_t>> kernel;
    for (std::size_t f = 0; f < R; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint64_t> g(R, 0);
        g[f] = 1;
        for (std::size_t k = 0; k < pivot_col.size(); ++k) g[pivot_col[k]] = A[k][f] ? p - A[k][f] : 0;
        kernel.push_back(std::move(g));
    }
    return kernel;
}

std::optional<BigInt> extract_log(const std::vector<std::uint64_t>& gamma, const std::vector<Relation>& rels, const BigInt& r) {
    BigInt ga = 0, gb = 0;
    for (std::size_t i = 0; i < rels.size() && i < gamma.size(); ++i) {
        if (!gamma[i]) continue;
        const BigInt g = bigint_from_u64(gamma[i]);
        ga += g * rels[i].alpha;
        gb += g * rels[i].beta;
    }
    ga = mod_reduce(ga, r);
    gb = mod_reduce(gb, r);
    if (gb == 0) return std::nullopt;
    return mod_reduce(-ga * mod_inv(gb, r), r);
}

SolveStats solve_dlp(const Jacobian& J, const MumfordDivisor& D, const MumfordDivisor& D_prime, const BigInt& r,
                     const SolveOptions& opt) {
    using clock = std::chrono::steady_clock;
    if (D.is_zero() || !J.mul(D, r).is_zero()) throw InvariantError("D must be a nonzero divisor of order r");
    if (!J.mul(D_prime, r).is_zero()) throw InvariantError("D' must lie in the r-torsion");
    std::optional<BigInt> lambda = opt.lambda;
    if (opt.mode == BaseMode::Orbit) {
        if (!opt.params) throw InvariantError("orbit mode needs endomorphism parameters");
        if (!lambda) lambda = eigenvalue(J, D, r, *opt.params).lambda;
    }
    FactorBase base(J, opt.s, opt.mode, opt.params, lambda, opt.dynamic);
    SolveStats st;
    std::vector<Relation> rels;
    if (!opt.checkpoint.empty() && std::filesystem::exists(opt.checkpoint)) {
        if (opt.dynamic) throw InvariantError("a dynamic factor base cannot resume from stored relations");
        rels = read_relations(opt.checkpoint);
    }
    // A resumed run must not replay the trial streams that produced the stored relations.
    const std::uint64_t salt = rels.empty() ? 0 : 0xbf58476d1ce4e5b9ull * rels.size();
    SearchOptions so;
    so.seed = opt.seed;
    so.budget = opt.budget;
    so.eps = opt.eps;
    so.workers = opt.workers;
    so.verify_fraction = opt.verify_fraction;
    so.group_order = opt.group_order;
    std::uint64_t budget_left = opt.budget;
    for (int round = 1;; ++round) {
        st.rounds = round;
        const auto t0 = clock::now();
        so.budget = budget_left;
        so.seed = (opt.seed ^ salt) + static_cast<std::uint64_t>(round - 1) * 0x9e3779b97f4a7c15ull;
        SearchResult res = relation_search(J, D, D_prime, r, base, so, std::move(rels));
        st.relation_seconds += std::chrono::duration<double>(clock::now() - t0).count();
        st.trials += res.trials;
        st.verified += res.verified;
        budget_left -= std::min(budget_left, res.trials);
        rels = std::move(res.relations);
        if (!opt.checkpoint.empty()) write_relations(opt.checkpoint, rels);
        if (res.exhausted)
            throw BudgetExhausted("trial budget used up with " + std::to_string(rels.size()) + " relations for " +
                                  std::to_string(base.size()) + " columns");
        const auto t1 = clock::now();
        const auto kernel = solve_kernel(rels, base.size(), r);
        std::optional<BigInt> found;
        for (const auto& gamma : kernel) {
            auto lg = extract_log(gamma, rels, r);
            if (!lg) continue;
            if (J.mul(D, *lg) != D_prime) throw Unverifiable("extracted logarithm fails [dlog]D = D'");
            found = lg;
            break;
        }
        st.algebra_seconds += std::chrono::duration<double>(clock::now() - t1).count();
        if (found) {
            st.dlog = *found;
            break;
        }
        // Retry with eps more relations.
        so.wanted = (so.wanted ? so.wanted : base.size() + static_cast<std::size_t>(opt.eps)) + static_cast<std::size_t>(opt.eps);
        if (base.dynamic()) so.eps += opt.eps;
    }
    st.base_size = base.size();
    st.relations = rels.size();
    std::vector<char> used(base.size(), 0);
    for (const auto& rel : rels)
        for (const auto& [idx, c] : rel.row) used[idx] = 1;
    st.columns_used = static_cast<std::size_t>(std::count(used.begin(), used.end(), 1));
    return st;
}

void write_relations(const std::string& path, const std::vector<Relation>& rels) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    for (const auto& rel : rels) {
        out << to_decimal(rel.alpha) << ' ' << to_decimal(rel.beta) << ' ' << rel.row.size();
        for (const auto& [idx, c] : rel.row) out << ' ' << idx << ':' << to_decimal(c);
        out << '\n';
    }
}

std::vector<Relation> read_relations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::vector<Relation> out;
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b;
        std::size_t k = 0;
        if (!(ls >> a >> b >> k)) throw ParseError(lineno, "expected 'alpha beta k idx:coef ...'");
        Relation rel;
        try {
            rel.alpha = parse_bigint(a);
            rel.beta = parse_bigint(b);
            for (std::size_t i = 0; i < k; ++i) {
                std::string tok;
                if (!(ls >> tok)) throw ParseError(lineno, "fewer entries than announced");
                const auto colon = tok.find(':');
                if (colon == std::string::npos) throw ParseError(lineno, "entry must be idx:coef");
                rel.row.emplace_back(std::stoull(tok.substr(0, colon)), parse_bigint(tok.substr(colon + 1)));
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(lineno, e.what());
        }
        rel.trial = out.size();
        out.push_back(std::move(rel));
    }
    return out;
}

}  // namespace ghsgls
