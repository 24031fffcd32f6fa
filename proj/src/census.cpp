#include "ghsgls/census.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>

namespace ghsgls {

namespace {

int moebius(int m) {
    int result = 1;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        m /= p;
        if (m % p == 0) return 0;
        result = -result;
    }
    if (m > 1) result = -result;
    return result;
}

BigInt binomial(const BigInt& top, unsigned long k) {
    BigInt out;
    mpz_bin_ui(out.get_mpz_t(), top.get_mpz_t(), k);
    return out;
}

BigInt round_nearest(const Rational& x) {
    // floor(x + 1/2)
    Rational y = x + Rational(1, 2);
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return out;
}

std::string rat(const Rational& x) {
    std::ostringstream s;
    if (x.get_den() == 1) {
        s << x.get_num();
    } else {
        s.setf(std::ios::fixed);
        s.precision(3);
        s << x.get_d();
    }
    return s.str();
}

}  // namespace

Rational irreducible_divisor_count(int s_prime, std::uint64_t q) {
    if (s_prime < 1) throw InvariantError("s' must be positive");
    BigInt sum = 0;
    const BigInt Q = bigint_from_u64(q);
    for (int d = 1; d <= s_prime; ++d) {
        if (s_prime % d) continue;
        BigInt qd;
        mpz_pow_ui(qd.get_mpz_t(), Q.get_mpz_t(), d);
        sum += moebius(s_prime / d) * qd;
    }
    Rational out(sum, 2 * s_prime);
    out.canonicalize();
    return out;
}

BigInt smooth_count(int g, int s, std::uint64_t q) {
    if (g < 1 || s < 1) throw InvariantError("g and s must be positive");
    std::vector<BigInt> series(g + 1, 0);
    series[0] = 1;
    for (int sp = 1; sp <= s; ++sp) {
        const BigInt A = round_nearest(irreducible_divisor_count(sp, q));
        // ((1 + y) / (1 - y))^A with y = x^sp, truncated at degree g.
        const int terms = g / sp;
        std::vector<BigInt> num(terms + 1), den(terms + 1), factor(terms + 1, 0);
        for (int k = 0; k <= terms; ++k) {
            num[k] = binomial(A, k);
            den[k] = (A == 0) ? BigInt(k == 0 ? 1 : 0) : binomial(BigInt(A + k - 1), k);
        }
        for (int i = 0; i <= terms; ++i)
            for (int j = 0; i + j <= terms; ++j) factor[i + j] += num[i] * den[j];
        std::vector<BigInt> next(g + 1, 0);
        for (int i = 0; i <= g; ++i) {
            if (series[i] == 0) continue;
            for (int k = 0; i + k * sp <= g; ++k) next[i + k * sp] += series[i] * factor[k];
        }
        series = std::move(next);
    }
    BigInt M = 0;
    for (int i = 1; i <= g; ++i) M += series[i];
    return M;
}

CostReport expected_costs(std::uint64_t q, int g, int s, int eps, int n, int d) {
    if (n < 1) throw InvariantError("n must be positive");
    if (d == 0) d = g;
    if (d > g) throw InvariantError("row density d must not exceed g");
    CostReport r;
    r.q = q;
    r.g = g;
    r.s = s;
    r.eps = eps;
    r.n = n;
    r.d = d;
    r.F = 0;
    for (int sp = 1; sp <= s; ++sp) {
        r.A.push_back(irreducible_divisor_count(sp, q));
        r.F += r.A.back();
    }
    r.M = smooth_count(g, s, q);
    BigInt qg;
    const BigInt Q = bigint_from_u64(q);
    mpz_pow_ui(qg.get_mpz_t(), Q.get_mpz_t(), g);
    r.E = Rational(qg, r.M);
    r.E.canonicalize();
    const Rational base = r.F + eps;
    r.T = base * r.E;
    r.L = d * base * base;
    const Rational orbit_base = r.F / n + eps;
    r.T_orbit = orbit_base * r.E;
    r.L_orbit = d * orbit_base * orbit_base;
    return r;
}

int best_smoothness(std::uint64_t q, int g, int eps, int n, int d) {
    int best = 1;
    Rational best_cost;
    for (int s = 1; s <= g; ++s) {
        const CostReport r = expected_costs(q, g, s, eps, n, d);
        const Rational cost = r.T + r.L;
        if (s == 1 || cost < best_cost) {
            best = s;
            best_cost = cost;
        }
    }
    return best;
}

std::string format_cost_report(const CostReport& r, bool csv) {
    std::ostringstream o;
    if (csv) {
        o << "q,g,s,eps,n,d,";
        for (std::size_t i = 0; i < r.A.size(); ++i) o << "A" << i + 1 << ",";
        o << "F,M,E,T,L,T_orbit,L_orbit\n";
        o << r.q << "," << r.g << "," << r.s << "," << r.eps << "," << r.n << "," << r.d << ",";
        for (const auto& a : r.A) o << rat(a) << ",";
        o << rat(r.F) << "," << r.M << "," << rat(r.E) << "," << rat(r.T) << "," << rat(r.L) << "," << rat(r.T_orbit) << ","
          << rat(r.L_orbit) << "\n";
        return o.str();
    }
    auto row = [&](const std::string& k, const std::string& v) {
        o << "  " << k;
        for (std::size_t i = k.size(); i < 10; ++i) o << ' ';
        o << v << "\n";
    };
    o << "cost model q=" << r.q << " g=" << r.g << " s=" << r.s << " eps=" << r.eps << " n=" << r.n << " d=" << r.d << "\n";
    for (std::size_t i = 0; i < r.A.size(); ++i) row("A" + std::to_string(i + 1), rat(r.A[i]));
    row("F(s)", rat(r.F));
    row("M(g,s)", to_decimal(r.M));
    row("E(s)", rat(r.E));
    row("T(s)", rat(r.T));
    row("L(s)", rat(r.L));
    row("T/n", rat(r.T_orbit));
    row("L/n^2", rat(r.L_orbit));
    return o.str();
}

std::uint64_t CensusResult::total_admitting() const {
    std::uint64_t t = 0;
    for (auto v : admitting) t += v;
    return t;
}
std::uint64_t CensusResult::total_divisors() const {
    std::uint64_t t = 0;
    for (auto v : divisors) t += v;
    return t;
}
std::uint64_t CensusResult::total_u_orbits() const {
    std::uint64_t t = 0;
    for (auto v : u_orbits) t += v;
    return t;
}
std::uint64_t CensusResult::total_divisor_orbits() const {
    std::uint64_t t = 0;
    for (auto v : divisor_orbits) t += v;
    return t;
}

CensusResult exact_census(const HyperCurve& H, int s, const std::optional<EndoParams>& params, int workers) {
    const Jacobian J(H);
    const PolyRing& R = J.ring();
    CensusResult out;
    out.s = s;
    out.has_orbits = params.has_value();
    for (auto* v : {&out.irreducible, &out.admitting, &out.divisors, &out.u_orbits, &out.divisor_orbits}) v->assign(s + 1, 0);
    workers = std::max(1, workers);
    for (int d = 1; d <= s; ++d) {
        const std::vector<Poly> us = R.monic_irreducibles(d);
        out.irreducible[d] = us.size();
        struct Partial {
            std::uint64_t admitting = 0, divisors = 0, u_orbits = 0, divisor_orbits = 0;
        };
        std::vector<Partial> partial(workers);
        auto run = [&](int w) {
            Partial& p = partial[w];
            for (std::size_t i = w; i < us.size(); i += workers) {
                const Poly& u = us[i];
                const int vc = J.v_count(u);
                if (vc == 0) continue;
                p.admitting += 1;
                p.divisors += vc;
                if (!params) continue;
                // u is counted once per orbit, at the orbit maximum.
                std::vector<Poly> orbit{u};
                bool is_max = true;
                for (;;) {
                    Poly next = u_star(R, orbit.back(), *params);
                    if (next == u) break;
                    if (u < next) is_max = false;
                    orbit.push_back(std::move(next));
                    if (orbit.size() > static_cast<std::size_t>(2 * params->n)) throw InternalError("u-orbit longer than 2n");
                }
                if (!is_max) continue;
                p.u_orbits += 1;
                std::set<MumfordDivisor> seen;
                for (const Poly& w_u : orbit) {
                    const auto sols = J.v_solutions(w_u);
                    for (const Poly* v : {&sols->first, &sols->second}) {
                        MumfordDivisor D{w_u, *v};
                        if (seen.count(D)) continue;
                        p.divisor_orbits += 1;
                        MumfordDivisor cur = D;
                        do {
                            seen.insert(cur);
                            cur = psi_star(J, cur, *params);
                        } while (cur != D && seen.size() <= 4 * orbit.size());
                    }
                }
            }
        };
        if (workers == 1) {
            run(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
            for (auto& t : pool) t.join();
        }
        for (const auto& p : partial) {
            out.admitting[d] += p.admitting;
            out.divisors[d] += p.divisors;
            out.u_orbits[d] += p.u_orbits;
            out.divisor_orbits[d] += p.divisor_orbits;
        }
    }
    return out;
}

std::string format_census(const CensusResult& c, bool csv) {
    std::ostringstream o;
    if (csv) {
        o << "degree,irreducible_u,u_with_v,divisors,u_orbits,divisor_orbits\n";
        for (int d = 1; d <= c.s; ++d) {
            o << d << "," << c.irreducible[d] << "," << c.admitting[d] << "," << c.divisors[d] << ",";
            if (c.has_orbits)
                o << c.u_orbits[d] << "," << c.divisor_orbits[d];
            else
                o << ",";
            o << "\n";
        }
        o << "total,," << c.total_admitting() << "," << c.total_divisors() << ",";
        if (c.has_orbits) o << c.total_u_orbits() << "," << c.total_divisor_orbits();
        else o << ",";
        o << "\n";
        return o.str();
    }
    o << "exact census, s = " << c.s << "\n";
    o << "  deg  irreducible u   u with v  divisors div(u,v)";
    if (c.has_orbits) o << "   u-orbits  divisor orbits";
    o << "\n";
    for (int d = 1; d <= c.s; ++d) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  %3d  %13llu  %9llu  %17llu", d, static_cast<unsigned long long>(c.irreducible[d]),
                      static_cast<unsigned long long>(c.admitting[d]), static_cast<unsigned long long>(c.divisors[d]));
        o << buf;
        if (c.has_orbits) {
            std::snprintf(buf, sizeof buf, "  %9llu  %14llu", static_cast<unsigned long long>(c.u_orbits[d]),
                          static_cast<unsigned long long>(c.divisor_orbits[d]));
            o << buf;
        }
        o << "\n";
    }
    o << "  u admitting v (one per conjugate pair): " << c.total_admitting() << "\n";
    o << "  irreducible divisors (both conjugates):  " << c.total_divisors() << "\n";
    if (c.has_orbits) {
        o << "  orbits of u under psi*:                 " << c.total_u_orbits() << "\n";
        o << "  orbits of divisors under psi*:          " << c.total_divisor_orbits() << "\n";
    }
    return o.str();
}

}  // namespace ghsgls
