#include "ghsgls/endo.hpp"

#include <algorithm>
#include <random>

namespace ghsgls {

namespace {

// p(x / delta): coefficient i is multiplied by delta^(-i).
Poly divide_argument(const BaseField& F, const Poly& p, Fq delta) {
    const Fq inv = F.inv(delta);
    std::vector<Fq> c = p.coeffs();
    Fq s = kOne;
    for (Fq& v : c) {
        v = F.mul(v, s);
        s = F.mul(s, inv);
    }
    return Poly(std::move(c));
}

// p(delta x): coefficient i is multiplied by delta^i.
Poly multiply_argument(const BaseField& F, const Poly& p, Fq delta) {
    std::vector<Fq> c = p.coeffs();
    Fq s = kOne;
    for (Fq& v : c) {
        v = F.mul(v, s);
        s = F.mul(s, delta);
    }
    return Poly(std::move(c));
}

}  // namespace

EigenvalueData make_eigenvalue_data(const BigInt& lambda, int n, const BigInt& r) {
    const BigInt p = mod_pow(lambda, n, r);
    int sign = 0;
    if (p == 1) sign = 1;
    if (p == r - 1) sign = (r == 2) ? 1 : -1;
    if (sign == 0) throw NoEigenvalue("lambda^n is not +-1 mod r");
    return EigenvalueData{mod_reduce(lambda, r), sign, r};
}

std::vector<BigInt> roots_of_unity(int n, const BigInt& r) {
    if (n < 1) throw InvariantError("n must be positive");
    if (r < 2) throw InvariantError("r must be prime");
    if (r == 2) return {BigInt(1)};
    // The solutions of lambda^n = +-1 are exactly the solutions of
    // lambda^(2n) = 1: the cyclic subgroup of order gcd(2n, r - 1).
    BigInt d;
    const BigInt rm1 = r - 1;
    mpz_gcd_ui(d.get_mpz_t(), rm1.get_mpz_t(), static_cast<unsigned long>(2 * n));
    const std::uint64_t order = d.get_ui();
    const auto primes = factor_u64(order);
    const BigInt cofactor = rm1 / d;
    for (BigInt a = 2; a < r; ++a) {
        const BigInt z = mod_pow(a, cofactor, r);
        bool generator = true;
        for (const auto& [p, e] : primes)
            if (mod_pow(z, BigInt(d / static_cast<unsigned long>(p)), r) == 1) generator = false;
        if (!generator) continue;
        std::vector<BigInt> out;
        BigInt x = 1;
        for (std::uint64_t i = 0; i < order; ++i) {
            out.push_back(x);
            x = x * z % r;
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    throw InternalError("no generator of the root-of-unity subgroup");
}

HyperCurve sigma_curve(const HyperCurve& H, int ell) {
    const PolyRing R = H.ring();
    return HyperCurve(H.field_ptr(), R.sigma(H.h(), ell), R.sigma(H.f(), ell));
}

bool satisfies_curve_identities(const HyperCurve& H, const EndoParams& p) {
    const BaseField& F = H.field();
    const PolyRing R = H.ring();
    if (p.delta1.is_zero() || p.delta3.is_zero()) return false;
    const Poly sh = R.sigma(H.h(), p.ell);
    if (multiply_argument(F, H.h(), p.delta1) != R.scale(sh, p.delta3)) return false;
    const Poly sf = R.sigma(H.f(), p.ell);
    const Fq k = F.sqr(p.delta4) + F.mul(p.delta3, p.delta4);
    const Poly rhs = R.add(R.scale(sf, F.sqr(p.delta3)), R.scale(R.sqr(sh), k));
    return multiply_argument(F, H.f(), p.delta1) == rhs;
}

std::vector<EndoParams> find_all_endo_params(const HyperCurve& H, int ell, int n) {
    const BaseField& F = H.field();
    if (F.order() > 256) throw TooLarge("endomorphism search needs q <= 2^8");
    const PolyRing R = H.ring();
    const Poly sh = R.sigma(H.h(), ell);
    const Poly sf = R.sigma(H.f(), ell);
    const Poly sh2 = R.sqr(sh);
    std::vector<EndoParams> out;
    for (std::uint32_t a = 1; a < F.order(); ++a) {
        const Fq d1{static_cast<std::uint16_t>(a)};
        const Poly h_scaled = multiply_argument(F, H.h(), d1);
        const Poly f_scaled = multiply_argument(F, H.f(), d1);
        for (std::uint32_t b = 1; b < F.order(); ++b) {
            const Fq d3{static_cast<std::uint16_t>(b)};
            if (h_scaled != R.scale(sh, d3)) continue;
            const Poly base = R.scale(sf, F.sqr(d3));
            for (std::uint32_t c = 0; c < F.order(); ++c) {
                const Fq d4{static_cast<std::uint16_t>(c)};
                const Fq k = F.sqr(d4) + F.mul(d3, d4);
                if (f_scaled == R.add(base, R.scale(sh2, k))) out.push_back(EndoParams{d1, d3, d4, ell, n});
            }
        }
    }
    return out;
}

std::optional<EndoParams> find_endo_params(const HyperCurve& H, int ell, int n) {
    auto all = find_all_endo_params(H, ell, n);
    if (all.empty()) return std::nullopt;
    return all.front();
}

Poly u_star(const PolyRing& R, const Poly& u, const EndoParams& p) { return R.scale_sub(R.sigma(u, p.ell), p.delta1); }

MumfordDivisor psi_star(const Jacobian& J, const MumfordDivisor& D, const EndoParams& p) {
    if (D.is_zero()) return D;
    if (!J.is_valid(D)) throw InvalidDivisor("psi_star input is not a valid Mumford divisor");
    const PolyRing& R = J.ring();
    const BaseField& F = R.field();
    Poly us = u_star(R, D.u, p);
    const Poly a = divide_argument(F, R.sigma(D.v, p.ell), p.delta1);
    Poly vs = R.scale(a, p.delta3);
    if (!p.delta4.is_zero()) {
        const Poly hb = R.mod(J.curve().h(), D.u);
        const Poly b = divide_argument(F, R.sigma(hb, p.ell), p.delta1);
        vs = R.add(vs, R.scale(b, p.delta4));
    }
    return MumfordDivisor{std::move(us), std::move(vs)};
}

MumfordDivisor psi_star_pow(const Jacobian& J, const MumfordDivisor& D, const EndoParams& p, int k) {
    MumfordDivisor out = D;
    for (int i = 0; i < k; ++i) out = psi_star(J, out, p);
    return out;
}

std::optional<EndoParams> recover_params(const Jacobian& J, const MumfordDivisor& D, const MumfordDivisor& Dl, int ell, int n) {
    const PolyRing& R = J.ring();
    const BaseField& F = R.field();
    const int d = D.u.degree();
    if (d < 1 || Dl.u.degree() != d) return std::nullopt;
    const Poly su = R.sigma(D.u, ell);
    // u'_i = sigma(u_i) delta1^(d - i)
    std::vector<Fq> cands;
    if (!su[d - 1].is_zero()) {
        if (Dl.u[d - 1].is_zero()) return std::nullopt;
        const Fq inv_d1 = F.div(su[d - 1], Dl.u[d - 1]);
        cands.push_back(F.inv(inv_d1));
    } else {
        int i = -1;
        for (int k = d - 2; k >= 0; --k)
            if (!su[k].is_zero()) {
                i = k;
                break;
            }
        if (i < 0 || Dl.u[i].is_zero()) return std::nullopt;
        const Fq target = F.div(Dl.u[i], su[i]);
        for (std::uint32_t a = 1; a < F.order(); ++a) {
            const Fq c{static_cast<std::uint16_t>(a)};
            if (F.pow(c, static_cast<std::int64_t>(d - i)) == target) cands.push_back(c);
        }
    }
    std::vector<EndoParams> found;
    for (Fq d1 : cands) {
        EndoParams p{d1, kOne, kZero, ell, n};
        if (u_star(R, D.u, p) != Dl.u) continue;
        const Poly A = divide_argument(F, R.sigma(D.v, ell), d1);
        const Poly B = divide_argument(F, R.sigma(R.mod(J.curve().h(), D.u), ell), d1);
        // v'_k = delta3 A_k + delta4 B_k for k < d.
        std::optional<std::pair<Fq, Fq>> sol;
        for (int i = 0; i < d && !sol; ++i)
            for (int j = i + 1; j < d && !sol; ++j) {
                const Fq det = F.mul(A[i], B[j]) + F.mul(A[j], B[i]);
                if (det.is_zero()) continue;
                const Fq d3 = F.div(F.mul(Dl.v[i], B[j]) + F.mul(Dl.v[j], B[i]), det);
                const Fq d4 = F.div(F.mul(A[i], Dl.v[j]) + F.mul(A[j], Dl.v[i]), det);
                sol = std::make_pair(d3, d4);
            }
        if (!sol || sol->first.is_zero()) continue;
        bool ok = true;
        for (int k = 0; k < d && ok; ++k)
            if (F.mul(sol->first, A[k]) + F.mul(sol->second, B[k]) != Dl.v[k]) ok = false;
        if (!ok) continue;
        p.delta3 = sol->first;
        p.delta4 = sol->second;
        found.push_back(p);
    }
    if (found.size() != 1) return std::nullopt;
    return found.front();
}

EigenvalueData eigenvalue(const Jacobian& J, const MumfordDivisor& D, const BigInt& r, const EndoParams& p) {
    const MumfordDivisor target = psi_star(J, D, p);
    for (const BigInt& lam : roots_of_unity(p.n, r))
        if (J.mul(D, lam) == target) return make_eigenvalue_data(lam, p.n, r);
    throw NoEigenvalue("psi_star does not act as a root of unity on <D>");
}

OrbitRep orbit_rep(const Jacobian& J, const MumfordDivisor& D, const EndoParams& p) {
    OrbitRep best{D, 0};
    MumfordDivisor cur = D;
    for (int i = 1; i < p.n; ++i) {
        cur = psi_star(J, cur, p);
        if (best.rep < cur) best = OrbitRep{cur, i};
    }
    return best;
}

}  // namespace ghsgls
