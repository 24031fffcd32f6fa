#include "ghsgls/generator.hpp"

#include <numeric>
#include <random>
#include <sstream>

#include "ghsgls/gf2.hpp"

namespace ghsgls {

Poly smallest_irreducible_over(const PolyRing& R, int ell) {
    const BaseField& F = R.field();
    const std::uint64_t q = F.order();
    for (std::uint64_t k = 0;; ++k) {
        std::vector<Fq> c(ell + 1, kZero);
        c[ell] = kOne;
        std::uint64_t rest = k;
        for (int i = 0; i < ell && rest; ++i) {
            c[i] = Fq{static_cast<std::uint16_t>(rest % q)};
            rest /= q;
        }
        if (rest) throw NotFound("no irreducible polynomial found");
        Poly p(std::move(c));
        if (R.is_irreducible(p)) return p;
    }
}

namespace {

Fq random_fq(std::mt19937_64& rng, const BaseField& F, bool nonzero) {
    std::uniform_int_distribution<std::uint32_t> dist(nonzero ? 1 : 0, F.order() - 1);
    return Fq{static_cast<std::uint16_t>(dist(rng))};
}

template <class Pred>
std::vector<Fq> solutions(const BaseField& F, Pred pred) {
    std::vector<Fq> out;
    for (Fq c : F.elements())
        if (pred(c)) out.push_back(c);
    return out;
}

}  // namespace

InstanceFile gen_instance(const GenOptions& opt) {
    if (opt.n < 1 || opt.n > 5) throw InvariantError("generator needs 1 <= n <= 5");
    if (opt.genus < 1 || opt.genus > 6) throw InvariantError("generator needs genus <= 6");
    if (opt.ell < 1 || std::gcd(opt.n, opt.ell) != 1) throw InvariantError("gcd(n, l) must be 1");
    InstanceFile inst;
    inst.base_modulus = static_cast<std::uint32_t>(gf2::smallest_irreducible(opt.n));
    const BaseFieldPtr Fp = make_base_field(inst.base_modulus);
    const BaseField& F = *Fp;
    const PolyRing R(Fp);
    const int g = opt.genus;
    if (static_cast<long>(opt.n) * g > 24) throw TooLarge("point counting for the Jacobian order needs q^g <= 2^24");
    const Poly m = smallest_irreducible_over(R, opt.ell);
    for (Fq c : m.coeffs()) inst.ext_modulus.push_back(c.bits);

    std::mt19937_64 rng(opt.seed);
    const BigInt min_r = BigInt(1) << opt.min_r_bits;
    std::ostringstream why;
    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
        const Fq d1 = random_fq(rng, F, true);
        const Fq d3 = F.sqrt(F.pow(d1, static_cast<std::int64_t>(2 * g + 1)));
        const Fq d4 = random_fq(rng, F, false);
        const Fq k = F.sqr(d4) + F.mul(d3, d4);
        // h_i delta1^i = delta3 sigma(h_i)
        std::vector<Fq> hc(g + 1, kZero);
        for (int i = 0; i <= g; ++i) {
            const Fq di = F.pow(d1, static_cast<std::int64_t>(i));
            auto sols = solutions(F, [&](Fq c) { return F.mul(c, di) == F.mul(d3, F.frobenius(c, opt.ell)); });
            hc[i] = sols[rng() % sols.size()];
        }
        const Poly h(hc);
        if (h.is_zero()) continue;
        const Poly sh2 = R.sqr(R.sigma(h, opt.ell));
        // f_i delta1^i + delta3^2 sigma(f_i) = k [(sigma h)^2]_i
        std::vector<Fq> fc(2 * g + 2, kZero);
        bool ok = true;
        for (int i = 0; i <= 2 * g + 1 && ok; ++i) {
            const Fq di = F.pow(d1, static_cast<std::int64_t>(i));
            const Fq rhs = F.mul(k, sh2[i]);
            auto sols = solutions(F, [&](Fq c) { return F.mul(c, di) + F.mul(F.sqr(d3), F.frobenius(c, opt.ell)) == rhs; });
            if (i == 2 * g + 1) {
                fc[i] = kOne;
                ok = !sols.empty() && std::find(sols.begin(), sols.end(), kOne) != sols.end();
            } else if (sols.empty()) {
                ok = false;
            } else {
                fc[i] = sols[rng() % sols.size()];
            }
        }
        if (!ok) continue;
        const HyperCurve H(Fp, h, Poly(fc));
        if (!is_nonsingular(H)) continue;
        const EndoParams planted{d1, d3, d4, opt.ell, opt.n};
        if (!satisfies_curve_identities(H, planted)) throw InternalError("generated curve misses its planted identities");
        const JacobianOrderData ord = jacobian_order(H, opt.workers);
        std::optional<BigInt> r;
        for (const auto& [p, e] : ord.factors)
            if (e == 1 && p >= min_r && (!r || p > *r)) r = p;
        if (!r) {
            why.str("");
            why << "last order " << to_decimal(ord.order) << " has no simple prime factor >= 2^" << opt.min_r_bits;
            continue;
        }
        const Jacobian J(H);
        const BigInt cof = ord.order / *r;
        MumfordDivisor D;
        for (int t = 0; t < 64 && D.is_zero(); ++t) D = J.mul(J.random_divisor(rng), cof);
        if (D.is_zero()) continue;
        std::optional<EndoParams> chosen;
        std::optional<EigenvalueData> ev;
        for (const EndoParams& p : find_all_endo_params(H, opt.ell, opt.n)) {
            try {
                EigenvalueData e = eigenvalue(J, D, *r, p);
                if (e.lambda == 1 || e.lambda == *r - 1) continue;
                chosen = p;
                ev = e;
                break;
            } catch (const NoEigenvalue&) {
            }
        }
        if (!chosen) {
            why.str("");
            why << "psi* acts as +-1 on the subgroup of order " << to_decimal(*r);
            continue;
        }
        BigInt dlog;
        do {
            dlog = 0;
            for (int i = 0; i < 4; ++i) dlog = (dlog << 64) + bigint_from_u64(rng());
            dlog = mod_reduce(dlog, *r);
        } while (dlog == 0);
        inst.hyper.h = H.h();
        inst.hyper.f = H.f();
        inst.hyper.D = D;
        inst.hyper.D_prime = J.mul(D, dlog);
        inst.hyper.r = *r;
        inst.hyper.N = ord.order;
        inst.endo = EndoSection{*chosen, ev->lambda, ev->sign};
        inst.dlog = dlog;
        return inst;
    }
    std::ostringstream msg;
    msg << "no suitable curve after " << opt.max_attempts << " attempts (n = " << opt.n << ", l = " << opt.ell << ", g = " << g
        << ", min_r_bits = " << opt.min_r_bits << ")";
    if (!why.str().empty()) msg << "; " << why.str();
    throw GenerationFailed(msg.str());
}

}  // namespace ghsgls
