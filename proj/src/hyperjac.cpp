#include "ghsgls/hyperjac.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ghsgls/gf2.hpp"
#include "ghsgls/tower.hpp"

namespace ghsgls {

HyperCurve::HyperCurve(BaseFieldPtr field, Poly h, Poly f) : F_(std::move(field)), h_(std::move(h)), f_(std::move(f)) {
    if (h_.is_zero()) throw InvalidCurve("h = 0 is singular in characteristic 2");
    if (f_.degree() < 3 || f_.degree() % 2 == 0) throw InvalidCurve("deg f must be odd and at least 3");
    g_ = (f_.degree() - 1) / 2;
    if (h_.degree() > g_) throw InvalidCurve("deg h must not exceed the genus");
}

Jacobian::Jacobian(HyperCurve curve) : H_(std::move(curve)), R_(H_.field_ptr()) {}

bool Jacobian::is_valid(const MumfordDivisor& D) const {
    if (!D.u.is_monic()) return false;
    if (D.u.degree() > genus()) return false;
    if (D.v.degree() >= D.u.degree()) return false;
    const Poly w = R_.add(R_.add(R_.sqr(D.v), R_.mul(D.v, H_.h())), H_.f());
    return R_.mod(w, D.u).is_zero();
}

MumfordDivisor Jacobian::make(Poly u, Poly v) const {
    if (u.is_zero()) throw InvalidDivisor("u = 0");
    MumfordDivisor D{R_.monic(u), std::move(v)};
    if (!is_valid(D)) throw InvalidDivisor("u must be monic of degree <= g with deg v < deg u and u | v^2 + v h + f");
    return D;
}

MumfordDivisor Jacobian::neg(const MumfordDivisor& D) const {
    if (D.is_zero()) return D;
    return MumfordDivisor{D.u, R_.mod(R_.add(D.v, H_.h()), D.u)};
}

MumfordDivisor Jacobian::reduce(Poly u, Poly v) const {
    v = R_.mod(v, u);
    while (u.degree() > genus()) {
        const Poly w = R_.add(R_.add(H_.f(), R_.mul(v, H_.h())), R_.sqr(v));
        auto [q, rem] = R_.divmod(w, u);
        if (!rem.is_zero()) throw InternalError("Cantor reduction: u does not divide v^2 + v h + f");
        u = R_.monic(q);
        v = R_.mod(R_.add(H_.h(), v), u);
    }
    return MumfordDivisor{std::move(u), std::move(v)};
}

MumfordDivisor Jacobian::add(const MumfordDivisor& a, const MumfordDivisor& b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const auto g1 = R_.xgcd(a.u, b.u);
    const Poly w = R_.add(R_.add(a.v, b.v), H_.h());
    const auto g2 = R_.xgcd(g1.g, w);
    const Poly& d = g2.g;
    const Poly s1 = R_.mul(g2.s, g1.s);
    const Poly s2 = R_.mul(g2.s, g1.t);
    const Poly& s3 = g2.t;
    Poly u = R_.mul(a.u, b.u);
    Poly num = R_.add(R_.mul(R_.mul(s1, a.u), b.v), R_.mul(R_.mul(s2, b.u), a.v));
    num = R_.add(num, R_.mul(s3, R_.add(R_.mul(a.v, b.v), H_.f())));
    if (!d.is_one()) {
        u = R_.div(u, R_.sqr(d));
        num = R_.div(num, d);
    }
    return reduce(std::move(u), std::move(num));
}

MumfordDivisor Jacobian::mul(const MumfordDivisor& D, const BigInt& k) const {
    if (k < 0) return mul(neg(D), BigInt(-k));
    MumfordDivisor R = zero();
    const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        R = dbl(R);
        if (mpz_tstbit(k.get_mpz_t(), i)) R = add(R, D);
    }
    return R;
}

std::vector<std::pair<MumfordDivisor, unsigned>> Jacobian::decompose(const MumfordDivisor& D, std::uint64_t seed) const {
    std::vector<std::pair<MumfordDivisor, unsigned>> out;
    if (D.is_zero()) return out;
    for (const auto& [p, e] : R_.factorize(D.u, seed).factors) out.emplace_back(MumfordDivisor{p, R_.mod(D.v, p)}, e);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::pair<Poly, Poly>> Jacobian::v_solutions(const Poly& u) const {
    const ExtField K(H_.field_ptr(), u, true);
    const ExtElement hb = K.from_poly(H_.h());
    const ExtElement fb = K.from_poly(H_.f());
    if (hb.is_zero()) {
        const Poly v = K.to_poly(K.frobenius(fb, K.absolute_degree() - 1));
        return std::make_pair(v, v);
    }
    const ExtElement c = K.div(fb, K.sqr(hb));
    auto z = try_solve_quadratic(K, c);
    if (!z) return std::nullopt;
    Poly v1 = K.to_poly(K.mul(hb, z->first));
    Poly v2 = K.to_poly(K.mul(hb, z->second));
    if (v2 < v1) std::swap(v1, v2);
    return std::make_pair(std::move(v1), std::move(v2));
}

int Jacobian::v_count(const Poly& u) const {
    const ExtField K(H_.field_ptr(), u, true);
    const ExtElement hb = K.from_poly(H_.h());
    if (hb.is_zero()) return 1;
    const ExtElement c = K.div(K.from_poly(H_.f()), K.sqr(hb));
    return K.trace(c) == 0 ? 2 : 0;
}

MumfordDivisor Jacobian::random_divisor(std::mt19937_64& rng) const {
    for (;;) {
        const Poly u = R_.random(rng, genus(), true);
        const Factorization fac = R_.factorize(u, rng());
        bool ok = true;
        Poly V, M = Poly::one();
        for (const auto& [p, e] : fac.factors) {
            if (e != 1) {
                ok = false;
                break;
            }
            auto sols = v_solutions(p);
            if (!sols) {
                ok = false;
                break;
            }
            const Poly& vi = (rng() & 1) ? sols->second : sols->first;
            // V + M * ((vi - V) * M^{-1} mod p)
            const Poly t = R_.mulmod(R_.add(vi, V), R_.invmod(M, p), p);
            V = R_.add(V, R_.mul(M, t));
            M = R_.mul(M, p);
        }
        if (!ok) continue;
        return make(u, R_.mod(V, u));
    }
}

MumfordDivisor Jacobian::random_divisor(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    return random_divisor(rng);
}

namespace {

// Image of the F_q generator t inside the flat field F_{2^(n k)}.
std::uint64_t embed_generator(const gf2::FlatField& K, std::uint32_t base_modulus, int n) {
    const std::uint64_t sub_order = (std::uint64_t{1} << n) - 1;
    const std::uint64_t cofactor = (K.size() - 1) / sub_order;
    const auto n_factors = factor_u64(sub_order);
    auto eval = [&](std::uint64_t x) {
        std::uint64_t acc = 0;
        for (int i = n; i >= 0; --i) {
            acc = K.mul(acc, x);
            if ((base_modulus >> i) & 1) acc ^= 1;
        }
        return acc;
    };
    for (std::uint64_t a = 2; a < K.size(); ++a) {
        const std::uint64_t z = K.pow(a, cofactor);
        bool full = z != 0;
        for (const auto& [p, e] : n_factors)
            if (full && sub_order > 1 && K.pow(z, sub_order / p) == 1) full = false;
        if (!full) continue;
        std::uint64_t cand = 1;
        for (std::uint64_t i = 0; i < sub_order; ++i) {
            if (eval(cand) == 0) return cand;
            cand = K.mul(cand, z);
        }
    }
    if (n == 1) return 1;
    throw InternalError("no root of the base modulus in the flat field");
}

}  // namespace

BigInt count_points(const HyperCurve& H, int k, int workers) {
    const BaseField& F = H.field();
    const int m = F.n() * k;
    if (k < 1) throw InvariantError("extension degree must be positive");
    if (m > 24) throw TooLarge("point counting needs q^k <= 2^24");
    const gf2::FlatField K(gf2::smallest_irreducible(m));
    const std::uint64_t t = embed_generator(K, F.modulus(), F.n());
    std::vector<std::uint64_t> tpow(F.n());
    tpow[0] = 1;
    for (int i = 1; i < F.n(); ++i) tpow[i] = K.mul(tpow[i - 1], t);
    auto embed = [&](Fq c) {
        std::uint64_t out = 0;
        for (int i = 0; i < F.n(); ++i)
            if ((c.bits >> i) & 1) out ^= tpow[i];
        return out;
    };
    std::vector<std::uint64_t> hc, fc;
    for (Fq c : H.h().coeffs()) hc.push_back(embed(c));
    for (Fq c : H.f().coeffs()) fc.push_back(embed(c));
    auto horner = [&](const std::vector<std::uint64_t>& p, std::uint64_t x) {
        std::uint64_t acc = 0;
        for (std::size_t i = p.size(); i-- > 0;) acc = K.mul(acc, x) ^ p[i];
        return acc;
    };
    const std::uint64_t total = K.size();
    workers = std::max(1, workers);
    std::vector<std::uint64_t> partial(workers, 0);
    auto run = [&](int w) {
        constexpr std::size_t kBlock = 1024;
        std::vector<std::uint64_t> hv, fv, pref;
        std::uint64_t count = 0;
        const std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
        for (std::uint64_t start = lo; start < hi; start += kBlock) {
            const std::uint64_t end = std::min<std::uint64_t>(hi, start + kBlock);
            hv.clear();
            fv.clear();
            for (std::uint64_t x = start; x < end; ++x) {
                const std::uint64_t hx = horner(hc, x);
                if (hx == 0) {
                    count += 1;
                    continue;
                }
                hv.push_back(hx);
                fv.push_back(horner(fc, x));
            }
            if (hv.empty()) continue;
            // Montgomery batch inversion.
            pref.assign(hv.size(), 0);
            std::uint64_t acc = 1;
            for (std::size_t i = 0; i < hv.size(); ++i) {
                pref[i] = acc;
                acc = K.mul(acc, hv[i]);
            }
            std::uint64_t inv = K.inv(acc);
            for (std::size_t i = hv.size(); i-- > 0;) {
                const std::uint64_t hinv = K.mul(inv, pref[i]);
                inv = K.mul(inv, hv[i]);
                const std::uint64_t c = K.mul(fv[i], K.sqr(hinv));
                if (K.trace(c) == 0) count += 2;
            }
        }
        partial[w] = count;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    std::uint64_t sum = 1;
    for (std::uint64_t c : partial) sum += c;
    return bigint_from_u64(sum);
}

JacobianOrderData jacobian_order(const HyperCurve& H, int workers) {
    const int g = H.genus();
    const BigInt q = bigint_from_u64(H.field().order());
    JacobianOrderData out;
    std::vector<BigInt> S(g + 1), e(g + 1);
    BigInt qk = 1;
    for (int k = 1; k <= g; ++k) {
        qk *= q;
        out.counts.push_back(count_points(H, k, workers));
        S[k] = qk + 1 - out.counts.back();
    }
    // Newton's identities for the elementary symmetric functions of the
    // Frobenius eigenvalues.
    e[0] = 1;
    for (int k = 1; k <= g; ++k) {
        BigInt acc = 0;
        for (int i = 1; i <= k; ++i) {
            if (i % 2 == 1)
                acc += e[k - i] * S[i];
            else
                acc -= e[k - i] * S[i];
        }
        if (acc % k != 0) throw InternalError("Newton identity produced a non-integer coefficient");
        e[k] = acc / k;
    }
    out.lpoly.assign(2 * g + 1, 0);
    for (int k = 0; k <= g; ++k) out.lpoly[k] = (k % 2 == 0) ? e[k] : BigInt(-e[k]);
    BigInt qp = 1;
    for (int i = g - 1; i >= 0; --i) {
        qp *= q;
        out.lpoly[2 * g - i] = qp * out.lpoly[i];
    }
    out.order = 0;
    for (const auto& a : out.lpoly) out.order += a;
    const double sq = std::sqrt(static_cast<double>(H.field().order()));
    const double lo = std::pow(sq - 1, 2 * g), hi = std::pow(sq + 1, 2 * g);
    const double N = out.order.get_d();
    if (N < lo * 0.999 || N > hi * 1.001) throw InternalError("Jacobian order outside the Weil interval");
    out.factors = factor_integer(out.order);
    return out;
}

BigInt divisor_order(const Jacobian& J, const MumfordDivisor& D, const BigInt& N, const Factored& N_factored) {
    if (!J.mul(D, N).is_zero()) throw InvariantError("N is not a multiple of the divisor order");
    BigInt o = N;
    for (const auto& [p, e] : N_factored) {
        for (unsigned i = 0; i < e; ++i) {
            if (!J.mul(D, BigInt(o / p)).is_zero()) break;
            o /= p;
        }
    }
    return o;
}

bool is_nonsingular(const HyperCurve& H) {
    const PolyRing R = H.ring();
    const Poly dh = R.derivative(H.h()), df = R.derivative(H.f());
    const Poly w = R.add(R.mul(R.sqr(dh), H.f()), R.sqr(df));
    return R.gcd(H.h(), w).is_one();
}

}  // namespace ghsgls
