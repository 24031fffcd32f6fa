#include "ghsgls/poly.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "ghsgls/error.hpp"

namespace ghsgls {

Poly Poly::monomial(Fq c, int degree) {
    if (c.is_zero()) return Poly();
    std::vector<Fq> v(static_cast<std::size_t>(degree) + 1, kZero);
    v.back() = c;
    return Poly(std::move(v));
}

void Poly::set(int i, Fq v) {
    if (i >= static_cast<int>(c_.size())) {
        if (v.is_zero()) return;
        c_.resize(static_cast<std::size_t>(i) + 1, kZero);
    }
    c_[i] = v;
    normalize();
}

std::strong_ordering Poly::operator<=>(const Poly& o) const noexcept {
    if (c_.size() != o.c_.size()) return c_.size() <=> o.c_.size();
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] != o.c_[i]) return c_[i] <=> o.c_[i];
    }
    return std::strong_ordering::equal;
}

std::size_t PolyHash::operator()(const Poly& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Fq c : p.coeffs()) {
        h ^= c.bits;
        h *= 0x100000001b3ull;
    }
    return h;
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Fq> out(std::max(x.size(), y.size()), kZero);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
    return Poly(std::move(out));
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
    if (a.is_zero() || b.is_zero()) return Poly();
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Fq> out(x.size() + y.size() - 1, kZero);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += F_->mul(x[i], y[j]);
    }
    return Poly(std::move(out));
}

Poly PolyRing::sqr(const Poly& a) const {
    if (a.is_zero()) return Poly();
    const auto& x = a.coeffs();
    std::vector<Fq> out(2 * x.size() - 1, kZero);
    for (std::size_t i = 0; i < x.size(); ++i) out[2 * i] = F_->sqr(x[i]);
    return Poly(std::move(out));
}

Poly PolyRing::scale(const Poly& a, Fq c) const {
    std::vector<Fq> out(a.coeffs());
    for (Fq& v : out) v = F_->mul(v, c);
    return Poly(std::move(out));
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    const int db = b.degree();
    if (a.degree() < db) return {Poly(), a};
    std::vector<Fq> r(a.coeffs());
    std::vector<Fq> q(static_cast<std::size_t>(a.degree() - db) + 1, kZero);
    const Fq inv_lead = F_->inv(b.lead());
    const auto& bc = b.coeffs();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i].is_zero()) continue;
        const Fq c = F_->mul(r[i], inv_lead);
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) r[i - db + j] += F_->mul(c, bc[j]);
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly PolyRing::mod(const Poly& a, const Poly& b) const {
    if (b.is_zero()) throw DivisionByZero("polynomial reduction modulo zero");
    const int db = b.degree();
    if (a.degree() < db) return a;
    std::vector<Fq> r(a.coeffs());
    const auto& bc = b.coeffs();
    const bool monic = b.is_monic();
    const Fq inv_lead = F_->inv(b.lead());
    for (int i = a.degree(); i >= db; --i) {
        if (r[i].is_zero()) continue;
        const Fq c = monic ? r[i] : F_->mul(r[i], inv_lead);
        for (int j = 0; j <= db; ++j) r[i - db + j] += F_->mul(c, bc[j]);
    }
    r.resize(static_cast<std::size_t>(db));
    return Poly(std::move(r));
}

Poly PolyRing::monic(const Poly& a) const {
    if (a.is_zero() || a.is_monic()) return a;
    return scale(a, F_->inv(a.lead()));
}

Poly PolyRing::gcd(const Poly& a, const Poly& b) const {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

PolyRing::XGcd PolyRing::xgcd(const Poly& a, const Poly& b) const {
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(), s1;
    Poly t0, t1 = Poly::one();
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = add(s0, mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = add(t0, mul(q, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {Poly(), Poly(), Poly()};
    const Fq li = F_->inv(r0.lead());
    return {scale(r0, li), scale(s0, li), scale(t0, li)};
}

Fq PolyRing::eval(const Poly& p, Fq x) const {
    Fq acc = kZero;
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = F_->mul(acc, x) + c[i];
    return acc;
}

Poly PolyRing::derivative(const Poly& p) const {
    const auto& c = p.coeffs();
    if (c.size() <= 1) return Poly();
    std::vector<Fq> out(c.size() - 1, kZero);
    for (std::size_t i = 1; i < c.size(); i += 2) out[i - 1] = c[i];
    return Poly(std::move(out));
}

Poly PolyRing::sqrt(const Poly& p) const {
    const auto& c = p.coeffs();
    if (c.empty()) return Poly();
    std::vector<Fq> out(c.size() / 2 + 1, kZero);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i % 2 == 1) {
            if (!c[i].is_zero()) throw Error("sqrt of a polynomial that is not a square");
            continue;
        }
        out[i / 2] = F_->sqrt(c[i]);
    }
    return Poly(std::move(out));
}

Poly PolyRing::powmod(const Poly& a, const BigInt& e, const Poly& m) const {
    if (e < 0) return powmod(invmod(a, m), BigInt(-e), m);
    Poly result = mod(Poly::one(), m);
    Poly base = mod(a, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = sqrmod(result, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, base, m);
    }
    return result;
}

Poly PolyRing::invmod(const Poly& a, const Poly& m) const {
    XGcd x = xgcd(mod(a, m), m);
    if (!x.g.is_one()) throw DivisionByZero("polynomial not invertible modulo the given modulus");
    return mod(x.s, m);
}

Poly PolyRing::frobmod(const Poly& a, int k, const Poly& m) const {
    Poly r = mod(a, m);
    const int steps = k * F_->n();
    for (int i = 0; i < steps; ++i) r = sqrmod(r, m);
    return r;
}

Poly PolyRing::random(std::mt19937_64& rng, int degree, bool make_monic) const {
    if (degree < 0) return Poly();
    std::vector<Fq> c(static_cast<std::size_t>(degree) + 1);
    std::uniform_int_distribution<std::uint32_t> dist(0, F_->order() - 1);
    for (auto& v : c) v = Fq{static_cast<std::uint16_t>(dist(rng))};
    if (make_monic) {
        c.back() = kOne;
    } else if (c.back().is_zero()) {
        std::uniform_int_distribution<std::uint32_t> nz(1, F_->order() - 1);
        c.back() = Fq{static_cast<std::uint16_t>(nz(rng))};
    }
    return Poly(std::move(c));
}

bool PolyRing::is_irreducible(const Poly& p) const {
    const int n = p.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const Poly m = monic(p);
    const Poly x = mod(Poly::x(), m);
    // Rabin's test.
    if (frobmod(x, n, m) != x) return false;
    int rem = n;
    for (int k = 2; k <= rem; ++k) {
        if (rem % k) continue;
        while (rem % k == 0) rem /= k;
        if (!gcd(add(frobmod(x, n / k, m), x), m).is_one()) return false;
    }
    return true;
}

std::vector<std::pair<Poly, unsigned>> PolyRing::squarefree_decomposition(const Poly& f_in) const {
    // Square-free factorization over a field of characteristic 2.
    std::vector<std::pair<Poly, unsigned>> out;
    if (f_in.degree() < 1) return out;
    Poly f = monic(f_in);
    const Poly fp = derivative(f);
    if (fp.is_zero()) {
        for (auto& [p, e] : squarefree_decomposition(sqrt(f))) out.emplace_back(p, 2 * e);
        return out;
    }
    Poly c = gcd(f, fp);
    Poly w = div(f, c);
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = div(w, y);
        if (!z.is_one()) out.emplace_back(z, i);
        ++i;
        w = y;
        c = div(c, y);
    }
    if (!c.is_one()) {
        for (auto& [p, e] : squarefree_decomposition(sqrt(c))) out.emplace_back(p, 2 * e);
    }
    return out;
}

std::vector<std::pair<Poly, int>> PolyRing::distinct_degree(const Poly& squarefree) const {
    std::vector<std::pair<Poly, int>> out;
    Poly f = monic(squarefree);
    const Poly x = Poly::x();
    Poly h = mod(x, f);
    int d = 1;
    while (f.degree() >= 2 * d) {
        h = frobmod(h, 1, f);
        Poly g = gcd(add(h, x), f);
        if (!g.is_one()) {
            out.emplace_back(g, d);
            f = div(f, g);
            h = mod(h, f);
        }
        ++d;
    }
    if (f.degree() >= 1) out.emplace_back(f, f.degree());
    return out;
}

std::vector<Poly> PolyRing::equal_degree(const Poly& p, int d, std::mt19937_64& rng) const {
    if (p.degree() == d) return {monic(p)};
    // Trace map T(a) = sum_{i < n d} a^(2^i) splits with probability ~1/2.
    const int steps = d * F_->n();
    for (int attempt = 0; attempt < 64; ++attempt) {
        Poly a = random(rng, p.degree() - 1, false);
        if (a.degree() < 1) continue;
        Poly t = a, acc = a;
        for (int i = 1; i < steps; ++i) {
            acc = sqrmod(acc, p);
            t = add(t, acc);
        }
        Poly g = gcd(t, p);
        if (g.degree() > 0 && g.degree() < p.degree()) {
            auto left = equal_degree(g, d, rng);
            auto right = equal_degree(div(p, g), d, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
    throw InternalError("equal-degree splitting did not converge in 64 attempts");
}

namespace {

Factorization collect(Fq lead, std::vector<std::pair<Poly, unsigned>> factors) {
    std::map<Poly, unsigned> acc;
    for (auto& [p, e] : factors) acc[p] += e;
    Factorization out;
    out.lead = lead;
    out.factors.assign(acc.begin(), acc.end());
    return out;
}

}  // namespace

Factorization PolyRing::factorize(const Poly& p, std::uint64_t seed) const {
    if (p.degree() < 1) throw Error("factorize requires a polynomial of degree >= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Poly, unsigned>> factors;
    for (auto& [sf, e] : squarefree_decomposition(p)) {
        for (auto& [block, d] : distinct_degree(sf)) {
            for (auto& irr : equal_degree(block, d, rng)) factors.emplace_back(irr, e);
        }
    }
    return collect(p.lead(), std::move(factors));
}

std::optional<Factorization> PolyRing::smooth_factor(const Poly& u, int s, std::uint64_t seed) const {
    if (u.degree() < 1) return Factorization{u.lead().is_zero() ? kOne : u.lead(), {}};
    std::mt19937_64 rng(seed);
    const Poly x = Poly::x();
    std::vector<std::pair<Poly, unsigned>> factors;
    for (auto& [sf, e] : squarefree_decomposition(u)) {
        Poly f = sf;
        Poly h = mod(x, f);
        for (int d = 1; f.degree() >= 1; ++d) {
            if (f.degree() < 2 * d) {
                // What remains is irreducible.
                if (f.degree() > s) return std::nullopt;
                factors.emplace_back(f, e);
                break;
            }
            if (d > s) return std::nullopt;
            h = frobmod(h, 1, f);
            Poly g = gcd(add(h, x), f);
            if (!g.is_one()) {
                for (auto& irr : equal_degree(g, d, rng)) factors.emplace_back(irr, e);
                f = div(f, g);
                h = mod(h, f);
            }
        }
    }
    return collect(u.lead(), std::move(factors));
}

Poly PolyRing::sigma(const Poly& p, int ell) const {
    std::vector<Fq> c(p.coeffs());
    for (Fq& v : c) v = F_->frobenius(v, ell);
    return Poly(std::move(c));
}

Poly PolyRing::scale_sub(const Poly& p, Fq delta) const {
    if (delta.is_zero()) throw ZeroScale("scale_sub requires a nonzero scale");
    std::vector<Fq> c(p.coeffs());
    const int d = p.degree();
    Fq pw = kOne;
    for (int i = d; i >= 0; --i) {
        c[i] = F_->mul(c[i], pw);
        pw = F_->mul(pw, delta);
    }
    return Poly(std::move(c));
}

std::vector<Poly> PolyRing::monic_irreducibles(int d) const {
    if (d < 1) return {};
    const std::uint32_t q = F_->order();
    const int n = F_->n();
    if (static_cast<long>(n) * d > 24) throw TooLarge("monic irreducible enumeration beyond q^d = 2^24");
    const std::uint64_t count = std::uint64_t{1} << (n * d);
    const std::uint32_t mask = q - 1;
    auto unpack = [&](std::uint64_t idx, int deg, std::vector<Fq>& out) {
        out.assign(static_cast<std::size_t>(deg) + 1, kZero);
        for (int j = 0; j < deg; ++j) out[j] = Fq{static_cast<std::uint16_t>((idx >> (n * j)) & mask)};
        out[deg] = kOne;
    };
    std::vector<Poly> out;
    if (d == 1) {
        for (std::uint32_t c = 0; c < q; ++c) out.push_back(Poly({Fq{static_cast<std::uint16_t>(c)}, kOne}));
        return out;
    }
    // Sieve: mark every product of two monic factors of positive degree.
    std::vector<std::uint8_t> reducible(count, 0);
    std::vector<Fq> a, b, prod(static_cast<std::size_t>(d) + 1);
    for (int da = 1; 2 * da <= d; ++da) {
        const int db = d - da;
        const std::uint64_t na = std::uint64_t{1} << (n * da);
        const std::uint64_t nb = std::uint64_t{1} << (n * db);
        for (std::uint64_t ia = 0; ia < na; ++ia) {
            unpack(ia, da, a);
            for (std::uint64_t ib = (da == db ? ia : 0); ib < nb; ++ib) {
                unpack(ib, db, b);
                std::fill(prod.begin(), prod.end(), kZero);
                for (int i = 0; i <= da; ++i) {
                    if (a[i].is_zero()) continue;
                    for (int j = 0; j <= db; ++j) prod[i + j] += F_->mul(a[i], b[j]);
                }
                std::uint64_t idx = 0;
                for (int j = 0; j < d; ++j) idx |= static_cast<std::uint64_t>(prod[j].bits) << (n * j);
                reducible[idx] = 1;
            }
        }
    }
    std::vector<Fq> c;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        if (reducible[idx]) continue;
        unpack(idx, d, c);
        out.push_back(Poly(c));
    }
    return out;
}

BigInt PolyRing::encode(const Poly& p) const {
    BigInt out = 0;
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        out <<= F_->n();
        out += c[i].bits;
    }
    return out;
}

}  // namespace ghsgls
