#include "ghsgls/tower.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ghsgls {

namespace {

// Dense F_2 matrices packed into 64-bit words, one vector per row.
using BitRow = std::vector<std::uint64_t>;

bool bit(const BitRow& r, int i) { return (r[i >> 6] >> (i & 63)) & 1; }
void flip(BitRow& r, int i) { r[i >> 6] ^= std::uint64_t{1} << (i & 63); }
void xor_into(BitRow& dst, const BitRow& src) {
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] ^= src[k];
}

std::vector<std::uint8_t> unpack(const BitRow& r, int m) {
    std::vector<std::uint8_t> out(m);
    for (int i = 0; i < m; ++i) out[i] = bit(r, i);
    return out;
}

// Solves M x = b over F_2 where column j of M is cols[j].
std::optional<std::vector<std::uint8_t>> solve_gf2(const std::vector<std::vector<std::uint8_t>>& cols,
                                                   const std::vector<std::uint8_t>& b) {
    const int m = static_cast<int>(b.size());
    const int nc = static_cast<int>(cols.size());
    // Augmented rows: nc unknown bits then the rhs bit.
    std::vector<BitRow> rows(m, BitRow((nc + 1 + 63) / 64, 0));
    for (int j = 0; j < nc; ++j)
        for (int i = 0; i < m; ++i)
            if (cols[j][i]) flip(rows[i], j);
    for (int i = 0; i < m; ++i)
        if (b[i]) flip(rows[i], nc);
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < nc && r < m; ++c) {
        int p = r;
        while (p < m && !bit(rows[p], c)) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[r]);
        for (int i = 0; i < m; ++i)
            if (i != r && bit(rows[i], c)) xor_into(rows[i], rows[r]);
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < m; ++i)
        if (bit(rows[i], nc)) return std::nullopt;
    std::vector<std::uint8_t> x(nc, 0);
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = bit(rows[i], nc);
    return x;
}

template <class Field, class Elem>
std::optional<Elem> artin_schreier_root(const Field& K, const Elem& c, int m) {
    if (m % 2 == 1) {
        // Half-trace: z = sum_{j <= (m-1)/2} c^(4^j).
        Elem z = c, acc = c;
        for (int j = 1; j <= (m - 1) / 2; ++j) {
            acc = K.sqr(K.sqr(acc));
            z = K.add(z, acc);
        }
        if (K.add(K.sqr(z), z) != c) return std::nullopt;
        return z;
    }
    std::vector<std::vector<std::uint8_t>> cols(m);
    for (int j = 0; j < m; ++j) {
        std::vector<std::uint8_t> e(m, 0);
        e[j] = 1;
        Elem basis = K.from_bits(e);
        cols[j] = K.to_bits(K.add(K.sqr(basis), basis));
    }
    auto sol = solve_gf2(cols, K.to_bits(c));
    if (!sol) return std::nullopt;
    return K.from_bits(*sol);
}

// Adapter giving BaseField the same surface as ExtField for the template.
struct BaseOps {
    const BaseField& F;
    Fq add(Fq a, Fq b) const { return a + b; }
    Fq sqr(Fq a) const { return F.sqr(a); }
    std::vector<std::uint8_t> to_bits(Fq a) const {
        std::vector<std::uint8_t> out(F.n());
        for (int i = 0; i < F.n(); ++i) out[i] = (a.bits >> i) & 1;
        return out;
    }
    Fq from_bits(const std::vector<std::uint8_t>& b) const {
        std::uint32_t v = 0;
        for (int i = 0; i < F.n(); ++i) v |= static_cast<std::uint32_t>(b[i]) << i;
        return Fq{static_cast<std::uint16_t>(v)};
    }
};

}  // namespace

std::strong_ordering ExtElement::operator<=>(const ExtElement& o) const noexcept {
    if (c.size() != o.c.size()) return c.size() <=> o.c.size();
    for (std::size_t i = c.size(); i-- > 0;)
        if (c[i] != o.c[i]) return c[i] <=> o.c[i];
    return std::strong_ordering::equal;
}

bool ExtElement::is_zero() const noexcept {
    return std::all_of(c.begin(), c.end(), [](Fq v) { return v.is_zero(); });
}

ExtField::ExtField(BaseFieldPtr base, Poly modulus, bool trusted) : F_(std::move(base)), m_(std::move(modulus)), d_(m_.degree()) {
    if (d_ < 1 || !m_.is_monic()) throw InvariantError("extension modulus must be monic of degree >= 1");
    if (!trusted && !PolyRing(F_).is_irreducible(m_)) throw InvariantError("extension modulus is not irreducible over F_q");
}

ExtElement ExtField::one() const {
    Element e = zero();
    e.c[0] = kOne;
    return e;
}

ExtElement ExtField::from_base(Fq c) const {
    Element e = zero();
    e.c[0] = c;
    return e;
}

ExtElement ExtField::gen() const {
    if (d_ == 1) return from_poly(Poly::x());
    Element e = zero();
    e.c[1] = kOne;
    return e;
}

ExtElement ExtField::from_coeffs(std::vector<Fq> coeffs) const {
    if (static_cast<int>(coeffs.size()) > d_) return from_poly(Poly(std::move(coeffs)));
    coeffs.resize(d_, kZero);
    return Element{std::move(coeffs)};
}

ExtElement ExtField::from_poly(const Poly& p) const {
    Poly r = PolyRing(F_).mod(p, m_);
    std::vector<Fq> c = r.coeffs();
    c.resize(d_, kZero);
    return Element{std::move(c)};
}

ExtElement ExtField::add(const Element& a, const Element& b) const {
    Element out = a;
    for (int i = 0; i < d_; ++i) out.c[i] += b.c[i];
    return out;
}

ExtElement ExtField::mul(const Element& a, const Element& b) const {
    std::vector<Fq> t(2 * d_ - 1, kZero);
    const BaseField& F = *F_;
    for (int i = 0; i < d_; ++i) {
        if (a.c[i].is_zero()) continue;
        for (int j = 0; j < d_; ++j) t[i + j] += F.mul(a.c[i], b.c[j]);
    }
    const auto& mc = m_.coeffs();
    for (int i = 2 * d_ - 2; i >= d_; --i) {
        const Fq top = t[i];
        if (top.is_zero()) continue;
        for (int j = 0; j < d_; ++j) {
            if (!mc[j].is_zero()) t[i - d_ + j] += F.mul(top, mc[j]);
        }
    }
    t.resize(d_);
    return Element{std::move(t)};
}

ExtElement ExtField::scale(const Element& a, Fq c) const {
    Element out = a;
    for (Fq& v : out.c) v = F_->mul(v, c);
    return out;
}

ExtElement ExtField::sqr(const Element& a) const {
    std::vector<Fq> t(2 * d_ - 1, kZero);
    for (int i = 0; i < d_; ++i) t[2 * i] = F_->sqr(a.c[i]);
    const auto& mc = m_.coeffs();
    for (int i = 2 * d_ - 2; i >= d_; --i) {
        const Fq top = t[i];
        if (top.is_zero()) continue;
        for (int j = 0; j < d_; ++j)
            if (!mc[j].is_zero()) t[i - d_ + j] += F_->mul(top, mc[j]);
    }
    t.resize(d_);
    return Element{std::move(t)};
}

ExtElement ExtField::inv(const Element& a) const {
    if (a.is_zero()) throw DivisionByZero("inverse of zero in extension field");
    PolyRing R(F_);
    auto x = R.xgcd(Poly(a.c), m_);
    if (!x.g.is_one()) throw InvariantError("extension modulus is reducible");
    return from_poly(x.s);
}

ExtElement ExtField::pow(const Element& a, const BigInt& e) const {
    if (e < 0) return pow(inv(a), BigInt(-e));
    Element r = one();
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = sqr(r);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
    }
    return r;
}

ExtElement ExtField::frobenius(const Element& a, std::int64_t k) const {
    const std::int64_t m = absolute_degree();
    k %= m;
    if (k < 0) k += m;
    Element r = a;
    for (std::int64_t i = 0; i < k; ++i) r = sqr(r);
    return r;
}

int ExtField::trace(const Element& a) const {
    Element t = a, acc = a;
    for (int i = 1; i < absolute_degree(); ++i) {
        acc = sqr(acc);
        t = add(t, acc);
    }
    return t.c[0].bits & 1;
}

bool ExtField::in_base(const Element& a) const {
    return std::all_of(a.c.begin() + 1, a.c.end(), [](Fq v) { return v.is_zero(); });
}

ExtElement ExtField::random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint32_t> dist(0, F_->order() - 1);
    Element e = zero();
    for (Fq& v : e.c) v = Fq{static_cast<std::uint16_t>(dist(rng))};
    return e;
}

std::vector<std::uint8_t> ExtField::to_bits(const Element& a) const {
    const int n = F_->n();
    std::vector<std::uint8_t> out(static_cast<std::size_t>(n) * d_);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < n; ++j) out[i * n + j] = (a.c[i].bits >> j) & 1;
    return out;
}

ExtElement ExtField::from_bits(const std::vector<std::uint8_t>& bits) const {
    const int n = F_->n();
    Element e = zero();
    for (int i = 0; i < d_; ++i) {
        std::uint32_t v = 0;
        for (int j = 0; j < n; ++j) v |= static_cast<std::uint32_t>(bits[i * n + j]) << j;
        e.c[i] = Fq{static_cast<std::uint16_t>(v)};
    }
    return e;
}

std::optional<std::pair<ExtElement, ExtElement>> try_solve_quadratic(const ExtField& K, const ExtElement& c) {
    auto z = artin_schreier_root(K, c, K.absolute_degree());
    if (!z) return std::nullopt;
    ExtElement z1 = K.add(*z, K.one());
    if (z1 < *z) return std::make_pair(z1, *z);
    return std::make_pair(*z, z1);
}

std::optional<std::pair<Fq, Fq>> try_solve_quadratic(const BaseField& F, Fq c) {
    BaseOps ops{F};
    auto z = artin_schreier_root(ops, c, F.n());
    if (!z) return std::nullopt;
    Fq z1 = *z + kOne;
    return std::make_pair(std::min(*z, z1), std::max(*z, z1));
}

std::pair<ExtElement, ExtElement> solve_quadratic(const ExtField& K, const ExtElement& c) {
    auto r = try_solve_quadratic(K, c);
    if (!r) throw NoSolution("y^2 + y = c has no solution (trace of c is 1)");
    return *r;
}

std::pair<Fq, Fq> solve_quadratic(const BaseField& F, Fq c) {
    auto r = try_solve_quadratic(F, c);
    if (!r) throw NoSolution("y^2 + y = c has no solution (trace of c is 1)");
    return *r;
}

FieldTower::FieldTower(std::uint32_t base_modulus, const std::vector<std::uint32_t>& ext_modulus)
    : base_(make_base_field(base_modulus)) {
    std::vector<Fq> coeffs;
    for (std::uint32_t c : ext_modulus) coeffs.push_back(base_->element(c));
    Poly m(coeffs);
    if (m.degree() < 1) throw InvariantError("extension modulus must have degree >= 1");
    if (std::gcd(base_->n(), m.degree()) != 1)
        throw InvariantError("gcd(n, l) must be 1, got n = " + std::to_string(base_->n()) + ", l = " + std::to_string(m.degree()));
    ext_ = std::make_shared<const ExtField>(base_, std::move(m));
}

std::vector<std::uint32_t> FieldTower::ext_modulus_bits() const {
    std::vector<std::uint32_t> out;
    for (Fq c : ext_->modulus().coeffs()) out.push_back(c.bits);
    return out;
}

ExtElement FieldTower::element(const std::vector<std::uint32_t>& coeffs) const {
    if (static_cast<int>(coeffs.size()) != ell()) throw InvariantError("extension element needs exactly l coefficients");
    std::vector<Fq> c;
    for (std::uint32_t v : coeffs) c.push_back(base_->element(v));
    return ExtElement{std::move(c)};
}

Fq frobenius(const BaseField& F, Fq x, std::int64_t k) { return F.frobenius(x, k); }

ExtElement frobenius(const ExtField& K, const ExtElement& x, std::int64_t k) { return K.frobenius(x, k); }

ExtElement gls_delta(const ExtElement& a, const FieldTower& tower) {
    const int nl = tower.n() * tower.ell();
    if (nl % 2 == 0) throw OddityViolated("n * l = " + std::to_string(nl) + " is even");
    const ExtField& K = tower.ext();
    const ExtElement c = K.add(a, K.frobenius(a, tower.ell()));
    ExtElement delta = c, acc = c;
    for (int j = 1; j <= (nl - 1) / 2; ++j) {
        acc = K.sqr(K.sqr(acc));
        delta = K.add(delta, acc);
    }
    return delta;
}

std::vector<ExtElement> subfield_basis(const FieldTower& tower) {
    const ExtField& K = tower.ext();
    const int m = K.absolute_degree();
    const int ell = tower.ell();
    // Kernel of x -> x^(2^l) + x over F_2.
    std::vector<std::vector<std::uint8_t>> cols(m);
    for (int j = 0; j < m; ++j) {
        std::vector<std::uint8_t> e(m, 0);
        e[j] = 1;
        ExtElement x = K.from_bits(e);
        cols[j] = K.to_bits(K.add(K.frobenius(x, ell), x));
    }
    std::vector<BitRow> rows(m, BitRow((m + 63) / 64, 0));
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i)
            if (cols[j][i]) flip(rows[i], j);
    std::vector<int> pivot_col;
    std::vector<int> is_pivot(m, 0);
    int r = 0;
    for (int c = 0; c < m && r < m; ++c) {
        int p = r;
        while (p < m && !bit(rows[p], c)) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[r]);
        for (int i = 0; i < m; ++i)
            if (i != r && bit(rows[i], c)) xor_into(rows[i], rows[r]);
        pivot_col.push_back(c);
        is_pivot[c] = 1;
        ++r;
    }
    std::vector<BitRow> kernel;
    for (int fcol = 0; fcol < m; ++fcol) {
        if (is_pivot[fcol]) continue;
        BitRow v((m + 63) / 64, 0);
        flip(v, fcol);
        for (int i = 0; i < r; ++i)
            if (bit(rows[i], fcol)) flip(v, pivot_col[i]);
        kernel.push_back(v);
    }
    // Reduce so that leading (highest) bits are distinct and cleared elsewhere.
    auto lead = [&](const BitRow& v) {
        for (int i = m - 1; i >= 0; --i)
            if (bit(v, i)) return i;
        return -1;
    };
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        std::size_t best = i;
        for (std::size_t k = i; k < kernel.size(); ++k)
            if (lead(kernel[k]) > lead(kernel[best])) best = k;
        std::swap(kernel[i], kernel[best]);
        const int li = lead(kernel[i]);
        for (std::size_t k = 0; k < kernel.size(); ++k)
            if (k != i && li >= 0 && bit(kernel[k], li)) xor_into(kernel[k], kernel[i]);
    }
    std::sort(kernel.begin(), kernel.end(), [&](const BitRow& a, const BitRow& b) { return lead(a) < lead(b); });
    std::vector<ExtElement> out;
    for (const auto& v : kernel) out.push_back(K.from_bits(unpack(v, m)));
    return out;
}

bool NormalBasis::is_valid(const FieldTower& tower, const ExtElement& w) {
    const ExtField& K = tower.ext();
    const int ell = tower.ell();
    if (K.frobenius(w, ell) != w) return false;
    std::vector<ExtElement> conj{w};
    ExtElement sum = w;
    for (int j = 1; j < ell; ++j) {
        conj.push_back(K.sqr(conj.back()));
        sum = K.add(sum, conj.back());
    }
    if (sum != K.one()) return false;
    std::vector<std::vector<Fq>> a(ell, std::vector<Fq>(ell));
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j) a[i][j] = conj[j].c[i];
    return detail::matrix_rank(tower.base(), a) == static_cast<std::size_t>(ell);
}

ExtElement find_normal_element(const FieldTower& tower) {
    const auto basis = subfield_basis(tower);
    const ExtField& K = tower.ext();
    const std::size_t k = basis.size();
    const std::uint64_t limit = k >= 40 ? (std::uint64_t{1} << 40) : (std::uint64_t{1} << k);
    for (std::uint64_t idx = 1; idx < limit; ++idx) {
        ExtElement w = K.zero();
        for (std::size_t b = 0; b < k; ++b)
            if ((idx >> b) & 1) w = K.add(w, basis[b]);
        if (NormalBasis::is_valid(tower, w)) return w;
    }
    throw NotFound("no normal element found in the subfield F_2^l");
}

NormalBasis::NormalBasis(const FieldTower& tower, ExtElement w) {
    if (!is_valid(tower, w)) throw InvariantError("w does not generate a normal basis with unit trace");
    K_ = std::make_shared<const ExtField>(tower.ext());
    const int ell = tower.ell();
    conj_.push_back(std::move(w));
    for (int j = 1; j < ell; ++j) conj_.push_back(K_->sqr(conj_.back()));
    std::vector<std::vector<Fq>> a(ell, std::vector<Fq>(ell));
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j) a[i][j] = conj_[j].c[i];
    auto inv = detail::invert_matrix(tower.base(), a);
    if (!inv) throw InternalError("normal basis matrix is singular");
    inverse_ = std::move(*inv);
}

std::vector<Fq> NormalBasis::coords(const ExtElement& x) const {
    const int ell = static_cast<int>(conj_.size());
    const BaseField& F = K_->base();
    std::vector<Fq> out(ell, kZero);
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j) out[i] += F.mul(inverse_[i][j], x.c[j]);
    return out;
}

ExtElement NormalBasis::from_coords(const std::vector<Fq>& xs) const {
    ExtElement out = K_->zero();
    for (std::size_t j = 0; j < conj_.size(); ++j) out = K_->add(out, K_->scale(conj_[j], xs[j]));
    return out;
}

namespace detail {

std::optional<std::vector<std::vector<Fq>>> invert_matrix(const BaseField& F, std::vector<std::vector<Fq>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Fq>> inv(n, std::vector<Fq>(n, kZero));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = kOne;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        const Fq s = F.inv(a[c][c]);
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] = F.mul(a[c][j], s);
            inv[c][j] = F.mul(inv[c][j], s);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            const Fq f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] += F.mul(f, a[c][j]);
                inv[i][j] += F.mul(f, inv[c][j]);
            }
        }
    }
    return inv;
}

std::size_t matrix_rank(const BaseField& F, std::vector<std::vector<Fq>> a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const Fq s = F.inv(a[r][c]);
        for (std::size_t j = c; j < cols; ++j) a[r][j] = F.mul(a[r][j], s);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Fq f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] += F.mul(f, a[r][j]);
        }
        ++r;
    }
    return r;
}

}  // namespace detail

}  // namespace ghsgls
