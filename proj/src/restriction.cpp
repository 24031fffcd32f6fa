#include "ghsgls/restriction.hpp"

namespace ghsgls {

CoordVector iota(const ECPoint& P, const NormalBasis& nb) {
    if (P.infinity) return CoordVector{true, {}, {}};
    return CoordVector{false, nb.coords(P.x), nb.coords(P.y)};
}

ECPoint iota_inv(const CoordVector& v, const NormalBasis& nb) {
    if (v.infinity) return ECPoint::at_infinity();
    return ECPoint{false, nb.from_coords(v.xs), nb.from_coords(v.ys)};
}

CoordVector big_pi(const CoordVector& v, const BaseField& F) {
    if (v.infinity) return v;
    const std::size_t ell = v.xs.size();
    CoordVector out{false, std::vector<Fq>(ell), std::vector<Fq>(ell)};
    for (std::size_t j = 0; j < ell; ++j) {
        const std::size_t from = (j + ell - 1) % ell;
        out.xs[j] = F.sqr(v.xs[from]);
        out.ys[j] = F.sqr(v.ys[from]);
    }
    return out;
}

CoordVector big_phi(const CoordVector& v, Fq delta, const BaseField& F) {
    if (v.infinity) return v;
    CoordVector out = v;
    for (std::size_t j = 0; j < v.ys.size(); ++j) out.ys[j] += F.mul(delta, v.xs[j]);
    return out;
}

CoordVector big_psi(const CoordVector& v, Fq delta, int ell, const BaseField& F) {
    CoordVector out = v;
    for (int i = 0; i < ell; ++i) out = big_pi(out, F);
    return big_phi(out, delta, F);
}

std::vector<Fq> aprime_residuals(const BaseField& F, Fq x, const std::vector<Fq>& ys, Fq a, const std::vector<int>& b_bits) {
    const std::size_t ell = ys.size();
    if (b_bits.size() != ell) throw InvariantError("b needs one bit per coordinate");
    const Fq x2 = F.sqr(x);
    const Fq common = F.mul(x2, x) + F.mul(a, x2);
    std::vector<Fq> out(ell);
    for (std::size_t j = 0; j < ell; ++j) {
        const Fq prev = ys[(j + ell - 1) % ell];
        out[j] = common + F.mul(x, ys[j]) + F.sqr(prev) + (b_bits[j] ? kOne : kZero);
    }
    return out;
}

}  // namespace ghsgls
