#include "ghsgls/ecurve.hpp"

namespace ghsgls {

BinaryCurve::BinaryCurve(FieldTower tower, ExtElement a, ExtElement b)
    : tower_(std::move(tower)), a_(std::move(a)), b_(std::move(b)) {
    const int ell = tower_.ell();
    if (static_cast<int>(a_.c.size()) != ell || static_cast<int>(b_.c.size()) != ell)
        throw InvariantError("curve coefficients must have l coordinates");
    if (b_.is_zero()) throw InvalidCurve("b = 0 gives a singular curve");
}

bool BinaryCurve::contains(const ExtElement& x, const ExtElement& y) const {
    const ExtField& K = field();
    const ExtElement x2 = K.sqr(x);
    const ExtElement lhs = K.add(K.sqr(y), K.mul(x, y));
    const ExtElement rhs = K.add(K.add(K.mul(x2, x), K.mul(a_, x2)), b_);
    return lhs == rhs;
}

ECPoint BinaryCurve::point(ExtElement x, ExtElement y) const {
    if (!contains(x, y)) throw PointNotOnCurve("affine pair does not satisfy the curve equation");
    return ECPoint{false, std::move(x), std::move(y)};
}

ECPoint BinaryCurve::random_point(std::mt19937_64& rng) const {
    const ExtField& K = field();
    for (;;) {
        ExtElement x = K.random(rng);
        if (x.is_zero()) {
            // y^2 = b
            ExtElement y = K.frobenius(b_, K.absolute_degree() - 1);
            return ECPoint{false, std::move(x), std::move(y)};
        }
        // y = x z with z^2 + z = x + a + b / x^2
        const ExtElement c = K.add(K.add(x, a_), K.div(b_, K.sqr(x)));
        auto z = try_solve_quadratic(K, c);
        if (!z) continue;
        const ExtElement& pick = (rng() & 1) ? z->second : z->first;
        return ECPoint{false, x, K.mul(x, pick)};
    }
}

ECPoint BinaryCurve::neg(const ECPoint& P) const {
    if (P.infinity) return P;
    return ECPoint{false, P.x, field().add(P.y, P.x)};
}

ECPoint BinaryCurve::dbl(const ECPoint& P) const {
    if (P.infinity || P.x.is_zero()) return ECPoint::at_infinity();
    const ExtField& K = field();
    const ExtElement lam = K.add(P.x, K.div(P.y, P.x));
    const ExtElement x3 = K.add(K.add(K.sqr(lam), lam), a_);
    const ExtElement y3 = K.add(K.sqr(P.x), K.mul(K.add(lam, K.one()), x3));
    return ECPoint{false, x3, y3};
}

ECPoint BinaryCurve::add(const ECPoint& P, const ECPoint& Q) const {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const ExtField& K = field();
    if (P.x == Q.x) {
        if (P.y == Q.y) return dbl(P);
        return ECPoint::at_infinity();
    }
    const ExtElement dx = K.add(P.x, Q.x);
    const ExtElement lam = K.div(K.add(P.y, Q.y), dx);
    const ExtElement x3 = K.add(K.add(K.add(K.sqr(lam), lam), dx), a_);
    const ExtElement y3 = K.add(K.add(K.mul(lam, K.add(P.x, x3)), x3), P.y);
    return ECPoint{false, x3, y3};
}

ECPoint BinaryCurve::mul(const ECPoint& P, const BigInt& k) const {
    if (k < 0) return mul(neg(P), BigInt(-k));
    ECPoint R = ECPoint::at_infinity();
    const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        R = dbl(R);
        if (mpz_tstbit(k.get_mpz_t(), i)) R = add(R, P);
    }
    return R;
}

ECPoint gls_psi(const BinaryCurve& E, const ECPoint& P, const ExtElement& delta) {
    if (P.infinity) return P;
    const ExtField& K = E.field();
    const int ell = E.tower().ell();
    ExtElement x = K.frobenius(P.x, ell);
    ExtElement y = K.add(K.frobenius(P.y, ell), K.mul(delta, x));
    if (!E.contains(x, y)) throw PointNotOnCurve("psi image is off the curve; a must lie in F_q and b in F_2^l");
    return ECPoint{false, std::move(x), std::move(y)};
}

EigenvalueData psi_eigenvalue_ec(const BinaryCurve& E, const ECPoint& P, const BigInt& r, const ExtElement& delta) {
    const ECPoint target = gls_psi(E, P, delta);
    const int n = E.tower().n();
    for (const BigInt& lam : roots_of_unity(n, r)) {
        if (E.mul(P, lam) == target) return make_eigenvalue_data(lam, n, r);
    }
    throw NoEigenvalue("psi does not act as a root of unity on <P>");
}

}  // namespace ghsgls
