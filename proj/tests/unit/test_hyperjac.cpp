#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "toy.hpp"

using namespace toy;

namespace {

// Affine solutions of y^2 + h y = f over F_{q^k} by direct substitution,
// plus the single point at infinity.
BigInt brute_points(const HyperCurve& H, int k) {
    const PolyRing R = H.ring();
    const BaseFieldPtr Fp = H.field_ptr();
    Poly m = Poly::x();
    if (k > 1) {
        std::mt19937_64 rng(k);
        do m = R.random(rng, k, true);
        while (!R.is_irreducible(m));
    }
    const ExtField K(Fp, m);
    auto eval = [&](const Poly& p, const ExtElement& x) {
        ExtElement acc = K.zero();
        for (int i = p.degree(); i >= 0; --i) acc = K.add(K.mul(acc, x), K.from_base(p[i]));
        return acc;
    };
    const int bits = K.absolute_degree();
    std::vector<std::uint8_t> b(bits);
    auto element = [&](std::uint32_t mask) {
        for (int i = 0; i < bits; ++i) b[i] = (mask >> i) & 1;
        return K.from_bits(b);
    };
    BigInt count = 1;
    for (std::uint32_t xm = 0; xm < (1u << bits); ++xm) {
        const ExtElement x = element(xm);
        const ExtElement hx = eval(H.h(), x), fx = eval(H.f(), x);
        for (std::uint32_t ym = 0; ym < (1u << bits); ++ym) {
            const ExtElement y = element(ym);
            if (K.add(K.sqr(y), K.mul(hx, y)) == fx) count += 1;
        }
    }
    return count;
}

std::size_t closure_size(const Jacobian& J, const std::vector<MumfordDivisor>& gens) {
    std::set<MumfordDivisor> seen{J.zero()};
    std::vector<MumfordDivisor> frontier{J.zero()};
    while (!frontier.empty()) {
        std::vector<MumfordDivisor> next;
        for (const auto& D : frontier)
            for (const auto& G : gens) {
                const MumfordDivisor S = J.add(D, G);
                if (seen.insert(S).second) next.push_back(S);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

}  // namespace

TEST_CASE("Cantor group axioms against the full divisor list, genus 2 over F2") {
    const HyperCurve H = nonsingular_curve(kF2, 2, 1);
    const Jacobian J(H);
    const auto all = all_divisors(H);
    const std::set<MumfordDivisor> universe(all.begin(), all.end());
    CHECK(BigInt(static_cast<unsigned long>(all.size())) == jacobian_order(H).order);
    for (const auto& A : all) {
        CHECK(J.is_valid(A));
        CHECK(J.add(A, J.zero()) == A);
        CHECK(J.add(A, J.neg(A)).is_zero());
        for (const auto& B : all) {
            const MumfordDivisor S = J.add(A, B);
            CHECK(universe.count(S) == 1);
            CHECK(S == J.add(B, A));
            for (const auto& C : all) CHECK(J.add(S, C) == J.add(A, J.add(B, C)));
        }
    }
}

TEST_CASE("fixture discrete log holds on the Jacobian") {
    const InstanceFile inst = parse_instance(fixture_path());
    const Jacobian J(inst.hyper_curve());
    CHECK(J.mul(inst.hyper.D, parse_bigint("0x618877C96DE350E8C7980393356E3")) == inst.hyper.D_prime);
    CHECK(J.mul(inst.hyper.D, inst.hyper.r).is_zero());
    CHECK(!inst.hyper.D.is_zero());
    CHECK(J.add(inst.hyper.D, J.zero()) == inst.hyper.D);
    CHECK(J.add(inst.hyper.D, J.neg(inst.hyper.D)).is_zero());
    const Factored rf{{inst.hyper.r, 1}};
    CHECK(divisor_order(J, inst.hyper.D, inst.hyper.r, rf) == inst.hyper.r);
}

TEST_CASE("decompose") {
    const HyperCurve H = nonsingular_curve(kF8, 3, 2);
    const Jacobian J(H);
    const PolyRing& R = J.ring();
    std::mt19937_64 rng(5);
    int irreducible_seen = 0, split_seen = 0;
    for (int i = 0; i < 500; ++i) {
        const MumfordDivisor D = J.random_divisor(rng);
        const auto parts = J.decompose(D);
        MumfordDivisor sum = J.zero();
        for (const auto& [C, e] : parts) {
            CHECK(R.is_irreducible(C.u));
            sum = J.add(sum, J.mul(C, BigInt(e)));
        }
        CHECK(sum == D);
        if (!D.is_zero() && R.is_irreducible(D.u)) {
            ++irreducible_seen;
            REQUIRE(parts.size() == 1);
            CHECK(parts[0].first == D);
            CHECK(parts[0].second == 1);
        }
    }
    std::vector<MumfordDivisor> ones;
    for (const Poly& u : R.monic_irreducibles(1))
        if (auto vs = J.v_solutions(u)) ones.push_back(MumfordDivisor{u, vs->first});
    REQUIRE(ones.size() >= 2);
    for (std::size_t i = 0; i + 1 < ones.size(); ++i) {
        const MumfordDivisor D = J.add(ones[i], ones[i + 1]);
        REQUIRE(D.u.degree() == 2);
        const auto parts = J.decompose(D);
        REQUIRE(parts.size() == 2);
        for (const auto& [C, e] : parts) {
            const Fq root = C.u[0];
            CHECK(C.v == Poly::constant(R.eval(D.v, root)));
            CHECK(e == 1);
            CHECK((C == ones[i] || C == ones[i + 1]));
        }
        ++split_seen;
    }
    CHECK(irreducible_seen > 0);
    CHECK(split_seen > 0);
}

TEST_CASE("random divisors") {
    const HyperCurve H = nonsingular_curve(kF8, 3, 2);
    const Jacobian J(H);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) CHECK(J.is_valid(J.random_divisor(rng)));
    CHECK(J.random_divisor(std::uint64_t{77}) == J.random_divisor(std::uint64_t{77}));
    // An irreducible u admits v for about half of all u.
    std::size_t total = 0, admitting = 0;
    for (int d = 1; d <= 3; ++d)
        for (const Poly& u : J.ring().monic_irreducibles(d)) {
            ++total;
            admitting += J.v_count(u) > 0;
        }
    const double rate = static_cast<double>(admitting) / static_cast<double>(total);
    CHECK(rate > 0.35);
    CHECK(rate < 0.65);
}

TEST_CASE("point counts") {
    const HyperCurve H2 = nonsingular_curve(kF4, 2, 3);
    for (int k = 1; k <= 2; ++k) CHECK(count_points(H2, k) == brute_points(H2, k));
    const HyperCurve H3 = nonsingular_curve(kF8, 3, 2);
    for (int k = 1; k <= 3; ++k) {
        const BigInt n = count_points(H3, k);
        const double qk = std::pow(8.0, k);
        CHECK(n >= 1);
        CHECK(n.get_d() >= qk + 1 - 2 * 3 * std::sqrt(qk));
        CHECK(n.get_d() <= qk + 1 + 2 * 3 * std::sqrt(qk));
    }
    CHECK(count_points(H3, 1) == brute_points(H3, 1));
    CHECK(count_points(H3, 2, 4) == count_points(H3, 2, 1));
}

TEST_CASE("Jacobian order") {
    const HyperCurve E = nonsingular_curve(kF32, 1, 4);
    CHECK(jacobian_order(E).order == brute_points(E, 1));

    const HyperCurve H = nonsingular_curve(kF8, 3, 2);
    const Jacobian J(H);
    const JacobianOrderData ord = jacobian_order(H);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) CHECK(J.mul(J.random_divisor(rng), ord.order).is_zero());

    std::vector<MumfordDivisor> gens;
    for (const Poly& u : J.ring().monic_irreducibles(1))
        if (auto vs = J.v_solutions(u)) {
            gens.push_back(MumfordDivisor{u, vs->first});
            gens.push_back(MumfordDivisor{u, vs->second});
        }
    const std::size_t closure = closure_size(J, gens);
    CHECK(ord.order % BigInt(static_cast<unsigned long>(closure)) == 0);
    CHECK(BigInt(static_cast<unsigned long>(all_divisors(H).size())) == ord.order);

    CHECK(divisor_order(J, J.zero(), ord.order, ord.factors) == 1);
    const BigInt r = ord.factors.back().first;
    for (int i = 0; i < 10; ++i) {
        const MumfordDivisor D = J.mul(J.random_divisor(rng), ord.order / r);
        CHECK(r % divisor_order(J, D, ord.order, ord.factors) == 0);
    }
}

TEST_CASE("curve validation") {
    const BaseFieldPtr F = make_base_field(kF8);
    CHECK_THROWS_AS(HyperCurve(F, Poly(), poly({1, 0, 0, 1})), InvalidCurve);
    CHECK_THROWS_AS(HyperCurve(F, poly({1}), poly({1, 0, 0, 0, 1})), InvalidCurve);
    // y^2 + y = x^3 is nonsingular; y^2 + x y = x^3 is singular at the origin.
    CHECK(is_nonsingular(HyperCurve(F, poly({1}), poly({0, 0, 0, 1}))));
    CHECK(!is_nonsingular(HyperCurve(F, poly({0, 1}), poly({0, 0, 0, 1}))));
    const Jacobian J(HyperCurve(F, poly({1}), poly({0, 0, 0, 1})));
    CHECK_THROWS_AS(J.make(poly({1, 1}), poly({1})), InvalidDivisor);
}
