#include "ghsgls/verify.hpp"

#include <sstream>

namespace ghsgls {

namespace {

std::string fmt_point(const ECPoint& P) {
    if (P.infinity) return "inf";
    return format_ext(P.x) + " ; " + format_ext(P.y);
}

std::string fmt_div(const MumfordDivisor& D) { return "u = " + format_poly(D.u) + ", v = " + format_poly(D.v); }

std::string fmt_params(const EndoParams& p) {
    return "(" + format_fq(p.delta1) + ", " + format_fq(p.delta3) + ", " + format_fq(p.delta4) + ")";
}

struct Recorder {
    VerifyReport& report;
    void operator()(std::string name, bool passed, std::string detail = {}) {
        report.checks.push_back(CheckResult{std::move(name), passed, passed ? std::string{} : std::move(detail)});
    }
};

}  // namespace

bool VerifyReport::ok() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::string VerifyReport::format() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.passed && !c.detail.empty()) out << ": " << c.detail;
        out << '\n';
    }
    out << (ok() ? "all checks passed" : "verification failed") << '\n';
    return out.str();
}

VerifyReport verify_instance(const InstanceFile& inst) {
    VerifyReport report;
    Recorder check{report};

    const FieldTower T = inst.tower();
    check("field tower", true);

    const HyperCurve H = inst.hyper_curve();
    check("hyperelliptic curve nonsingular", is_nonsingular(H), "gcd(h, h'^2 f + f'^2) != 1");
    const Jacobian J(H);
    const HyperSection& hs = inst.hyper;
    check("D valid", J.is_valid(hs.D), fmt_div(hs.D));
    check("D' valid", J.is_valid(hs.D_prime), fmt_div(hs.D_prime));
    check("D nonzero", !hs.D.is_zero(), "D is the zero divisor");
    {
        const MumfordDivisor rD = J.mul(hs.D, hs.r);
        check("[r]D = 0", rD.is_zero(), "[r]D: " + fmt_div(rD) + " vs 0");
        const MumfordDivisor rDp = J.mul(hs.D_prime, hs.r);
        check("[r]D' = 0", rDp.is_zero(), "[r]D': " + fmt_div(rDp) + " vs 0");
    }
    if (hs.N) {
        check("r divides N", *hs.N % hs.r == 0, to_decimal(*hs.N) + " mod " + to_decimal(hs.r) + " != 0");
    }

    std::optional<BinaryCurve> E;
    if (inst.elliptic) {
        const EllipticSection& es = *inst.elliptic;
        E.emplace(inst.elliptic_curve());
        check("P on E", es.P.infinity || E->contains(es.P.x, es.P.y), fmt_point(es.P));
        check("P' on E", es.P_prime.infinity || E->contains(es.P_prime.x, es.P_prime.y), fmt_point(es.P_prime));
        check("P nonzero", !es.P.infinity, "P is the point at infinity");
        const ECPoint rP = E->mul(es.P, es.r);
        check("[r]P = O", rP.infinity, "[r]P: " + fmt_point(rP) + " vs inf");
        const ECPoint rPp = E->mul(es.P_prime, es.r);
        check("[r]P' = O", rPp.infinity, "[r]P': " + fmt_point(rPp) + " vs inf");
        if (es.P_prime_base) {
            const bool on = es.P_prime_base->infinity || E->contains(es.P_prime_base->x, es.P_prime_base->y);
            check("P' base on E", on, fmt_point(*es.P_prime_base));
            if (on) {
                const ECPoint cB = E->mul(*es.P_prime_base, es.c);
                check("[c]P'_base = P'", cB == es.P_prime, fmt_point(cB) + " vs " + fmt_point(es.P_prime));
            }
        }
    }

    if (inst.dlog) {
        if (E) {
            const ECPoint Q = E->mul(inst.elliptic->P, *inst.dlog);
            check("[dlog]P = P'", Q == inst.elliptic->P_prime, fmt_point(Q) + " vs " + fmt_point(inst.elliptic->P_prime));
        }
        const MumfordDivisor Q = J.mul(hs.D, *inst.dlog);
        check("[dlog]D = D'", Q == hs.D_prime, fmt_div(Q) + " vs " + fmt_div(hs.D_prime));
    }

    if (inst.endo) {
        const EndoParams& p = inst.endo->params;
        const bool identities = satisfies_curve_identities(H, p);
        check("endo params satisfy curve identities", identities, fmt_params(p));
        if (T.base().order() <= 256) {
            const auto found = find_endo_params(H, p.ell, p.n);
            if (!found) {
                check("endo search agrees", false, "search found nothing vs " + fmt_params(p));
            } else {
                const bool same = *found == p || (identities && psi_star(J, hs.D, *found) == psi_star(J, hs.D, p));
                check("endo search agrees", same, fmt_params(*found) + " vs " + fmt_params(p));
            }
        }
        if (identities) {
            const MumfordDivisor orbit = psi_star_pow(J, hs.D, p, p.n);
            const bool pm = orbit == hs.D || orbit == J.neg(hs.D);
            check("(psi*)^n D = +-D", pm, fmt_div(orbit) + " vs +-" + fmt_div(hs.D));
            try {
                const EigenvalueData ev = eigenvalue(J, hs.D, hs.r, p);
                if (inst.endo->lambda)
                    check("eigenvalue matches", ev.lambda == *inst.endo->lambda,
                          to_decimal(ev.lambda) + " vs " + to_decimal(*inst.endo->lambda));
                if (inst.endo->sign)
                    check("eigenvalue sign matches", ev.sign == *inst.endo->sign,
                          std::to_string(ev.sign) + " vs " + std::to_string(*inst.endo->sign));
            } catch (const NoEigenvalue& e) {
                check("eigenvalue matches", false, e.what());
            }
        } else {
            check("(psi*)^n D = +-D", false, "skipped: parameters do not define an endomorphism");
        }
    }

    if (inst.dlog && inst.dlog_decimal)
        check("dlog = dlog_decimal", *inst.dlog == *inst.dlog_decimal,
              to_hex(*inst.dlog) + " vs " + to_decimal(*inst.dlog_decimal));
    return report;
}

VerifyReport verify_fixture(const std::string& path) { return verify_instance(parse_instance(path)); }

}  // namespace ghsgls
