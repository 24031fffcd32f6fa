#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ghsgls/census.hpp"
#include "ghsgls/generator.hpp"
#include "ghsgls/indexcalc.hpp"
#include "ghsgls/instance.hpp"
#include "ghsgls/verify.hpp"

using namespace ghsgls;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitBudget = 4;

// Largest genus the solve command accepts without an explicit --budget.
constexpr int kDeskGenus = 8;

int cmd_verify(const std::string& path) {
    const VerifyReport rep = verify_fixture(path);
    std::cout << rep.format();
    return rep.ok() ? kExitOk : kExitVerify;
}

int cmd_gen(const GenOptions& opt, const std::string& out) {
    const InstanceFile inst = gen_instance(opt);
    if (out.empty() || out == "-")
        std::cout << write_instance_text(inst);
    else
        write_instance(inst, out);
    return kExitOk;
}

struct SolveArgs {
    std::string path, mode = "plain", checkpoint;
    int s = 0, eps = 10, workers = 1;
    std::uint64_t seed = 1, budget = 0;
    bool dynamic = false, csv = false;
};

int cmd_solve(const SolveArgs& a) {
    const InstanceFile inst = parse_instance(a.path);
    const HyperCurve H = inst.hyper_curve();
    if (H.genus() > kDeskGenus && a.budget == 0) {
        std::cerr << "genus " << H.genus() << " is beyond desk scale; pass --budget to run anyway\n";
        return kExitInvalid;
    }
    const Jacobian J(H);
    SolveOptions opt;
    opt.mode = parse_base_mode(a.mode);
    opt.s = a.s > 0 ? a.s : std::max(1, best_smoothness(H.field().order(), H.genus(), a.eps, inst.n()));
    opt.eps = a.eps;
    opt.seed = a.seed;
    if (a.budget) opt.budget = a.budget;
    opt.workers = a.workers;
    opt.dynamic = a.dynamic;
    opt.checkpoint = a.checkpoint;
    opt.group_order = inst.hyper.N;
    if (opt.mode == BaseMode::Orbit) {
        if (!inst.endo) {
            std::cerr << "orbit mode needs an [endo] section\n";
            return kExitInvalid;
        }
        opt.params = inst.endo->params;
        opt.lambda = inst.endo->lambda;
    }
    const SolveStats st = solve_dlp(J, inst.hyper.D, inst.hyper.D_prime, inst.hyper.r, opt);
    const double total = st.relation_seconds + st.algebra_seconds;
    if (a.csv) {
        std::cout << "mode,s,base_size,columns,relations,trials,verified,rounds,relation_s,algebra_s,total_s,seed,dlog\n"
                  << a.mode << ',' << opt.s << ',' << st.base_size << ',' << st.columns_used << ',' << st.relations << ','
                  << st.trials << ',' << st.verified << ',' << st.rounds << ',' << st.relation_seconds << ','
                  << st.algebra_seconds << ',' << total << ',' << a.seed << ',' << to_hex(st.dlog) << '\n';
    } else {
        std::cout << "mode               " << a.mode << (a.dynamic ? " (dynamic)" : "") << '\n'
                  << "smoothness s       " << opt.s << '\n'
                  << "factor base        " << st.base_size << '\n'
                  << "columns used       " << st.columns_used << '\n'
                  << "relations          " << st.relations << '\n'
                  << "trials             " << st.trials << '\n'
                  << "verified relations " << st.verified << '\n'
                  << "seed               " << a.seed << '\n'
                  << "Relation generation " << st.relation_seconds << " s\n"
                  << "Linear algebra      " << st.algebra_seconds << " s\n"
                  << "Total               " << total << " s\n"
                  << "dlog " << to_hex(st.dlog) << " = " << to_decimal(st.dlog) << '\n';
    }
    if (inst.dlog && mod_reduce(*inst.dlog, inst.hyper.r) != st.dlog) {
        std::cerr << "recovered " << to_hex(st.dlog) << " vs answer " << to_hex(*inst.dlog) << '\n';
        return kExitVerify;
    }
    return kExitOk;
}

struct CensusArgs {
    std::uint64_t q = 0;
    int g = 0, s = 0, eps = 0, n = 1, workers = 1;
    std::string exact;
    bool csv = false;
};

int cmd_census(const CensusArgs& a) {
    if (!a.exact.empty()) {
        const InstanceFile inst = parse_instance(a.exact);
        const HyperCurve H = inst.hyper_curve();
        const int s = a.s > 0 ? a.s : 4;
        std::optional<EndoParams> params;
        if (inst.endo)
            params = inst.endo->params;
        else
            params = find_endo_params(H, inst.ell(), inst.n());
        const CensusResult c = exact_census(H, s, params, a.workers);
        std::cout << format_census(c, a.csv);
        return kExitOk;
    }
    if (a.q < 2 || a.g < 1 || a.s < 1) {
        std::cerr << "census needs q g s eps n, or --exact PATH\n";
        return kExitInvalid;
    }
    std::cout << format_cost_report(expected_costs(a.q, a.g, a.s, a.eps, a.n), a.csv);
    return kExitOk;
}

std::string fmt_div(const MumfordDivisor& D) { return "u = " + format_poly(D.u) + ", v = " + format_poly(D.v); }

int cmd_endo(const std::string& path, int samples) {
    const InstanceFile inst = parse_instance(path);
    const HyperCurve H = inst.hyper_curve();
    const Jacobian J(H);
    const auto all = find_all_endo_params(H, inst.ell(), inst.n());
    if (all.empty()) {
        std::cout << "no endomorphism parameters\n";
        return kExitVerify;
    }
    for (const auto& p : all)
        std::cout << "params " << format_fq(p.delta1) << ' ' << format_fq(p.delta3) << ' ' << format_fq(p.delta4) << '\n';
    const EndoParams& p = all.front();
    const EigenvalueData ev = eigenvalue(J, inst.hyper.D, inst.hyper.r, p);
    std::cout << "lambda " << to_decimal(ev.lambda) << " sign " << ev.sign << '\n';
    const MumfordDivisor orbit = psi_star_pow(J, inst.hyper.D, p, p.n);
    std::cout << "psi*^" << p.n << "(D) " << (orbit == inst.hyper.D ? "= D" : orbit == J.neg(inst.hyper.D) ? "= -D" : "!= +-D")
              << '\n';
    std::mt19937_64 rng(1);
    int fixed = 0;
    std::vector<int> len(p.n + 1);
    for (int i = 0; i < samples; ++i) {
        const MumfordDivisor X = J.random_divisor(rng);
        MumfordDivisor Y = X;
        int k = 1;
        for (; k <= p.n; ++k) {
            Y = psi_star(J, Y, p);
            if (Y == X) break;
        }
        if (k <= p.n) ++len[k];
        const OrbitRep rep = orbit_rep(J, X, p);
        if (rep.j == 0) ++fixed;
    }
    std::cout << "orbit lengths over " << samples << " random divisors:";
    for (int k = 1; k <= p.n; ++k)
        if (len[k]) std::cout << ' ' << k << ':' << len[k];
    std::cout << "\nalready orbit maximum " << fixed << '\n';
    std::cout << "D " << fmt_div(inst.hyper.D) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GHS/GLS index calculus on binary hyperelliptic Jacobians"};
    app.require_subcommand(1);

    std::string vpath;
    auto* verify = app.add_subcommand("verify-fixture", "check an instance and its answer");
    verify->add_option("path", vpath)->required()->check(CLI::ExistingFile);

    GenOptions gen;
    std::string gen_out;
    auto* g = app.add_subcommand("gen-instance", "generate a desk-scale instance with a planted log");
    g->add_option("--n", gen.n, "q = 2^n");
    g->add_option("--ell", gen.ell, "extension degree");
    g->add_option("--genus", gen.genus);
    g->add_option("--seed", gen.seed);
    g->add_option("--min-r-bits", gen.min_r_bits);
    g->add_option("--attempts", gen.max_attempts);
    g->add_option("--workers", gen.workers);
    g->add_option("-o,--out", gen_out, "output file, default stdout");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "index calculus on the hyperelliptic section");
    solve->add_option("path", sa.path)->required()->check(CLI::ExistingFile);
    solve->add_option("--mode", sa.mode)->check(CLI::IsMember({"plain", "orbit"}));
    solve->add_option("--s", sa.s, "smoothness bound, default minimises T + L");
    solve->add_option("--eps", sa.eps);
    solve->add_option("--seed", sa.seed);
    solve->add_option("--budget", sa.budget, "trial budget");
    solve->add_option("--workers", sa.workers);
    solve->add_flag("--dynamic", sa.dynamic, "grow the factor base from observed factors");
    solve->add_option("--checkpoint", sa.checkpoint, "relation file to resume from and update");
    solve->add_flag("--csv", sa.csv);

    CensusArgs ca;
    auto* census = app.add_subcommand("census", "cost model, or exact factor-base census with --exact");
    census->add_option("q", ca.q);
    census->add_option("g", ca.g);
    census->add_option("s", ca.s);
    census->add_option("eps", ca.eps);
    census->add_option("n", ca.n);
    census->add_option("--exact", ca.exact, "instance file")->check(CLI::ExistingFile);
    census->add_option("--s-max", ca.s, "smoothness bound for --exact");
    census->add_option("--workers", ca.workers);
    census->add_flag("--csv", ca.csv);

    std::string epath;
    int samples = 100;
    auto* endo = app.add_subcommand("endo-check", "endomorphism parameters, eigenvalue and orbit statistics");
    endo->add_option("path", epath)->required()->check(CLI::ExistingFile);
    endo->add_option("--samples", samples);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return cmd_verify(vpath);
        if (*g) return cmd_gen(gen, gen_out);
        if (*solve) return cmd_solve(sa);
        if (*census) return cmd_census(ca);
        if (*endo) return cmd_endo(epath, samples);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return kExitBudget;
    } catch (const Unverifiable& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return kExitVerify;
    } catch (const GenerationFailed& e) {
        std::cerr << "generation failed: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitOk;
}
