#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ghsgls/census.hpp"
#include "ghsgls/error.hpp"
#include "ghsgls/generator.hpp"
#include "ghsgls/indexcalc.hpp"
#include "ghsgls/instance.hpp"
#include "ghsgls/verify.hpp"

namespace py = pybind11;
using namespace ghsgls;

namespace {

py::int_ to_py(const BigInt& x) { return py::int_(py::module_::import("builtins").attr("int")(to_decimal(x))); }

py::object rational_to_py(const Rational& x) {
    return py::module_::import("fractions").attr("Fraction")(to_py(x.get_num()), to_py(x.get_den()));
}

py::list verify_text(const std::string& text) {
    py::list out;
    for (const CheckResult& c : verify_instance(parse_instance_text(text)).checks)
        out.append(py::dict(py::arg("name") = c.name, py::arg("passed") = c.passed, py::arg("detail") = c.detail));
    return out;
}

py::list verify_path(const std::string& path) {
    py::list out;
    for (const CheckResult& c : verify_fixture(path).checks)
        out.append(py::dict(py::arg("name") = c.name, py::arg("passed") = c.passed, py::arg("detail") = c.detail));
    return out;
}

std::string generate(int n, int ell, int genus, std::uint64_t seed, int min_r_bits, int attempts) {
    GenOptions o;
    o.n = n;
    o.ell = ell;
    o.genus = genus;
    o.seed = seed;
    o.min_r_bits = min_r_bits;
    o.max_attempts = attempts;
    return write_instance_text(gen_instance(o));
}

py::dict solve(const std::string& text, const std::string& mode, int s, int eps, std::uint64_t seed,
               std::uint64_t budget, int workers) {
    const InstanceFile inst = parse_instance_text(text);
    const HyperCurve H = inst.hyper_curve();
    const Jacobian J(H);
    SolveOptions opt;
    opt.mode = parse_base_mode(mode);
    opt.s = s > 0 ? s : std::max(1, best_smoothness(H.field().order(), H.genus(), eps, inst.n()));
    opt.eps = eps;
    opt.seed = seed;
    opt.budget = budget;
    opt.workers = workers;
    opt.group_order = inst.hyper.N;
    if (inst.endo) {
        opt.params = inst.endo->params;
        opt.lambda = inst.endo->lambda;
    }
    SolveStats st;
    {
        py::gil_scoped_release release;
        st = solve_dlp(J, inst.hyper.D, inst.hyper.D_prime, inst.hyper.r, opt);
    }
    return py::dict(py::arg("dlog") = to_py(st.dlog), py::arg("s") = opt.s, py::arg("base_size") = st.base_size,
                    py::arg("columns") = st.columns_used, py::arg("relations") = st.relations,
                    py::arg("trials") = st.trials, py::arg("verified") = st.verified, py::arg("rounds") = st.rounds,
                    py::arg("relation_seconds") = st.relation_seconds,
                    py::arg("algebra_seconds") = st.algebra_seconds);
}

py::dict census(const std::string& text, int s, int workers) {
    const InstanceFile inst = parse_instance_text(text);
    const HyperCurve H = inst.hyper_curve();
    std::optional<EndoParams> params;
    if (inst.endo) params = inst.endo->params;
    CensusResult c;
    {
        py::gil_scoped_release release;
        c = exact_census(H, s, params, workers);
    }
    py::dict out(py::arg("s") = c.s, py::arg("admitting") = c.total_admitting(), py::arg("divisors") = c.total_divisors());
    if (c.has_orbits) {
        out["u_orbits"] = c.total_u_orbits();
        out["divisor_orbits"] = c.total_divisor_orbits();
    }
    return out;
}

py::dict costs(std::uint64_t q, int g, int s, int eps, int n) {
    const CostReport r = expected_costs(q, g, s, eps, n);
    py::list A;
    for (const Rational& a : r.A) A.append(rational_to_py(a));
    return py::dict(py::arg("A") = A, py::arg("F") = rational_to_py(r.F), py::arg("M") = to_py(r.M),
                    py::arg("E") = rational_to_py(r.E), py::arg("T") = rational_to_py(r.T),
                    py::arg("L") = rational_to_py(r.L), py::arg("T_orbit") = rational_to_py(r.T_orbit),
                    py::arg("L_orbit") = rational_to_py(r.L_orbit));
}

py::object endo_params(const std::string& text) {
    const InstanceFile inst = parse_instance_text(text);
    const auto p = find_endo_params(inst.hyper_curve(), inst.ell(), inst.n());
    if (!p) return py::none();
    return py::make_tuple(p->delta1.bits, p->delta3.bits, p->delta4.bits);
}

}  // namespace

PYBIND11_MODULE(ghsgls, m) {
    m.doc() = "Index calculus on genus-g binary curves carrying a GLS-type endomorphism";

    // Later registrations are tried first, so subclasses come after the base.
    const auto& error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<GenerationFailed>(m, "GenerationFailed", error.ptr());
    py::register_exception<BudgetExhausted>(m, "BudgetExhausted", error.ptr());

    m.def("verify_fixture", &verify_path, py::arg("path"), "Run every instance check on a file; list of dicts");
    m.def("verify_instance", &verify_text, py::arg("text"), "Run every instance check on instance text");
    m.def("gen_instance", &generate, py::arg("n") = 3, py::arg("ell") = 5, py::arg("genus") = 3,
          py::arg("seed") = 1, py::arg("min_r_bits") = 16, py::arg("attempts") = 400,
          "Generate a desk-scale instance; returns instance text");
    m.def("solve", &solve, py::arg("text"), py::arg("mode") = "plain", py::arg("s") = 0, py::arg("eps") = 10,
          py::arg("seed") = 1, py::arg("budget") = 1000000, py::arg("workers") = 1,
          "Index calculus on an instance; s = 0 picks the cost-model optimum");
    m.def("census", &census, py::arg("text"), py::arg("s") = 4, py::arg("workers") = 1,
          "Exact factor-base census up to degree s");
    m.def("expected_costs", &costs, py::arg("q"), py::arg("g"), py::arg("s"), py::arg("eps"), py::arg("n") = 1,
          "Cost-model quantities as exact fractions");
    m.def("endo_params", &endo_params, py::arg("text"), "First (delta1, delta3, delta4) as field bit patterns");
}
