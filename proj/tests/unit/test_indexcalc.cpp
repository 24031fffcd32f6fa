#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include <filesystem>

#include "toy.hpp"
#include "ghsgls/indexcalc.hpp"

using namespace toy;

namespace {

std::uint64_t dot(const std::vector<std::uint64_t>& g, const std::vector<std::uint64_t>& col, std::uint64_t r) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < g.size(); ++i) acc = (acc + mulmod_u64(g[i], col[i], r)) % r;
    return acc;
}

// Columns of M (one entry per relation) for the post-hoc kernel check.
std::vector<std::vector<std::uint64_t>> columns_of(const std::vector<Relation>& rels, std::size_t ncols) {
    std::vector<std::vector<std::uint64_t>> cols(ncols, std::vector<std::uint64_t>(rels.size(), 0));
    for (std::size_t i = 0; i < rels.size(); ++i)
        for (const auto& [idx, c] : rels[i].row) cols[idx][i] = bigint_to_u64(c);
    return cols;
}

Relation make_row(std::vector<std::pair<std::size_t, std::uint64_t>> entries) {
    Relation rel;
    rel.alpha = 0;
    rel.beta = 0;
    for (auto [i, c] : entries)
        if (c) rel.row.emplace_back(i, bigint_from_u64(c));
    return rel;
}

struct Toy {
    const InstanceFile& inst;
    Jacobian J{inst.hyper_curve()};
};

}  // namespace

TEST_CASE("degree-one factor base over F4 matches enumeration") {
    const HyperCurve H = nonsingular_curve(kF4, 2, 3);
    const Jacobian J(H);
    std::set<Poly> us;
    for (const auto& D : all_divisors(H))
        if (D.u.degree() == 1) us.insert(D.u);
    const FactorBase base(J, 1, BaseMode::Plain);
    CHECK(base.size() == us.size());
    CHECK(base.size() <= 4);
    for (const auto& e : base.entries()) {
        CHECK(us.count(e.u) == 1);
        CHECK(J.is_valid(e));
    }
}

TEST_CASE("orbit base is about n times smaller") {
    for (const InstanceFile* inst : {&n5_instance(), &n3_instance()}) {
        const Jacobian J(inst->hyper_curve());
        const int s = inst->n() == 5 ? 2 : 3;
        const FactorBase plain(J, s, BaseMode::Plain);
        const FactorBase orbit(J, s, BaseMode::Orbit, inst->endo->params, inst->endo->lambda);
        const double ratio = static_cast<double>(plain.size()) / static_cast<double>(orbit.size());
        CHECK(ratio <= inst->n());
        CHECK(ratio >= inst->n() - 1);
        for (const auto& e : orbit.entries()) CHECK(orbit_rep(J, e, inst->endo->params).j == 0);
    }
}

TEST_CASE("every emitted relation re-expands") {
    for (const InstanceFile* inst : {&n5_instance(), &n3_instance()}) {
        const Jacobian J(inst->hyper_curve());
        for (BaseMode mode : {BaseMode::Plain, BaseMode::Orbit}) {
            FactorBase base(J, 2, mode, inst->endo->params, inst->endo->lambda);
            SearchOptions opt;
            opt.seed = 5;
            opt.budget = 5000;
            opt.eps = 5;
            opt.group_order = inst->hyper.N;
            opt.verify_fraction = 1.0;
            const SearchResult res = relation_search(J, inst->hyper.D, inst->hyper.D_prime, inst->hyper.r, base, opt);
            CHECK(!res.relations.empty());
            CHECK(res.verified == res.relations.size());
            for (const Relation& rel : res.relations) {
                CHECK(check_relation(J, inst->hyper.D, inst->hyper.D_prime, inst->hyper.r, base, rel, inst->hyper.N));
                // Independent re-expansion: [N/r] sum c_i e_i = [N/r](alpha D + beta D').
                const BigInt cof = *inst->hyper.N / inst->hyper.r;
                MumfordDivisor rhs = J.zero();
                for (const auto& [i, c] : rel.row) rhs = J.add(rhs, J.mul(base.entries()[i], c));
                const MumfordDivisor lhs = J.add(J.mul(inst->hyper.D, rel.alpha), J.mul(inst->hyper.D_prime, rel.beta));
                CHECK(J.mul(rhs, cof) == J.mul(lhs, cof));
            }
        }
    }
}

TEST_CASE("plain relations hold exactly") {
    const InstanceFile& inst = n3_instance();
    const Jacobian J(inst.hyper_curve());
    FactorBase base(J, 3, BaseMode::Plain);
    SearchOptions opt;
    opt.budget = 2000;
    const SearchResult res = relation_search(J, inst.hyper.D, inst.hyper.D_prime, inst.hyper.r, base, opt);
    REQUIRE(!res.relations.empty());
    for (const Relation& rel : res.relations)
        CHECK(check_relation(J, inst.hyper.D, inst.hyper.D_prime, inst.hyper.r, base, rel, std::nullopt));
}

TEST_CASE("smooth rate follows the cost model and is mode independent") {
    const InstanceFile& inst = n3_instance();
    const Jacobian J(inst.hyper_curve());
    const CostReport cost = expected_costs(8, 3, 2, 0, 3);
    std::uint64_t rel_count[2] = {0, 0};
    int k = 0;
    for (BaseMode mode : {BaseMode::Plain, BaseMode::Orbit}) {
        FactorBase base(J, 2, mode, inst.endo->params, inst.endo->lambda);
        SearchOptions opt;
        opt.seed = 17;
        opt.budget = 10000;
        opt.wanted = 1000000;
        opt.group_order = inst.hyper.N;
        opt.verify_fraction = 0.0;
        const SearchResult res = relation_search(J, inst.hyper.D, inst.hyper.D_prime, inst.hyper.r, base, opt);
        CHECK(res.exhausted);
        CHECK(res.trials == 10000);
        rel_count[k++] = res.relations.size();
    }
    CHECK(rel_count[0] == rel_count[1]);
    const double measured = static_cast<double>(rel_count[0]) / 10000.0;
    const double predicted = 1.0 / cost.E.get_d();
    CHECK(measured < 2 * predicted);
    CHECK(measured > predicted / 2);
}

TEST_CASE("kernel of duplicate rows") {
    const std::vector<Relation> rels{make_row({{0, 3}, {2, 5}}), make_row({{0, 3}, {2, 5}}), make_row({{1, 1}})};
    const auto ker = solve_kernel(rels, 3, BigInt(1009));
    REQUIRE(ker.size() == 1);
    const auto& g = ker[0];
    CHECK(g[2] == 0);
    CHECK(g[0] != 0);
    CHECK((g[0] + g[1]) % 1009 == 0);
}

TEST_CASE("planted dependency in a random matrix") {
    const std::uint64_t r = 1009;
    std::mt19937_64 rng(4);
    std::vector<Relation> rels;
    for (int i = 0; i < 49; ++i) {
        std::vector<std::pair<std::size_t, std::uint64_t>> e;
        for (std::size_t j = 0; j < 40; ++j) e.emplace_back(j, rng() % r);
        rels.push_back(make_row(e));
    }
    // Row 49 = 2 row 3 + 7 row 11, so gamma with gamma_49 = 1 is planted.
    std::vector<std::uint64_t> row(40, 0);
    for (const auto& [j, c] : rels[3].row) row[j] = (row[j] + 2 * bigint_to_u64(c)) % r;
    for (const auto& [j, c] : rels[11].row) row[j] = (row[j] + 7 * bigint_to_u64(c)) % r;
    std::vector<std::pair<std::size_t, std::uint64_t>> e;
    for (std::size_t j = 0; j < 40; ++j) e.emplace_back(j, row[j]);
    rels.push_back(make_row(e));

    const auto ker = solve_kernel(rels, 40, BigInt(r));
    REQUIRE(!ker.empty());
    const auto cols = columns_of(rels, 40);
    for (const auto& g : ker)
        for (const auto& col : cols) CHECK(dot(g, col, r) == 0);
    // Random 49 x 40 rows span everything, so the kernel holds the planted
    // vector plus 9 generic ones; restricted to 40 + 1 rows it is unique.
    std::vector<Relation> square(rels.begin(), rels.begin() + 40);
    square.push_back(rels[49]);
    std::swap(square[3], square[40 - 1]);
    std::vector<Relation> trimmed;
    for (std::size_t i = 0; i < 40; ++i) trimmed.push_back(rels[i]);
    trimmed.push_back(rels[49]);
    const auto k2 = solve_kernel(trimmed, 40, BigInt(r));
    REQUIRE(k2.size() == 1);
    const auto& g = k2[0];
    const std::uint64_t scale = invmod_u64(g[40], r);
    std::vector<std::uint64_t> n(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) n[i] = mulmod_u64(g[i], scale, r);
    for (std::size_t i = 0; i < 40; ++i) {
        const std::uint64_t want = i == 3 ? r - 2 : i == 11 ? r - 7 : 0;
        CHECK(n[i] == want);
    }
}

TEST_CASE("log extraction") {
    const BigInt r(1009);
    Relation rel;
    rel.alpha = r - 123;
    rel.beta = 1;
    CHECK(extract_log({1}, {rel}, r) == BigInt(123));
    rel.beta = 0;
    CHECK(!extract_log({1}, {rel}, r));
}

TEST_CASE("solve preconditions and trivial logs") {
    const InstanceFile& inst = n3_instance();
    const Jacobian J(inst.hyper_curve());
    SolveOptions opt;
    opt.s = 2;
    opt.group_order = inst.hyper.N;
    CHECK(solve_dlp(J, inst.hyper.D, inst.hyper.D, inst.hyper.r, opt).dlog == 1);
    CHECK(solve_dlp(J, inst.hyper.D, J.zero(), inst.hyper.r, opt).dlog == 0);
    CHECK_THROWS_AS(solve_dlp(J, J.zero(), inst.hyper.D, inst.hyper.r, opt), InvariantError);
    std::mt19937_64 rng(1);
    MumfordDivisor outside = J.random_divisor(rng);
    while (J.mul(outside, inst.hyper.r).is_zero()) outside = J.random_divisor(rng);
    CHECK_THROWS_AS(solve_dlp(J, inst.hyper.D, outside, inst.hyper.r, opt), InvariantError);
    opt.budget = 3;
    CHECK_THROWS_AS(solve_dlp(J, inst.hyper.D, inst.hyper.D_prime, inst.hyper.r, opt), BudgetExhausted);
}

TEST_CASE("planted logs are recovered in both modes") {
    for (const InstanceFile* inst : {&n5_instance(), &n3_instance()}) {
        const Jacobian J(inst->hyper_curve());
        const BigInt want = mod_reduce(*inst->dlog, inst->hyper.r);
        std::size_t sizes[2] = {0, 0};
        int k = 0;
        for (BaseMode mode : {BaseMode::Plain, BaseMode::Orbit}) {
            SolveOptions opt;
            opt.s = 2;
            opt.mode = mode;
            opt.eps = 3;
            opt.params = inst->endo->params;
            opt.group_order = inst->hyper.N;
            const SolveStats st = solve_dlp(J, inst->hyper.D, inst->hyper.D_prime, inst->hyper.r, opt);
            CHECK(st.dlog == want);
            CHECK(J.mul(inst->hyper.D, st.dlog) == inst->hyper.D_prime);
            sizes[k++] = st.base_size;
        }
        CHECK(static_cast<double>(sizes[0]) / static_cast<double>(sizes[1]) >= inst->n() - 1);
        CHECK(static_cast<double>(sizes[0]) / static_cast<double>(sizes[1]) <= inst->n());

        SolveOptions dyn;
        dyn.s = 2;
        dyn.dynamic = true;
        dyn.group_order = inst->hyper.N;
        CHECK(solve_dlp(J, inst->hyper.D, inst->hyper.D_prime, inst->hyper.r, dyn).dlog == want);
    }
}

TEST_CASE("relation sets do not depend on the worker count") {
    const InstanceFile& inst = n5_instance();
    const Jacobian J(inst.hyper_curve());
    for (std::size_t wanted : {std::size_t{0}, std::size_t{1000000}}) {
        std::vector<SearchResult> runs;
        for (int workers : {1, 4, 4}) {
            FactorBase base(J, 2, BaseMode::Plain);
            SearchOptions opt;
            opt.workers = workers;
            opt.budget = 400;
            opt.wanted = wanted;
            runs.push_back(relation_search(J, inst.hyper.D, inst.hyper.D_prime, inst.hyper.r, base, opt));
        }
        for (std::size_t k = 1; k < runs.size(); ++k) {
            CHECK(runs[k].trials == runs[0].trials);
            CHECK(runs[k].exhausted == runs[0].exhausted);
            REQUIRE(runs[k].relations.size() == runs[0].relations.size());
            for (std::size_t i = 0; i < runs[0].relations.size(); ++i) {
                CHECK(runs[k].relations[i].alpha == runs[0].relations[i].alpha);
                CHECK(runs[k].relations[i].trial == runs[0].relations[i].trial);
                CHECK(runs[k].relations[i].row == runs[0].relations[i].row);
            }
        }
        CHECK(runs[0].exhausted == (wanted != 0));
    }
}

TEST_CASE("relation files round trip and resume") {
    const InstanceFile& inst = n5_instance();
    const Jacobian J(inst.hyper_curve());
    FactorBase base(J, 2, BaseMode::Plain);
    SearchOptions opt;
    opt.budget = 100;
    opt.wanted = 1000000;
    const auto rels = relation_search(J, inst.hyper.D, inst.hyper.D_prime, inst.hyper.r, base, opt).relations;
    const std::string path = (std::filesystem::temp_directory_path() / "ghsgls_relations_test.txt").string();
    write_relations(path, rels);
    const auto back = read_relations(path);
    REQUIRE(back.size() == rels.size());
    for (std::size_t i = 0; i < rels.size(); ++i) {
        CHECK(back[i].alpha == rels[i].alpha);
        CHECK(back[i].beta == rels[i].beta);
        CHECK(back[i].row == rels[i].row);
    }
    SolveOptions so;
    so.s = 2;
    so.checkpoint = path;
    so.group_order = inst.hyper.N;
    CHECK(solve_dlp(J, inst.hyper.D, inst.hyper.D_prime, inst.hyper.r, so).dlog == mod_reduce(*inst.dlog, inst.hyper.r));
    std::filesystem::remove(path);
}
