#include <doctest.h>

#include <random>

#include "reeb/calculus.hpp"
#include "reeb/errors.hpp"
#include "support/oracles.hpp"

using namespace reeb;
using E = ManifoldExpr;

namespace {

const CoefficientRing Z = CoefficientRing::integers();
const CoefficientRing Q = CoefficientRing::rationals();
const CoefficientRing F2 = CoefficientRing::prime_field(2);

ReebDescriptor fig3(int n) {
    ReebDescriptor d;
    d.n = n;
    d.records.push_back({RecordKind::Point, {}});
    return d;
}

ReebDescriptor remark1(std::int64_t c) {
    ReebDescriptor d;
    d.n = 3;
    d.base.handles = {E::sphere(1)};
    d.records.push_back({RecordKind::M, {SphereSpec{1, {{"nu1", c}}}}});
    return d;
}

std::vector<std::size_t> ranks(const ReebDescriptor& d, const CoefficientRing& r = Z) {
    return homology_of_descriptor(d, r).ranks();
}

SparseVector product_of(const PresentedGradedRing& r, const std::string& a, const std::string& b) {
    return r.product(r.index_of(a), r.index_of(b));
}

// Nonzero products among positive-degree basis elements, each unordered pair once.
std::size_t nonzero_products(const PresentedGradedRing& r) {
    std::size_t count = 0;
    for (const auto& [ab, v] : r.product_table())
        if (ab.first <= ab.second && !v.empty()) ++count;
    return count;
}

} // namespace

TEST_CASE("figure 3: a point record gives the homology of a sphere") {
    for (int n = 2; n <= 5; ++n) {
        std::vector<std::size_t> expected(static_cast<std::size_t>(n) + 1, 0);
        expected.front() = expected.back() = 1;
        CHECK(ranks(fig3(n)) == expected);
    }
}

TEST_CASE("homology examples") {
    for (std::int64_t c : {-3, -1, 1, 2, 3}) CHECK(ranks(remark1(c)) == std::vector<std::size_t>{1, 1, 1, 1});
    ReebDescriptor fig2;
    fig2.n = 2;
    fig2.base.handles = {E::sphere(1), E::sphere(1)};
    CHECK(ranks(fig2) == std::vector<std::size_t>{1, 2, 0});
    ReebDescriptor disc;
    disc.n = 2;
    CHECK(ranks(disc) == std::vector<std::size_t>{1, 0, 0});
}

TEST_CASE("homology matches the reference Betti numbers on random descriptors") {
    std::mt19937 rng(101);
    for (int i = 0; i < 150; ++i) {
        auto d = oracle_support::random_descriptor(rng);
        CAPTURE(summary(d));
        auto expected = oracle_support::expected_betti(d);
        for (const auto& ring : {Z, Q, F2, CoefficientRing::prime_field(3)}) {
            auto h = homology_of_descriptor(d, ring);
            CHECK(h.ranks() == expected);
            CHECK(h.is_free());
        }
    }
}

TEST_CASE("coefficient 1 vs 2 ring") {
    auto rep = cohomology_ring_of_descriptor(remark1(2), Z);
    const auto& r = rep.ring;
    CHECK(r.ranks() == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(nonzero_products(r) == 1);
    CHECK(product_of(r, "nu1", "b1.1") == SparseVector{{r.index_of("tau1"), Rational(2)}});
    CHECK(pairing_invariants(r, 1, 2).divisors == std::vector<BigInt>{2});
    CHECK(pairing_invariants(cohomology_ring_of_descriptor(remark1(2), Q).ring, 1, 2).rank == 1);
    CHECK(pairing_invariants(cohomology_ring_of_descriptor(remark1(2), F2).ring, 1, 2).rank == 0);
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.records[0].tau == r.index_of("tau1"));
    CHECK(rep.records[0].beta[0] == r.index_of("b1.1"));
    CHECK(rep.inclusion_classes == std::vector<std::size_t>{r.index_of("nu1")});
    CHECK(r.axiom_violations().empty());
}

TEST_CASE("empty coefficient maps give a wedge-like ring") {
    ReebDescriptor d;
    d.n = 4;
    d.base.handles = {E::sphere(2), E::sphere(1)};
    d.records.push_back({RecordKind::M, {SphereSpec{2, {}}, SphereSpec{1, {}}}});
    d.records.push_back({RecordKind::S, {SphereSpec{2, {}}}});
    CHECK(nonzero_products(cohomology_ring_of_descriptor(d, Z).ring) == 0);
}

TEST_CASE("four-dimensional planner example") {
    Thm1Plan plan;
    plan.n = 4;
    plan.s = {0, 1, 0};
    plan.G = {0, 1, 0, 1};
    plan.A = {{0, 1, 0}};
    plan.coefficients = {{1, 2, 1, 1, 3}};
    CHECK(plan_violations(plan).empty());
    auto d = realize_plan(plan);
    ReebDescriptor expected;
    expected.n = 4;
    expected.base.handles = {E::sphere(2)};
    expected.records.push_back({RecordKind::M, {SphereSpec{2, {{"nu1", 3}}}}});
    CHECK(d == expected);
    auto r = cohomology_ring_of_descriptor(d, Z).ring;
    CHECK(r.ranks() == std::vector<std::size_t>{1, 0, 2, 0, 1});
    CHECK(product_of(r, "nu1", "b1.1") == SparseVector{{r.index_of("tau1"), Rational(3)}});
    CHECK(pairing_invariants(r, 2, 2).divisors == std::vector<BigInt>{3});
}

TEST_CASE("planner edge cases") {
    Thm1Plan points;
    points.n = 3;
    points.s = {1, 0};
    points.G = {0, 0, 2};
    points.A = {{0, 0}, {0, 0}};
    auto d = realize_plan(points);
    CHECK(d.records.size() == 2);
    for (const auto& r : d.records) CHECK(r.spheres.empty());
    CHECK(ranks(d) == std::vector<std::size_t>{1, 1, 0, 2});
    CHECK(nonzero_products(cohomology_ring_of_descriptor(d, Z).ring) == 0);

    Thm1Plan normal;
    normal.n = 4;
    normal.s = {0, 1, 0};
    normal.G = {0, 2, 0, 1};
    normal.A = {{0, 2, 0}};
    normal.normal = true;
    CHECK(plan_violations(normal).size() == 2);
    CHECK_THROWS_AS(realize_plan(normal), PreconditionError);

    Thm1Plan bad = normal;
    bad.normal = false;
    bad.coefficients = {{1, 2, 3, 1, 1}, {1, 1, 1, 1, 1}, {2, 2, 1, 1, 1}};
    CHECK(plan_violations(bad).size() == 3);

    Thm1Plan ok_normal;
    ok_normal.n = 4;
    ok_normal.s = {0, 1, 0};
    ok_normal.G = {0, 1, 0, 2};
    ok_normal.A = {{0, 1, 0}, {0, 0, 0}};
    ok_normal.normal = true;
    auto nd = realize_plan(ok_normal);
    CHECK(nd.records[0].kind == RecordKind::NormalM);
    CHECK(nd.records[1].kind == RecordKind::Point);
}

TEST_CASE("general planner") {
    GeneralPlan plan;
    plan.n = 4;
    plan.base.handles = {E::product(E::sphere(1), E::sphere(2))};
    plan.G = {0, 1, 1, 1};
    plan.coefficients = {{2, 1, "nu2", -2}, {3, 1, "nu1", 3}};
    CHECK(plan_violations(plan).empty());
    auto d = realize_plan_general(plan);
    CHECK(validate(d).empty());
    auto r = cohomology_ring_of_descriptor(d, Z).ring;
    CHECK(r.ranks() == std::vector<std::size_t>{1, 1, 2, 2, 1});

    auto bad = plan;
    bad.coefficients = {{2, 1, "t1", 1}};
    CHECK_FALSE(plan_violations(bad).empty());
}

TEST_CASE("plan documents round-trip") {
    Thm1Plan t;
    t.n = 4;
    t.s = {0, 1, 0};
    t.G = {0, 1, 0, 1};
    t.A = {{0, 1, 0}};
    t.coefficients = {{1, 2, 1, 1, 3}};
    auto back = std::get<Thm1Plan>(parse_plan(serialize_plan(t)));
    CHECK(realize_plan(back) == realize_plan(t));

    GeneralPlan g;
    g.n = 3;
    g.base.handles = {E::sphere(1)};
    g.G = {0, 1, 1};
    g.coefficients = {{2, 1, "nu1", 2}};
    auto gback = std::get<GeneralPlan>(parse_plan(serialize_plan(g)));
    CHECK(realize_plan_general(gback) == realize_plan_general(g));
    CHECK_THROWS_AS(parse_plan(R"({"n": 3, "s": [0, 0]})"), SchemaError);
}

TEST_CASE("non-representable degree-2 class annihilates bubbled classes") {
    ReebDescriptor d;
    d.n = 4;
    d.base.handles = {E::product(E::sphere(1), E::sphere(1))};
    d.records.push_back({RecordKind::M, {SphereSpec{2, {}}}});
    auto r = cohomology_ring_of_descriptor(d, Z).ring;
    auto b = r.index_of("b1.1");
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r.product(b, i).empty());
    CHECK_FALSE(product_of(r, "nu1", "nu2").empty());
}

TEST_CASE("genus-2 core with one targeted class") {
    ReebDescriptor d;
    d.n = 4;
    auto torus = E::product(E::sphere(1), E::sphere(1));
    d.base.handles = {E::connsum(torus, torus)};
    d.records.push_back({RecordKind::M, {SphereSpec{1, {{"nu2", 1}}}}});
    auto r = cohomology_ring_of_descriptor(d, Z).ring;
    CHECK(product_of(r, "nu2", "b1.1") == SparseVector{{r.index_of("tau1"), Rational(1)}});
    for (const char* other : {"nu1", "nu3", "nu4"}) CHECK(product_of(r, other, "b1.1").empty());
}

TEST_CASE("source manifold inference") {
    auto f = manifold_inference(fig3(4), 7, Z);
    CHECK(f.qualifies);
    CHECK(f.iso_max_degree == 2);
    CHECK(f.truncated_ring.ranks() == std::vector<std::size_t>{1, 0, 0});
    CHECK_FALSE(f.assumption.empty());

    CHECK(manifold_inference(fig3(3), 4, Z).iso_max_degree == 0);
    CHECK_THROWS_AS(manifold_inference(fig3(3), 3, Z), PreconditionError);

    auto doubled = manifold_inference(remark1(2), 6, Z);
    CHECK(doubled.reeb_total_rank == 4);
    REQUIRE(doubled.manifold_total_rank);
    CHECK(*doubled.manifold_total_rank == 8);
    CHECK_FALSE(doubled.qualifies);

    ReebDescriptor s = remark1(2);
    s.records[0].kind = RecordKind::S;
    CHECK(manifold_inference(s, 6, Z).qualifies);
}
