#include <doctest.h>

#include <random>

#include "reeb/errors.hpp"
#include "reeb/graded_algebra.hpp"
#include "reeb/simplicial.hpp"
#include "support/oracles.hpp"

using namespace reeb;

namespace {

const CoefficientRing Z = CoefficientRing::integers();
const CoefficientRing Q = CoefficientRing::rationals();

SparseVector product_of(const PresentedGradedRing& r, const std::string& a, const std::string& b) {
    return r.product(r.index_of(a), r.index_of(b));
}

SparseVector unit(const PresentedGradedRing& r, const std::string& id, int c = 1) {
    return {{r.index_of(id), Rational(c)}};
}

SimplicialComplex torus_complex() { return product_complex(sphere_complex(1), sphere_complex(1)); }

} // namespace

TEST_CASE("sphere rings") {
    auto s1 = sphere_ring(1, Z);
    CHECK(s1.ranks() == std::vector<std::size_t>{1, 1});
    CHECK(s1.product(0, 0).empty());
    CHECK(sphere_ring(2, CoefficientRing::prime_field(2)).ranks() == std::vector<std::size_t>{1, 0, 1});
    CHECK(sphere_ring(3, Q).ranks() == std::vector<std::size_t>{1, 0, 0, 1});
    CHECK(s1.basis()[0].sphere_representable);
    CHECK(s1.axiom_violations().empty());
}

TEST_CASE("tensor product of circle rings is the torus ring") {
    auto s1 = sphere_ring(1, Z);
    auto t = tensor_ring(s1, s1);
    CHECK(t.ranks() == std::vector<std::size_t>{1, 2, 1});
    CHECK(product_of(t, "g*1", "1*g") == unit(t, "g*g"));
    CHECK(product_of(t, "1*g", "g*1") == unit(t, "g*g", -1));
    CHECK(product_of(t, "g*1", "g*1").empty());
    CHECK(product_of(t, "1*g", "1*g").empty());
    CHECK(t.axiom_violations().empty());

    auto oracle = cup_ring_of_complex(torus_complex(), Z);
    CHECK(compare_invariants(t, oracle).consistent());
    auto p11 = pairing_invariants(t, 1, 1);
    CHECK(p11.divisors == std::vector<BigInt>{1});
    CHECK(pairing_invariants(oracle, 1, 1).divisors == std::vector<BigInt>{1});
}

TEST_CASE("tensor product of 2-sphere rings") {
    auto s2 = sphere_ring(2, Z);
    auto r = tensor_ring(s2, s2);
    CHECK(r.ranks() == std::vector<std::size_t>{1, 0, 2, 0, 1});
    CHECK(product_of(r, "g*1", "1*g") == unit(r, "g*g"));
    CHECK(product_of(r, "g*1", "g*1").empty());
    auto oracle = cup_ring_of_complex(product_complex(sphere_complex(2), sphere_complex(2)), Z);
    CHECK(compare_invariants(r, oracle).consistent());
    // H^2 (x) H^2 -> H^4 lands in a rank-one module.
    CHECK(pairing_invariants(tensor_ring(sphere_ring(2, Q), sphere_ring(2, Q)), 2, 2).rank == 1);
}

TEST_CASE("tensor with the unit ring is a copy") {
    auto s1 = sphere_ring(1, Z);
    auto t = tensor_ring(s1, unit_ring(Z));
    CHECK(t.ranks() == s1.ranks());
    CHECK(compare_invariants(t, s1).consistent());
}

TEST_CASE("Kunneth convolution of tensor rings") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = cps_cohomology(oracle_support::random_core(rng, 3, true), Q);
        auto b = cps_cohomology(oracle_support::random_core(rng, 3, true), Q);
        auto ra = a.ranks(), rb = b.ranks();
        auto t = tensor_ring(a, b);
        auto rt = t.ranks();
        REQUIRE(rt.size() == ra.size() + rb.size() - 1);
        for (std::size_t k = 0; k < rt.size(); ++k) {
            std::size_t s = 0;
            for (std::size_t i = 0; i <= k; ++i)
                if (i < ra.size() && k - i < rb.size()) s += ra[i] * rb[k - i];
            CHECK(rt[k] == s);
        }
        CHECK(t.axiom_violations().empty());
    }
}

TEST_CASE("connected sum of torus rings is the genus-2 ring") {
    auto s1 = sphere_ring(1, Z);
    auto t = tensor_ring(s1, s1);
    auto g2 = connsum_ring(t, t);
    CHECK(g2.ranks() == std::vector<std::size_t>{1, 4, 1});
    auto top = g2.index_of("top");
    auto l = [&](const char* id) { return g2.index_of(std::string("L.") + id); };
    auto r = [&](const char* id) { return g2.index_of(std::string("R.") + id); };
    auto p1 = g2.product(l("g*1"), l("1*g"));
    auto p2 = g2.product(r("g*1"), r("1*g"));
    REQUIRE(p1.size() == 1);
    REQUIRE(p2.size() == 1);
    CHECK(p1[0].first == top);
    CHECK(p2[0].first == top);
    CHECK(abs(p1[0].second) == 1);
    CHECK(abs(p2[0].second) == 1);
    for (auto a : {l("g*1"), l("1*g")})
        for (auto b : {r("g*1"), r("1*g")}) CHECK(g2.product(a, b).empty());
    CHECK(g2.axiom_violations().empty());

    auto surface = connected_sum_complex(torus_complex(), torus_complex(), 2).complex;
    CHECK(compare_invariants(g2, cup_ring_of_complex(surface, Z)).consistent());
}

TEST_CASE("connected sum of two S2 x S2 rings") {
    auto s2 = sphere_ring(2, Z);
    auto x = tensor_ring(s2, s2);
    auto r = connsum_ring(x, x);
    CHECK(r.ranks() == std::vector<std::size_t>{1, 0, 4, 0, 1});
    // The intersection form: two hyperbolic blocks, unimodular.
    auto deg2 = r.degree_indices(2);
    IntMatrix form(deg2.size(), deg2.size());
    auto top = r.index_of("top");
    for (std::size_t i = 0; i < deg2.size(); ++i)
        for (std::size_t j = 0; j < deg2.size(); ++j)
            for (const auto& [idx, v] : r.product(deg2[i], deg2[j]))
                if (idx == top) form(i, j) = BigInt(v);
    CHECK(oracle_support::determinantal_divisors(form) == std::vector<BigInt>{1, 1, 1, 1});
}

TEST_CASE("connected sum needs equal top degrees") {
    CHECK_THROWS_AS(connsum_ring(sphere_ring(1, Z), sphere_ring(2, Z)), PreconditionError);
    auto c = connsum_ring(sphere_ring(1, Z), sphere_ring(1, Z));
    CHECK(c.ranks() == std::vector<std::size_t>{1, 1});
}

TEST_CASE("cohomology of products and connected sums of spheres") {
    using E = ManifoldExpr;
    auto s2 = cps_cohomology(E::sphere(2), Z);
    CHECK(s2.ranks() == std::vector<std::size_t>{1, 0, 1});
    CHECK(s2.basis()[0].sphere_representable);

    auto p = cps_cohomology(E::product(E::sphere(1), E::sphere(2)), Z);
    CHECK(p.ranks() == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(p.basis()[p.index_of("g*1")].sphere_representable);
    CHECK(p.basis()[p.index_of("1*g")].sphere_representable);
    CHECK_FALSE(p.basis()[p.index_of("g*g")].sphere_representable);

    auto torus = E::product(E::sphere(1), E::sphere(1));
    auto g2 = cps_cohomology(E::connsum(torus, torus), Z);
    CHECK(g2.ranks() == std::vector<std::size_t>{1, 4, 1});
    std::size_t representable = 0;
    for (const auto& e : g2.basis())
        if (e.degree == 1 && e.sphere_representable) ++representable;
    CHECK(representable == 4);
}

TEST_CASE("bouquet rings") {
    using E = ManifoldExpr;
    CHECK(gcps_cohomology(GcpsExpr{}, Z).ranks() == std::vector<std::size_t>{1});
    auto w = gcps_cohomology(GcpsExpr{{E::sphere(1), E::sphere(2)}}, Z);
    CHECK(w.ranks() == std::vector<std::size_t>{1, 1, 1});
    CHECK(w.product_table().empty());

    auto torus = E::product(E::sphere(1), E::sphere(1));
    auto two = gcps_cohomology(GcpsExpr{{torus, torus}}, Z);
    CHECK(two.ranks() == std::vector<std::size_t>{1, 4, 2});
    auto oracle = cup_ring_of_complex(wedge_complex({torus_complex(), torus_complex()}).complex, Z);
    CHECK(compare_invariants(two, oracle).consistent());
    CHECK(pairing_invariants(two, 1, 1).divisors == std::vector<BigInt>{1, 1});
}

TEST_CASE("coordinate functionals") {
    auto one = GradedModule::free({1, 1});
    auto f = dual_basis_functional(one, 1, 0);
    CHECK(f({Rational(5)}) == 5);
    auto two = GradedModule::free({1, 2});
    auto first = dual_basis_functional(two, 1, 0);
    CHECK(first({Rational(0), Rational(1)}) == 0);
    CHECK(first({Rational(1), Rational(0)}) == 1);
    GradedModule torsion({ModulePiece{1, {}}, ModulePiece{0, {BigInt(2)}}});
    CHECK_THROWS_AS(dual_basis_functional(torsion, 1, 0), PreconditionError);
}

TEST_CASE("pairing invariants and comparisons") {
    auto w = gcps_cohomology(GcpsExpr{{ManifoldExpr::sphere(1), ManifoldExpr::sphere(1), ManifoldExpr::sphere(2)}}, Z);
    CHECK(pairing_invariants(w, 1, 1).divisors.empty());

    auto make = [](int c, const CoefficientRing& ring) {
        PresentedGradedRing r(ring, 3);
        auto nu = r.add_basis_element({"nu1", 1, {}, true});
        auto b = r.add_basis_element({"b1.1", 2, {}, false});
        auto tau = r.add_basis_element({"tau1", 3, {}, false});
        r.set_product(nu, b, {{tau, Rational(c)}});
        return r;
    };
    CHECK(pairing_invariants(make(2, Z), 1, 2).divisors == std::vector<BigInt>{2});
    CHECK(compare_invariants(make(1, Z), make(1, Z)).consistent());
    auto cmp = compare_invariants(make(1, Z), make(2, Z));
    CHECK_FALSE(cmp.consistent());
    REQUIRE(cmp.pairing_witness);
    CHECK(cmp.pairing_witness->first.divisors == std::vector<BigInt>{1});
    CHECK(cmp.pairing_witness->second.divisors == std::vector<BigInt>{2});
    CHECK(compare_invariants(make(1, Q), make(2, Q)).consistent());
    CHECK(pairing_invariants(make(2, CoefficientRing::prime_field(2)), 1, 2).rank == 0);
    CHECK_THROWS_AS(compare_invariants(make(1, Z), make(1, Q)), RingMismatchError);
}

TEST_CASE("presentation checks") {
    PresentedGradedRing r(Z, 2);
    auto a = r.add_basis_element({"a", 1, {}, false});
    auto top = r.add_basis_element({"top", 2, {}, false});
    CHECK_THROWS_AS(r.add_basis_element({"c", 3, {}, false}), PreconditionError);
    CHECK_THROWS(r.set_product(a, a, {{a, Rational(1)}}));
    r.set_product(a, top, {});
    CHECK(r.axiom_violations().empty());
    CHECK(truncate(tensor_ring(sphere_ring(1, Z), sphere_ring(1, Z)), 1).ranks() ==
          std::vector<std::size_t>{1, 2});
}
