#include <doctest.h>

#include <random>

#include "reeb/errors.hpp"
#include "reeb/simplicial.hpp"
#include "support/invariants.hpp"
#include "support/printing.hpp"
#include "support/oracles.hpp"

using namespace reeb;

namespace {

const CoefficientRing Z = CoefficientRing::integers();
const CoefficientRing Q = CoefficientRing::rationals();
const CoefficientRing F2 = CoefficientRing::prime_field(2);

using Ranks = std::vector<std::size_t>;

// Trailing zeros dropped.
Ranks ranks(const SimplicialComplex& k, const CoefficientRing& r = Z) {
    auto v = homology_of_complex(k, r).ranks();
    while (v.size() > 1 && v.back() == 0) v.pop_back();
    return v;
}

SimplicialComplex torus() { return product_complex(sphere_complex(1), sphere_complex(1)); }

SimplicialComplex cone(const SimplicialComplex& k, int apex) {
    std::vector<Simplex> gens = k.facets();
    for (auto& s : gens) s.push_back(apex);
    return SimplicialComplex::from_simplices(gens);
}

// Six-vertex projective plane.
SimplicialComplex rp2() {
    return SimplicialComplex::from_simplices({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                              {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}});
}

int sort_sign(Simplex s) {
    int sign = 1;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] > s[j]) sign = -sign;
    return sign;
}

// Push an oriented chain through a vertex map without the library's chain map.
std::map<Simplex, std::int64_t> push(const SimplicialMap& f, int k, const ChainColumn& chain) {
    std::map<Simplex, std::int64_t> out;
    for (const auto& [i, c] : chain) {
        Simplex image;
        for (int v : f.domain.simplices(k)[i]) image.push_back(f(v));
        Simplex sorted = image;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        out[sorted] += c * sort_sign(image);
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

std::map<Simplex, std::int64_t> as_map(const SimplicialComplex& k, int dim, const ChainColumn& c, std::int64_t scale) {
    std::map<Simplex, std::int64_t> out;
    for (const auto& [i, v] : c) out[k.simplices(dim)[i]] += v * scale;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

SimplicialComplex random_complex(std::mt19937& rng) {
    std::uniform_int_distribution<int> v(0, 6);
    std::vector<Simplex> gens;
    int count = 2 + static_cast<int>(rng() % 8);
    for (int i = 0; i < count; ++i) {
        Simplex s;
        int size = 1 + static_cast<int>(rng() % 3);
        while (static_cast<int>(s.size()) < size) {
            int x = v(rng);
            if (std::find(s.begin(), s.end(), x) == s.end()) s.push_back(x);
        }
        std::sort(s.begin(), s.end());
        gens.push_back(s);
    }
    return SimplicialComplex::from_simplices(gens);
}

} // namespace

TEST_CASE("spheres") {
    CHECK(ranks(sphere_complex(0)) == Ranks{2});
    CHECK(ranks(sphere_complex(1)) == Ranks{1, 1});
    CHECK(ranks(sphere_complex(2)) == Ranks{1, 0, 1});
    CHECK(ranks(sphere_complex(4)) == Ranks{1, 0, 0, 0, 1});
    for (int k = 1; k <= 4; ++k) {
        auto s = sphere_complex(k);
        CHECK(s.vertices().size() == static_cast<std::size_t>(k + 2));
        CHECK(s.is_closed_pseudomanifold());
        // The fundamental cycle is a cycle.
        auto z = sphere_fundamental_cycle(k);
        CHECK(z.size() == static_cast<std::size_t>(k + 2));
        std::map<std::size_t, std::int64_t> acc;
        auto c = s.chain_complex();
        for (const auto& [i, v] : z)
            for (const auto& [f, w] : c.boundary(k, i)) acc[f] += v * w;
        for (const auto& [f, v] : acc) CHECK(v == 0);
    }
}

TEST_CASE("products") {
    auto t = torus();
    CHECK(t.vertices().size() == 9);
    CHECK(ranks(t) == Ranks{1, 2, 1});
    CHECK(t.is_closed_pseudomanifold());
    CHECK(t.euler_characteristic() == 0);
    CHECK(ranks(product_complex(sphere_complex(1), sphere_complex(2))) == Ranks{1, 1, 1, 1});
    CHECK(ranks(product_complex(sphere_complex(2), sphere_complex(2))) == Ranks{1, 0, 2, 0, 1});
    auto point = SimplicialComplex::from_simplices({{0}});
    CHECK(ranks(product_complex(sphere_complex(1), point)) == Ranks{1, 1});
    CHECK(product_vertex(sphere_complex(1), sphere_complex(1), 0, 0) !=
          product_vertex(sphere_complex(1), sphere_complex(1), 1, 0));
}

TEST_CASE("products satisfy Kunneth over GF(2) on random complexes") {
    std::mt19937 rng(211);
    for (int trial = 0; trial < 25; ++trial) {
        auto a = random_complex(rng), b = random_complex(rng);
        auto ba = invariants::gf2_betti(a), bb = invariants::gf2_betti(b);
        auto p = product_complex(a, b);
        auto bp = invariants::gf2_betti(p);
        for (std::size_t k = 0; k < bp.size(); ++k) {
            std::size_t s = 0;
            for (std::size_t i = 0; i <= k; ++i)
                if (i < ba.size() && k - i < bb.size()) s += ba[i] * bb[k - i];
            CHECK(bp[k] == s);
        }
        CHECK(homology_of_complex(p, F2).ranks() == bp);
        CHECK(p.euler_characteristic() == a.euler_characteristic() * b.euler_characteristic());
    }
}

TEST_CASE("wedges") {
    auto w = wedge_complex({sphere_complex(1), sphere_complex(1)});
    CHECK(ranks(w.complex) == Ranks{1, 2});
    CHECK(w.embeddings.size() == 2);
    CHECK(w.embeddings[0].at(0) == 0);
    CHECK(w.embeddings[1].at(0) == 0);
    CHECK(ranks(wedge_complex({sphere_complex(1), sphere_complex(2)}).complex) == Ranks{1, 1, 1});
    auto single = wedge_complex({torus()}).complex;
    CHECK(ranks(single) == ranks(torus()));
    CHECK(single.size() == torus().size());
    CHECK(ranks(wedge_complex({torus(), sphere_complex(2), sphere_complex(1)}).complex) == Ranks{1, 3, 2});
}

TEST_CASE("connected sums") {
    auto g2 = connected_sum_complex(torus(), torus(), 2);
    CHECK(ranks(g2.complex) == Ranks{1, 4, 1});
    CHECK(g2.complex.is_closed_pseudomanifold());
    CHECK(g2.complex.euler_characteristic() == -2);
    CHECK(ranks(connected_sum_complex(sphere_complex(2), sphere_complex(2), 2).complex) == Ranks{1, 0, 1});
    CHECK(ranks(connected_sum_complex(product_complex(sphere_complex(1), sphere_complex(2)), sphere_complex(3), 3)
                    .complex) == Ranks{1, 1, 1, 1});
    CHECK_THROWS_AS(connected_sum_complex(torus(), sphere_complex(3), 2), PreconditionError);
}

TEST_CASE("degree maps have the requested degree") {
    for (int l = 1; l <= 3; ++l)
        for (std::int64_t d = -3; d <= 3; ++d) {
            CAPTURE(l);
            CAPTURE(d);
            auto m = degree_map(l, d);
            CHECK(m.map.is_valid());
            CHECK(m.multiplier == d);
            CHECK(m.map(0) == 0);
            CHECK(ranks(m.map.domain) == ranks(sphere_complex(l)));
            auto image = push(m.map, l, m.fundamental_cycle);
            auto target = as_map(sphere_complex(l), l, sphere_fundamental_cycle(l), d);
            CHECK(image == target);
        }
}

TEST_CASE("maps from a sphere to a bouquet") {
    for (auto degrees : std::vector<std::vector<std::int64_t>>{{1}, {2, -1}, {0}, {0, 3, -2}}) {
        auto m = sphere_to_wedge_map(1, degrees);
        REQUIRE(m.map.is_valid());
        std::map<Simplex, std::int64_t> expected;
        for (std::size_t t = 0; t < degrees.size(); ++t)
            for (const auto& [s, v] : as_map(m.map.codomain, 1, m.wedge_cycles[t], degrees[t])) expected[s] += v;
        std::erase_if(expected, [](const auto& kv) { return kv.second == 0; });
        CHECK(push(m.map, 1, m.fundamental_cycle) == expected);
    }
    auto two = sphere_to_wedge_map(2, {1, -2});
    std::map<Simplex, std::int64_t> expected;
    for (std::size_t t = 0; t < 2; ++t)
        for (const auto& [s, v] : as_map(two.map.codomain, 2, two.wedge_cycles[t], two.degrees[t])) expected[s] += v;
    CHECK(push(two.map, 2, two.fundamental_cycle) == expected);
}

TEST_CASE("mapping cylinders deformation retract to the codomain") {
    for (std::int64_t d : {0, 1, 2, -1}) {
        auto m = degree_map(1, d);
        auto cyl = mapping_cylinder(m.map);
        CHECK(ranks(cyl.complex) == Ranks{1, 1});
        CHECK(cyl.complex.is_full_subcomplex(m.map.domain.relabeled(cyl.domain_embedding)));
        CHECK(cyl.complex.is_full_subcomplex(m.map.codomain.relabeled(cyl.codomain_embedding)));
    }
    SimplicialMap constant;
    constant.domain = sphere_complex(2);
    constant.codomain = SimplicialComplex::from_simplices({{0}});
    for (int v : constant.domain.vertices()) constant.vertex_map[v] = 0;
    CHECK(ranks(mapping_cylinder(constant).complex) == Ranks{1});
}

TEST_CASE("gluing along full subcomplexes") {
    // Two discs along their boundary circle give a 2-sphere.
    auto circle = sphere_complex(1);
    auto disc = cone(circle, 3);
    CHECK(disc.is_full_subcomplex(circle));
    auto s2 = glue_along(disc, circle, disc, circle, {{0, 0}, {1, 1}, {2, 2}});
    CHECK(ranks(s2.complex) == Ranks{1, 0, 1});
    CHECK(s2.complex.is_closed_pseudomanifold());

    // Two tori along a meridian.
    auto t = torus();
    std::vector<int> row;
    for (int a : circle.vertices()) row.push_back(product_vertex(circle, circle, a, 0));
    auto meridian = t.induced(row);
    REQUIRE(t.is_full_subcomplex(meridian));
    std::map<int, int> iso;
    for (int v : row) iso[v] = v;
    auto glued = glue_along(t, meridian, t, meridian, iso);
    CHECK(ranks(glued.complex) == Ranks{1, 3, 2});
    auto k = t.relabeled(glued.left), l = t.relabeled(glued.right);
    CHECK(invariants::mayer_vietoris_failures(glued.complex, k, l).empty());

    auto point = SimplicialComplex::from_simplices({{0}});
    CHECK(ranks(glue_along(circle, point, circle, point, {{0, 0}}).complex) == Ranks{1, 2});
}

TEST_CASE("Mayer-Vietoris exactness on facet splits") {
    std::mt19937 rng(223);
    std::vector<SimplicialComplex> spaces = {torus(), rp2(), connected_sum_complex(torus(), torus(), 2).complex,
                                             wedge_complex({sphere_complex(2), sphere_complex(1)}).complex};
    for (int i = 0; i < 10; ++i) spaces.push_back(random_complex(rng));
    for (const auto& x : spaces) {
        auto facets = x.facets();
        std::shuffle(facets.begin(), facets.end(), rng);
        auto half = facets.size() / 2;
        if (half == 0) continue;
        auto k = SimplicialComplex::from_simplices({facets.begin(), facets.begin() + static_cast<long>(half)});
        auto l = SimplicialComplex::from_simplices({facets.begin() + static_cast<long>(half), facets.end()});
        CHECK(invariants::mayer_vietoris_failures(x, k, l).empty());
    }
    // Negative control: K and L miss a facet of X, so H_2 of X is unexplained.
    auto s2 = sphere_complex(2);
    auto facets = s2.facets();
    auto k = SimplicialComplex::from_simplices({facets[0], facets[1]});
    auto l = SimplicialComplex::from_simplices({facets[2]});
    CHECK_FALSE(invariants::mayer_vietoris_failures(s2, k, l).empty());
}

TEST_CASE("barycentric subdivision preserves homology") {
    for (const auto& k : {torus(), rp2(), sphere_complex(3)}) {
        auto sd = barycentric_subdivision(k);
        CHECK(homology_of_complex(sd.complex, Z) == homology_of_complex(k, Z));
        CHECK(sd.complex.vertices().size() == k.size());
        CHECK(sd.barycenter.size() == k.size());
        CHECK(sd.complex.euler_characteristic() == k.euler_characteristic());
    }
}

TEST_CASE("torsion and field coefficients") {
    auto p = rp2();
    REQUIRE(p.is_closed_pseudomanifold());
    auto h = homology_of_complex(p, Z);
    CHECK(h.rank(1) == 0);
    CHECK(h.piece(1).torsion == std::vector<BigInt>{2});
    CHECK(h.rank(2) == 0);
    CHECK(ranks(p, F2) == Ranks{1, 1, 1});
    CHECK(ranks(p, Q) == Ranks{1});
    CHECK(invariants::gf2_betti(p) == Ranks{1, 1, 1});
    CHECK(p.euler_characteristic() == 1);
}

TEST_CASE("cup rings of complexes") {
    auto t = cup_ring_of_complex(torus(), Z);
    CHECK(t.ranks() == Ranks{1, 2, 1});
    CHECK(pairing_invariants(t, 1, 1).divisors == std::vector<BigInt>{1});
    CHECK(t.axiom_violations().empty());

    auto w = cup_ring_of_complex(wedge_complex({sphere_complex(1), sphere_complex(1), sphere_complex(2)}).complex, Z);
    CHECK(pairing_invariants(w, 1, 1).divisors.empty());

    auto s2s2 = cup_ring_of_complex(product_complex(sphere_complex(2), sphere_complex(2)), Q);
    CHECK(pairing_invariants(s2s2, 2, 2).rank == 1);

    CHECK_THROWS_AS(cup_ring_of_complex(rp2(), Z), TorsionError);
    auto f2 = cup_ring_of_complex(rp2(), F2);
    CHECK(f2.ranks() == Ranks{1, 1, 1});
    // The generator of H^1(RP^2; F2) squares to the generator of H^2.
    CHECK(pairing_invariants(f2, 1, 1).rank == 1);

    auto g2 = cup_ring_of_complex(connected_sum_complex(torus(), torus(), 2).complex, Z);
    CHECK(pairing_invariants(g2, 1, 1).divisors == std::vector<BigInt>{1});
}

TEST_CASE("subcomplex helpers") {
    auto t = torus();
    CHECK(t.is_pure());
    CHECK_FALSE(wedge_complex({sphere_complex(2), sphere_complex(1)}).complex.is_pure());
    auto filled = SimplicialComplex::from_simplices({{0, 1, 2}});
    CHECK_FALSE(filled.is_full_subcomplex(sphere_complex(1)));
    CHECK(filled.is_full_subcomplex(filled.induced({0, 1})));
    auto moved = sphere_complex(1).relabeled({{0, 10}, {1, 11}, {2, 12}});
    CHECK(moved.contains({10, 12}));
    CHECK(ranks(moved) == Ranks{1, 1});
    CHECK_FALSE(sphere_complex(1).contains({0, 1, 2}));
    CHECK(SimplicialComplex().dimension() == -1);
}

TEST_CASE("boundary squares to zero on random complexes") {
    std::mt19937 rng(227);
    for (int trial = 0; trial < 30; ++trial) {
        auto k = random_complex(rng);
        CHECK(invariants::boundary_squares_to_zero(k.chain_complex()));
        long chi = 0;
        for (int d = 0; d <= k.dimension(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<long>(k.count(d));
        CHECK(k.euler_characteristic() == chi);
        auto b = invariants::gf2_betti(k);
        long chi_h = 0;
        for (std::size_t d = 0; d < b.size(); ++d) chi_h += (d % 2 ? -1 : 1) * static_cast<long>(b[d]);
        CHECK(chi_h == chi);
    }
}
