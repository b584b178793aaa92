#pragma once

// Ordered simplicial complexes, simplicial maps and the constructions the
// geometric oracle assembles Reeb spaces from. Vertices are integer labels;
// their numeric order is the vertex order used for orientations and for the
// Alexander-Whitney product.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reeb/chain_complex.hpp"
#include "reeb/graded_algebra.hpp"

namespace reeb {

// Strictly increasing vertex labels.
using Simplex = std::vector<int>;

class SimplicialComplex {
public:
    SimplicialComplex() = default;

    // Closure under faces of the given simplices (sorted on the way in).
    static SimplicialComplex from_simplices(const std::vector<Simplex>& generators);

    // -1 when empty.
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<int>& vertices() const { return vertices_; }
    std::size_t count(int k) const;
    std::size_t size() const;
    // Lexicographically sorted.
    const std::vector<Simplex>& simplices(int k) const;
    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    std::vector<Simplex> facets() const;
    bool is_pure() const;
    // Pure, and every codimension-one face lies in exactly two facets.
    bool is_closed_pseudomanifold() const;

    // Oriented simplicial chains; the cell index in degree k is the position
    // in simplices(k).
    ChainComplexZ chain_complex() const;
    long euler_characteristic() const;

    SimplicialComplex induced(const std::vector<int>& vertex_set) const;
    // `sub` is a subcomplex and equals the subcomplex induced on its vertices.
    bool is_full_subcomplex(const SimplicialComplex& sub) const;
    // The label map must be injective on vertices().
    SimplicialComplex relabeled(const std::map<int, int>& labels) const;

    // One sorted vertex tuple per line.
    std::string dump() const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) { return a.by_dim_ == b.by_dim_; }

private:
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::map<Simplex, std::size_t>> index_;
    std::vector<int> vertices_;
};

struct SimplicialMap {
    SimplicialComplex domain;
    SimplicialComplex codomain;
    std::map<int, int> vertex_map;

    int operator()(int v) const { return vertex_map.at(v); }
    // Sorted, duplicates removed.
    Simplex image(const Simplex& s) const;
    bool is_valid() const;
    // Degenerate images go to zero; otherwise the sign of the sorting permutation.
    ChainMap chain_map() const;
};

// Push a dense rational chain forward.
std::vector<Rational> push_forward(const SimplicialMap& f, int k, const std::vector<Rational>& chain);

SimplicialComplex sphere_complex(int k);
// Sum over the facets of the boundary of the simplex on 0..k+1, with the
// induced orientation.
ChainColumn sphere_fundamental_cycle(int k);

// Staircase triangulation; vertex (a, b) gets label product_vertex(K, L, a, b).
SimplicialComplex product_complex(const SimplicialComplex& k, const SimplicialComplex& l);
int product_vertex(const SimplicialComplex& k, const SimplicialComplex& l, int a, int b);

struct Wedge {
    SimplicialComplex complex;
    // Vertex labels of each summand inside the wedge; the wedge point is 0.
    std::vector<std::map<int, int>> embeddings;
};

// Identifies base_vertices[i] of summand i (default: its smallest vertex).
Wedge wedge_complex(const std::vector<SimplicialComplex>& summands, std::vector<int> base_vertices = {});

struct ConnectedSum {
    SimplicialComplex complex;
    std::map<int, int> left;  // K vertices (identity)
    std::map<int, int> right; // L vertices
};

// Removes the first facet of K and of L containing the respective smallest
// vertex and glues the two boundaries in vertex order.
ConnectedSum connected_sum_complex(const SimplicialComplex& k, const SimplicialComplex& l, int dim);
ConnectedSum connected_sum_complex(const SimplicialComplex& k, const SimplicialComplex& l, int dim,
                                   const Simplex& facet_k, const Simplex& facet_l);

struct DegreeMap {
    SimplicialMap map; // into sphere_complex(l)
    ChainColumn fundamental_cycle;
    std::int64_t multiplier = 0;
};

// Subdivided l-sphere mapped onto sphere_complex(l) with degree d; vertex 0
// goes to vertex 0.
DegreeMap degree_map(int l, std::int64_t d);

struct SphereToWedge {
    SimplicialMap map; // into wedge_complex of sphere_complex(l) copies
    ChainColumn fundamental_cycle;
    std::vector<ChainColumn> wedge_cycles; // fundamental cycle of each wedge summand
    std::vector<std::int64_t> degrees;
    std::vector<std::map<int, int>> embeddings;
};

SphereToWedge sphere_to_wedge_map(int l, const std::vector<std::int64_t>& degrees);

struct MappingCylinder {
    SimplicialComplex complex;
    std::map<int, int> domain_embedding;
    std::map<int, int> codomain_embedding;
};

MappingCylinder mapping_cylinder(const SimplicialMap& f);

struct Gluing {
    SimplicialComplex complex;
    std::map<int, int> left;
    std::map<int, int> right;
};

// Pushout of K <- A = B -> L. A and B are full subcomplexes given with
// their own labels; iso maps the vertices of A onto those of B.
Gluing glue_along(const SimplicialComplex& k, const SimplicialComplex& a, const SimplicialComplex& l,
                  const SimplicialComplex& b, const std::map<int, int>& iso);

struct Subdivision {
    SimplicialComplex complex;
    std::map<Simplex, int> barycenter;
};

Subdivision barycentric_subdivision(const SimplicialComplex& k);

GradedModule homology_of_complex(const SimplicialComplex& k, const CoefficientRing& ring);

// Basis ids h<k>.<i>; top degree defaults to the dimension of K. Requires a
// connected complex; over the integers throws TorsionError when homology has
// torsion.
PresentedGradedRing cup_ring_of_complex(const SimplicialComplex& k, const CoefficientRing& ring, int top = -1);
PresentedGradedRing cup_ring_of_complex(const SimplicialComplex& k, const ChainReduction& reduction,
                                        const CoefficientRing& ring, int top = -1);

} // namespace reeb
