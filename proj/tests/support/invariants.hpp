#pragma once

// Property suites over descriptors. Each suite returns human-readable
// failures; an empty list means the property held.

#include <cstdint>
#include <string>
#include <vector>

#include "reeb/catalog.hpp"
#include "reeb/reeb_descriptor.hpp"
#include "reeb/simplicial.hpp"

namespace invariants {

// Ranks over GF(2) computed without the library's elimination code.
std::vector<std::size_t> gf2_betti(const reeb::SimplicialComplex& k);

// K and L are subcomplexes of X (same labels) whose union is X. Checks
// exactness of the Mayer-Vietoris sequence at all three positions.
std::vector<std::string> mayer_vietoris_failures(const reeb::SimplicialComplex& x, const reeb::SimplicialComplex& k,
                                                 const reeb::SimplicialComplex& l);

// Every entry of the composite boundary, checked cell by cell.
bool boundary_squares_to_zero(const reeb::ChainComplexZ& c);

using Suite = std::vector<std::string> (*)(const reeb::ReebDescriptor&);

std::vector<std::string> h1_invariance(const reeb::ReebDescriptor& d);
std::vector<std::string> degree_n_growth(const reeb::ReebDescriptor& d);
std::vector<std::string> freeness_over_z(const reeb::ReebDescriptor& d);
std::vector<std::string> inclusion_monomorphism(const reeb::ReebDescriptor& d);
std::vector<std::string> unit_rescaling(const reeb::ReebDescriptor& d);
std::vector<std::string> mv_exactness(const reeb::ReebDescriptor& d);
std::vector<std::string> boundary_squared_zero(const reeb::ReebDescriptor& d);
std::vector<std::string> kunneth_convolution(const reeb::ReebDescriptor& d);

struct NamedSuite {
    const char* name;
    Suite run;
};

const std::vector<NamedSuite>& all_suites();

struct SuiteOutcome {
    std::string name;
    std::size_t cases = 0;
    std::vector<std::string> failures; // "<instance>: <failure>"
};

// Runs every suite over every instance, instances in parallel.
std::vector<SuiteOutcome> run_suites(const std::vector<reeb::CatalogInstance>& instances);

// The built-in catalog followed by `count` test-side random descriptors.
std::vector<reeb::CatalogInstance> suite_instances(std::uint32_t seed, std::size_t count);

} // namespace invariants
