#pragma once

// Independent models of the Reeb space of a descriptor.
//
// Tier 1 assembles free chain complexes: spheres, products and connected sums
// of the base cores, the bouquet of generating spheres, and one algebraic
// mapping cone per record. Tier 2 builds an honest simplicial complex by
// gluing mapping cylinders of explicit simplicial attaching maps, and carries
// the Alexander-Whitney cup product.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "reeb/calculus.hpp"
#include "reeb/chain_complex.hpp"
#include "reeb/reeb_descriptor.hpp"
#include "reeb/simplicial.hpp"

namespace reeb {

struct ChainModel {
    ChainComplexZ complex;
    std::size_t base_point = 0;          // degree-0 cell
    std::vector<ChainColumn> leaf_cycles; // one per sphere-representable base class, base order
};

ChainModel chain_model(const ReebDescriptor& d);
GradedModule chain_model_homology(const ReebDescriptor& d, const CoefficientRing& ring);

struct SimplicialModelOptions {
    // Multi-target coefficient vectors through sphere_to_wedge_map; when
    // off they raise UnsupportedModelError.
    bool multi_target = true;
};

struct SimplicialModel {
    SimplicialComplex complex;
    int base_vertex = 0;
    // Per sphere-representable base class: sphere_complex(dim) vertex -> vertex.
    std::vector<std::map<int, int>> leaves;
};

SimplicialModel simplicial_model(const ReebDescriptor& d, const SimplicialModelOptions& options = {});
// Empty when supported, otherwise the reason.
std::optional<std::string> tier2_unsupported(const ReebDescriptor& d, const SimplicialModelOptions& options = {});

enum class Tier { Auto, One, Two };
std::string to_string(Tier t);
Tier parse_tier(const std::string& text);

struct Witness {
    std::string kind; // homology, tier2-homology, euler, rank, pairing, model
    std::optional<int> degree;
    std::optional<std::pair<int, int>> pq;
    std::string expected;
    std::string got;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct PairingRow {
    int p = 0;
    int q = 0;
    std::string expected;
    std::string got;

    friend bool operator==(const PairingRow&, const PairingRow&) = default;
};

struct RingVerification {
    std::string ring;
    int tier = 1;
    bool homology_match = false;
    std::optional<bool> ring_match; // Tier 2 only
    double millis = 0;
    std::string expected_homology;
    std::string oracle_homology;
    std::vector<PairingRow> pairings;
    std::vector<Witness> witnesses;
    std::string note;

    bool ok() const { return homology_match && ring_match.value_or(true); }
    friend bool operator==(const RingVerification&, const RingVerification&) = default;
};

struct VerificationReport {
    std::string name;
    ReebDescriptor descriptor;
    std::vector<RingVerification> rings;

    bool all_match() const;
    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

struct VerifyOptions {
    Tier tier = Tier::Auto;
    SimplicialModelOptions simplicial;
    // Replace the calculus side (negative controls).
    std::function<GradedModule(const CoefficientRing&)> expected_homology;
    std::function<PresentedGradedRing(const CoefficientRing&)> expected_ring;
};

VerificationReport verify_descriptor(const ReebDescriptor& d, const std::vector<CoefficientRing>& rings,
                                     const VerifyOptions& options = {});

std::string report_to_json(const VerificationReport& r);
VerificationReport report_from_json(const std::string& text);
std::string reports_to_json(const std::vector<VerificationReport>& reports);
std::vector<VerificationReport> reports_from_json(const std::string& text);
std::string report_table(const VerificationReport& r);

} // namespace reeb
