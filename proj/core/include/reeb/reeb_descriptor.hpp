#pragma once

// The combinatorial shadow of a fold map built by repeated bubbling: a base
// special generic Reeb space (boundary connected sum of core x disc handles)
// and an ordered schedule of bubbling records.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "reeb/graded_algebra.hpp"

namespace reeb {

struct BaseSpec {
    std::vector<ManifoldExpr> handles; // empty: the base is an n-disc

    friend bool operator==(const BaseSpec&, const BaseSpec&) = default;
};

struct SphereSpec {
    int dim = 0; // 0: a point generator
    std::map<std::string, std::int64_t> coefficients;

    friend bool operator==(const SphereSpec&, const SphereSpec&) = default;
};

enum class RecordKind { M, S, NormalM, NormalS, Point };

std::string to_string(RecordKind kind);
RecordKind parse_record_kind(const std::string& text);

struct BubblingRecord {
    RecordKind kind = RecordKind::M;
    std::vector<SphereSpec> spheres;

    friend bool operator==(const BubblingRecord&, const BubblingRecord&) = default;
};

struct ReebDescriptor {
    int n = 2;
    BaseSpec base;
    std::vector<BubblingRecord> records;

    friend bool operator==(const ReebDescriptor&, const ReebDescriptor&) = default;
};

struct BaseClass {
    std::string id;
    int degree = 0;
    bool sphere_representable = false;
    std::size_t handle = 0; // 0-based handle index
};

// All positive-degree base cohomology classes in ring-basis order, with
// the representable ones labelled nu1, nu2, ... and the rest t1, t2, ...
std::vector<BaseClass> base_classes(const ReebDescriptor& d);

// The representable classes only: (id, degree).
std::vector<std::pair<std::string, int>> base_sphere_classes(const ReebDescriptor& d);

// Cohomology ring of the base over `ring`, basis labelled as above with
// Base provenance; top degree is the largest core dimension.
PresentedGradedRing base_ring(const ReebDescriptor& d, const CoefficientRing& ring);

// Every violation, not just the first. Empty means valid.
std::vector<std::string> validate(const ReebDescriptor& d);

// Throws PreconditionError listing all violations.
void require_valid(const ReebDescriptor& d);

// Handles and records concatenated; the second descriptor's coefficient
// ids are shifted past the first's.
ReebDescriptor connected_sum_descriptors(const ReebDescriptor& d1, const ReebDescriptor& d2);

// JSON document <-> descriptor. Parsing throws SchemaError with the JSON
// path of the offending field.
ReebDescriptor parse_descriptor(const std::string& text);
std::string serialize_descriptor(const ReebDescriptor& d);
ReebDescriptor load_descriptor(const std::string& path);

// One-line human summary, e.g. "n=3 base[S1] M{1:nu1*2}".
std::string summary(const ReebDescriptor& d);

} // namespace reeb
