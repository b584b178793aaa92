#pragma once

// Formula engine: homology and cohomology rings of Reeb spaces described by
// a ReebDescriptor, the realizability planners, and the source-manifold
// inference for S-bubbling schedules.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reeb/graded_algebra.hpp"
#include "reeb/reeb_descriptor.hpp"

namespace reeb {

GradedModule homology_of_descriptor(const ReebDescriptor& d, const CoefficientRing& ring);

struct RecordClasses {
    // Ring index of the bubbled class of each sphere; nullopt for
    // 0-dimensional spheres, which carry no class.
    std::vector<std::optional<std::size_t>> beta;
    std::size_t tau = 0;
};

struct RingPresentationReport {
    GradedModule homology;
    PresentedGradedRing ring;
    std::vector<std::size_t> inclusion_classes; // ring indices of the base classes, base order
    std::vector<RecordClasses> records;
};

// Basis: inclusion images of the base classes (ids nu<j>/t<j>), then per
// record the bubbled classes b<r>.<s> and the top class tau<r> (1-based).
RingPresentationReport cohomology_ring_of_descriptor(const ReebDescriptor& d, const CoefficientRing& ring);

struct Thm1Plan {
    struct Coefficient {
        int record = 0; // 1-based, at most rank G_n
        int k1 = 0;     // the sphere has dimension n - k1
        int k2 = 0;     // 1-based among that record's spheres of this dimension
        int k3 = 0;     // 1-based among the base classes of degree n - k1
        std::int64_t value = 0;
    };

    int n = 0;
    std::vector<int> s;              // s_1 .. s_{n-1}
    std::vector<int> G;              // rank G_1 .. rank G_n
    std::vector<std::vector<int>> A; // per record j: A_{j,1} .. A_{j,n-1}
    std::vector<Coefficient> coefficients;
    bool normal = false;
};

struct GeneralPlan {
    struct Coefficient {
        int k1 = 0; // the sphere has dimension n - k1
        int j1 = 0; // 1-based among the spheres of that dimension
        std::string target;
        std::int64_t value = 0;
    };

    int n = 0;
    BaseSpec base;
    std::vector<int> G; // rank G_1 .. rank G_n
    std::vector<Coefficient> coefficients;
};

using Plan = std::variant<Thm1Plan, GeneralPlan>;

std::vector<std::string> plan_violations(const Thm1Plan& plan);
std::vector<std::string> plan_violations(const GeneralPlan& plan);

// Throw PreconditionError listing every violated constraint.
ReebDescriptor realize_plan(const Thm1Plan& plan);
ReebDescriptor realize_plan_general(const GeneralPlan& plan);
ReebDescriptor realize(const Plan& plan);

// Position of the k2-th sphere of dimension n - k1 within record j's sphere list.
std::size_t plan_sphere_index(const Thm1Plan& plan, int record, int k1, int k2);
// Id of the k3-th base class of degree l.
std::string plan_class_id(const Thm1Plan& plan, int l, int k3);

Plan parse_plan(const std::string& text);
std::string serialize_plan(const Plan& plan);
Plan load_plan(const std::string& path);

struct InferenceReport {
    int n = 0;
    int m = 0;
    bool qualifies = false;
    std::string assumption;
    // Homotopy, homology and cohomology of M agree with W_f in degrees
    // j <= iso_max_degree.
    int iso_max_degree = 0;
    PresentedGradedRing truncated_ring;
    std::size_t reeb_total_rank = 0;
    // Present when m == 2n and H_{n-1}(W_f) is free.
    std::optional<std::size_t> manifold_total_rank;
};

InferenceReport manifold_inference(const ReebDescriptor& d, int m, const CoefficientRing& ring);

} // namespace reeb
