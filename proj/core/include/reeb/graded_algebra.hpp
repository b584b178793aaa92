#pragma once

// Graded modules and presented graded-commutative rings, together with the
// sphere / tensor / connected-sum / wedge constructions that produce the
// cohomology rings of products and connected sums of spheres and of their
// bouquets.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reeb/coefficients.hpp"

namespace reeb {

class GradedModule {
public:
    GradedModule() = default;
    explicit GradedModule(std::vector<ModulePiece> pieces) : pieces_(std::move(pieces)) {}

    static GradedModule free(const std::vector<std::size_t>& ranks);

    // -1 for the zero module with no degrees.
    int max_degree() const { return static_cast<int>(pieces_.size()) - 1; }
    const std::vector<ModulePiece>& pieces() const { return pieces_; }

    // Pieces above max_degree() read as zero.
    ModulePiece piece(int k) const;
    std::size_t rank(int k) const { return piece(k).free_rank; }
    std::vector<std::size_t> ranks() const;
    std::size_t total_rank() const;
    bool is_free() const;

    void resize(int max_degree) { pieces_.resize(static_cast<std::size_t>(max_degree + 1)); }
    ModulePiece& operator[](int k) { return pieces_.at(static_cast<std::size_t>(k)); }

    friend bool operator==(const GradedModule& a, const GradedModule& b);

private:
    std::vector<ModulePiece> pieces_;
};

std::string to_string(const GradedModule& m, const CoefficientRing& ring);

struct Provenance {
    enum class Kind { Base, Inclusion, Bubbled, Top };
    Kind kind = Kind::Base;
    int record = -1; // 0-based record index for Bubbled / Top
    int sphere = -1; // 0-based sphere index within the record for Bubbled

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

std::string to_string(const Provenance& p);

struct BasisElement {
    std::string id;
    int degree = 0;
    Provenance provenance;
    bool sphere_representable = false;

    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

// Coordinates over the distinguished basis: sorted by index, no zero entries.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

class PresentedGradedRing {
public:
    PresentedGradedRing(CoefficientRing ring, int top_degree);

    const CoefficientRing& ring() const { return ring_; }
    int top_degree() const { return top_degree_; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    std::size_t size() const { return basis_.size(); }

    // Degree must be in [1, top_degree]; the degree-0 unit is implicit.
    std::size_t add_basis_element(BasisElement e);
    BasisElement& element(std::size_t i) { return basis_.at(i); }

    std::optional<std::size_t> find(const std::string& id) const;
    std::size_t index_of(const std::string& id) const;
    std::vector<std::size_t> degree_indices(int k) const;

    // Sets a*b and, by graded commutativity, b*a. Products whose degree
    // exceeds top_degree must be zero; the vector must live in degree
    // deg(a)+deg(b).
    void set_product(std::size_t a, std::size_t b, SparseVector value);
    // Zero vector when absent.
    SparseVector product(std::size_t a, std::size_t b) const;
    SparseVector multiply(const SparseVector& x, const SparseVector& y) const;

    std::size_t rank(int k) const;
    // Degree 0 included (rank 1).
    std::vector<std::size_t> ranks() const;
    GradedModule module() const;

    // Human-readable violations of graded commutativity, degree additivity,
    // associativity (exhaustive over basis triples) and the top-degree bound.
    std::vector<std::string> axiom_violations() const;

    const std::map<std::pair<std::size_t, std::size_t>, SparseVector>& product_table() const { return products_; }

    Rational normalize(const Rational& v) const;

private:
    SparseVector normalized(SparseVector v) const;

    CoefficientRing ring_;
    int top_degree_;
    std::vector<BasisElement> basis_;
    std::map<std::pair<std::size_t, std::size_t>, SparseVector> products_;
};

std::string to_string(const SparseVector& v, const PresentedGradedRing& ring);

class ManifoldExpr {
public:
    enum class Kind { Sphere, Product, ConnSum };

    static ManifoldExpr sphere(int k);
    static ManifoldExpr product(ManifoldExpr a, ManifoldExpr b);
    static ManifoldExpr connsum(ManifoldExpr a, ManifoldExpr b);

    Kind kind() const { return kind_; }
    int sphere_dim() const { return sphere_dim_; }
    const ManifoldExpr& left() const { return *left_; }
    const ManifoldExpr& right() const { return *right_; }

    int dimension() const;
    // Sphere leaves in left-to-right order.
    std::vector<int> leaf_dims() const;
    bool is_sphere_or_product_of_spheres() const;
    std::vector<std::string> violations() const;
    std::string to_string() const;

    friend bool operator==(const ManifoldExpr& a, const ManifoldExpr& b);

private:
    Kind kind_ = Kind::Sphere;
    int sphere_dim_ = 0;
    std::shared_ptr<const ManifoldExpr> left_;
    std::shared_ptr<const ManifoldExpr> right_;
};

struct GcpsExpr {
    std::vector<ManifoldExpr> summands; // empty: a point
};

PresentedGradedRing unit_ring(const CoefficientRing& ring);
PresentedGradedRing sphere_ring(int k, const CoefficientRing& ring);
PresentedGradedRing tensor_ring(const PresentedGradedRing& a, const PresentedGradedRing& b);
PresentedGradedRing connsum_ring(const PresentedGradedRing& a1, const PresentedGradedRing& a2);
PresentedGradedRing cps_cohomology(const ManifoldExpr& e, const CoefficientRing& ring);
PresentedGradedRing gcps_cohomology(const GcpsExpr& e, const CoefficientRing& ring);

// Ring with degrees above `max_degree` replaced by zero.
PresentedGradedRing truncate(const PresentedGradedRing& a, int max_degree);

// Ring with basis element `index` replaced by unit * element.
PresentedGradedRing rescale_basis_element(const PresentedGradedRing& a, std::size_t index, const Rational& unit);

// Coordinate functional a* on one degree piece: a*(a) = 1 and a* vanishes on
// the span of the other distinguished generators.
class CoordinateFunctional {
public:
    CoordinateFunctional(int degree, std::size_t index, std::size_t piece_size)
        : degree_(degree), index_(index), size_(piece_size) {}

    int degree() const { return degree_; }
    std::size_t index() const { return index_; }
    std::size_t piece_size() const { return size_; }

    Rational operator()(const std::vector<Rational>& coordinates) const;

private:
    int degree_;
    std::size_t index_;
    std::size_t size_;
};

// Generators of a degree piece are ordered free generators first, then one
// generator per torsion summand. Throws PreconditionError for a torsion
// generator or an out-of-range index.
CoordinateFunctional dual_basis_functional(const GradedModule& module, int degree, std::size_t generator);
// Functional dual to a distinguished ring basis element within its degree.
CoordinateFunctional dual_basis_functional(const PresentedGradedRing& ring, std::size_t basis_index);

struct PairingInvariant {
    int p = 0;
    int q = 0;
    CoefficientRing ring = CoefficientRing::integers();
    std::size_t rank = 0;
    std::vector<BigInt> divisors; // integers only

    bool same_as(const PairingInvariant& other) const;
    std::string describe() const;
};

// The multiplication map H^p (x) H^q -> H^{p+q} in the distinguished bases,
// summarized by its elementary divisors (integers) or rank (fields).
PairingInvariant pairing_invariants(const PresentedGradedRing& a, int p, int q);

struct InvariantComparison {
    enum class Verdict { Consistent, Distinguished };
    Verdict verdict = Verdict::Consistent;
    std::string witness;
    // Populated when the witness is a pairing mismatch.
    std::optional<std::pair<PairingInvariant, PairingInvariant>> pairing_witness;

    bool consistent() const { return verdict == Verdict::Consistent; }
};

// Sound but incomplete: Distinguished proves non-isomorphism, Consistent
// proves nothing.
InvariantComparison compare_invariants(const PresentedGradedRing& a, const PresentedGradedRing& b);

} // namespace reeb
