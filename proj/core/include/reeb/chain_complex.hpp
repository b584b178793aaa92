#pragma once

// Free chain complexes over the integers with sparse boundaries, the
// algebraic constructions the cellular oracle needs (sums, tensor products,
// mapping cones), and homology with explicit cycle / cocycle bases.
//
// Large complexes are first shrunk by cancelling boundary entries equal to
// +-1 (a chain homotopy equivalence over Z); the residue is handled densely.
// The cancellation log is kept so that residual cycles and cocycles can be
// transported back to the original cells.

#include <cstddef>
#include <cstdint>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "reeb/coefficients.hpp"
#include "reeb/graded_algebra.hpp"

namespace reeb {

// Sorted by row, no zero entries.
using ChainColumn = std::vector<std::pair<std::size_t, std::int64_t>>;

ChainColumn normalized_column(ChainColumn c);

class ChainComplexZ {
public:
    // -1 for the empty complex.
    int max_degree() const { return static_cast<int>(cells_.size()) - 1; }
    std::size_t dim(int k) const;

    // The boundary refers to cells of degree k - 1.
    std::size_t add_cell(int k, ChainColumn boundary = {});
    const ChainColumn& boundary(int k, std::size_t cell) const;
    void set_boundary(int k, std::size_t cell, ChainColumn boundary);

    // dim(k-1) x dim(k); zero-row matrix for k = 0.
    IntMatrix boundary_matrix(int k) const;
    bool boundary_squared_zero() const;
    long euler_characteristic() const;

private:
    std::vector<std::vector<ChainColumn>> cells_;
};

struct ChainMap {
    // images[k][cell]: image of a degree-k source cell in the target.
    std::vector<std::vector<ChainColumn>> images;

    ChainColumn image(int k, std::size_t cell) const;
};

bool is_chain_map(const ChainMap& f, const ChainComplexZ& source, const ChainComplexZ& target);

// Cells of `a` first, then cells of `b` shifted by dim_a(k).
ChainComplexZ direct_sum(const ChainComplexZ& a, const ChainComplexZ& b);

struct TensorProduct {
    ChainComplexZ complex;
    // (p, i, q, j) -> index in degree p + q of cell a_i (degree p) x b_j (degree q).
    std::map<std::tuple<int, std::size_t, int, std::size_t>, std::size_t> index;
};

// d(a x b) = da x b + (-1)^|a| a x db.
TensorProduct tensor_product(const ChainComplexZ& a, const ChainComplexZ& b);

// Cone of f: A -> B. Degree k holds B_k (same indices) followed by A_{k-1};
// d(b) = db, d(a) = f(a) - da.
ChainComplexZ mapping_cone(const ChainMap& f, const ChainComplexZ& a, const ChainComplexZ& b);
// Index in cone degree k + 1 of source cell (k, i).
std::size_t cone_source_index(const ChainComplexZ& b, int k, std::size_t i);

class ChainReduction {
public:
    explicit ChainReduction(const ChainComplexZ& c);

    const ChainComplexZ& original() const { return original_; }
    const ChainComplexZ& residual() const { return residual_; }
    // Original index of each residual cell.
    const std::vector<std::vector<std::size_t>>& survivors() const { return survivors_; }
    std::size_t cancelled_pairs() const { return log_.size(); }

    // Residual cycle -> homologous cycle of the original complex.
    std::vector<Rational> lift_cycle(int k, const std::vector<Rational>& residual_cycle) const;
    // Residual cocycle -> cocycle of the original complex with the same
    // values on lifted cycles.
    std::vector<Rational> pull_cocycle(int k, const std::vector<Rational>& residual_cocycle) const;

private:
    struct Cancellation {
        int k; // degree of b
        std::size_t a, b;
        std::int64_t eps;
        ChainColumn boundary_rest;   // d b without a, degree k - 1
        ChainColumn coboundary_rest; // (x, <dx, a>) for the other degree-k cofaces of a
    };

    ChainComplexZ original_;
    ChainComplexZ residual_;
    std::vector<std::vector<std::size_t>> survivors_;
    std::vector<Cancellation> log_;
};

GradedModule homology(const ChainComplexZ& c, const CoefficientRing& ring);
GradedModule homology(const ChainReduction& red, const CoefficientRing& ring);

struct HomologyBasis {
    int degree = 0;
    ModulePiece piece;
    // Dense over the original degree-k cells; cocycles[i](cycles[j]) = [i == j].
    std::vector<std::vector<Rational>> cycles;
    std::vector<std::vector<Rational>> cocycles;
};

// Degrees 0 .. max_degree. Over the integers the cocycles are dual to the
// free part; they represent a basis of cohomology whenever the homology in
// the degree below is free.
std::vector<HomologyBasis> homology_bases(const ChainReduction& red, const CoefficientRing& ring);

} // namespace reeb
