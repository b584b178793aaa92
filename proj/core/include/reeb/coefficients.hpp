#pragma once

// Exact scalars, coefficient rings and the dense linear-algebra kernels that
// everything else reduces to: Smith normal form over the integers and
// Gauss-Jordan reduction over the rationals and prime fields.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reeb/errors.hpp"

namespace reeb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

bool is_prime(std::int64_t p);

class CoefficientRing {
public:
    enum class Kind { Integers, Rationals, PrimeField };

    static CoefficientRing integers() { return CoefficientRing(Kind::Integers, std::nullopt); }
    static CoefficientRing rationals() { return CoefficientRing(Kind::Rationals, std::nullopt); }
    // Throws PreconditionError unless p is prime.
    static CoefficientRing prime_field(std::int64_t p);

    Kind kind() const { return kind_; }
    std::optional<std::int64_t> modulus() const { return p_; }
    bool is_field() const { return kind_ != Kind::Integers; }

    // "Z", "Q", "Z/2", ...
    std::string name() const;

    friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;

private:
    CoefficientRing(Kind k, std::optional<std::int64_t> p) : kind_(k), p_(p) {}

    Kind kind_;
    std::optional<std::int64_t> p_;
};

// Parses "Z", "Q", "Z/p" (also "Zp" together with an explicit modulus).
CoefficientRing parse_ring(const std::string& text, std::optional<std::int64_t> p = std::nullopt);

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw PreconditionError("ragged matrix initializer");
            for (const auto& v : row) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> row(std::size_t r) const {
        return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    }
    std::vector<T> column(std::size_t c) const {
        std::vector<T> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using FieldMatrix = Matrix<Rational>;

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

// Arithmetic of one coefficient ring on a fixed scalar representation. The
// integers use BigInt; the rationals and every prime field use Rational, with
// prime-field values kept as integers in [0, p).
struct IntegerOps {
    using value_type = BigInt;

    BigInt zero() const { return 0; }
    BigInt one() const { return 1; }
    BigInt from_int(const BigInt& v) const { return v; }
    BigInt add(const BigInt& a, const BigInt& b) const { return a + b; }
    BigInt sub(const BigInt& a, const BigInt& b) const { return a - b; }
    BigInt mul(const BigInt& a, const BigInt& b) const { return a * b; }
    BigInt neg(const BigInt& a) const { return -a; }
    bool is_zero(const BigInt& a) const { return a == 0; }
    BigInt norm(const BigInt& a) const { return boost::multiprecision::abs(a); }
    // Truncating division; |r| < |b|.
    std::pair<BigInt, BigInt> div_rem(const BigInt& a, const BigInt& b) const {
        BigInt q = a / b;
        return {q, a - q * b};
    }
    // Unit u with u * a in canonical (non-negative) form.
    BigInt canonical_unit(const BigInt& a) const { return a < 0 ? BigInt(-1) : BigInt(1); }
    BigInt unit_inverse(const BigInt& u) const { return u; }
};

class FieldOps {
public:
    using value_type = Rational;

    explicit FieldOps(CoefficientRing ring);

    const CoefficientRing& ring() const { return ring_; }

    Rational zero() const { return 0; }
    Rational one() const { return 1; }
    Rational from_int(const BigInt& v) const { return reduce(Rational(v)); }
    Rational add(const Rational& a, const Rational& b) const { return reduce(a + b); }
    Rational sub(const Rational& a, const Rational& b) const { return reduce(a - b); }
    Rational mul(const Rational& a, const Rational& b) const { return reduce(a * b); }
    Rational neg(const Rational& a) const { return reduce(-a); }
    bool is_zero(const Rational& a) const { return a == 0; }
    BigInt norm(const Rational& a) const { return a == 0 ? 0 : 1; }
    std::pair<Rational, Rational> div_rem(const Rational& a, const Rational& b) const {
        return {mul(a, inverse(b)), Rational(0)};
    }
    Rational canonical_unit(const Rational& a) const { return inverse(a); }
    Rational unit_inverse(const Rational& u) const { return inverse(u); }
    Rational inverse(const Rational& a) const;

    // Image of an arbitrary rational in this field (denominator must be a
    // unit modulo p for prime fields).
    Rational reduce(const Rational& v) const;

private:
    CoefficientRing ring_;
    BigInt p_;
};

struct SmithForm {
    IntMatrix D;
    IntMatrix U;
    IntMatrix V;

    // Nonzero diagonal entries d1 | d2 | ... (all positive).
    std::vector<BigInt> divisors() const;
};

// U * A * V == D with U, V unimodular and D diagonal with the divisibility
// chain. Empty matrices are allowed.
SmithForm smith_normal_form(const IntMatrix& a);

// Elementary divisors only; cheaper than the full form since no transforms
// are accumulated.
std::vector<BigInt> elementary_divisors(const IntMatrix& a);

struct FieldReduction {
    std::size_t rank = 0;
    std::vector<std::vector<Rational>> kernel_basis;
    // Reduced row echelon form and the row transform T with T * A == rref.
    FieldMatrix rref;
    FieldMatrix transform;
    std::vector<std::size_t> pivot_columns;

    // Coordinates c with A[:, pivot_columns] * c == v for v in the column
    // space of A; std::nullopt when v is outside it.
    std::optional<std::vector<Rational>> pivot_coordinates(const std::vector<Rational>& v,
                                                           const FieldOps& ops) const;
};

// Throws RingMismatchError when `ring` is the integers.
FieldReduction field_reduce(const FieldMatrix& a, const CoefficientRing& ring);

FieldMatrix to_field(const IntMatrix& a, const FieldOps& ops);

struct ModulePiece {
    std::size_t free_rank = 0;
    std::vector<BigInt> torsion; // divisors > 1, ascending divisibility chain

    bool is_free() const { return torsion.empty(); }
    friend bool operator==(const ModulePiece&, const ModulePiece&) = default;
};

// Cokernel of the map R^cols -> R^rows whose images are the columns of `a`.
ModulePiece cokernel_decomposition(const IntMatrix& a, const CoefficientRing& ring);

std::string to_string(const ModulePiece& piece, const CoefficientRing& ring);

} // namespace reeb
