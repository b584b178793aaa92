#include <doctest.h>

#include <random>

#include "reeb/coefficients.hpp"
#include "reeb/errors.hpp"
#include "support/oracles.hpp"

using namespace reeb;
using oracle_support::determinantal_divisors;

namespace {

bool unimodular(const IntMatrix& m) {
    std::vector<std::vector<BigInt>> rows(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
    BigInt det = oracle_support::bareiss_determinant(rows);
    return det == 1 || det == -1;
}

bool diagonal_chain(const IntMatrix& d) {
    BigInt prev = 1;
    bool ended = false;
    for (std::size_t r = 0; r < d.rows(); ++r)
        for (std::size_t c = 0; c < d.cols(); ++c) {
            if (r != c && d(r, c) != 0) return false;
            if (r == c) {
                if (d(r, c) < 0) return false;
                if (d(r, c) == 0) {
                    ended = true;
                } else {
                    if (ended || d(r, c) % prev != 0) return false;
                    prev = d(r, c);
                }
            }
        }
    return true;
}

} // namespace

TEST_CASE("smith normal form examples") {
    CHECK(elementary_divisors(IntMatrix{{0}}).empty());
    CHECK(smith_normal_form(IntMatrix{{0}}).D == IntMatrix{{0}});
    CHECK(elementary_divisors(IntMatrix::identity(3)) == std::vector<BigInt>{1, 1, 1});
    IntMatrix a{{2, 4}, {-2, 6}};
    CHECK(elementary_divisors(a) == std::vector<BigInt>{2, 10});
    CHECK(determinantal_divisors(a) == std::vector<BigInt>{2, 10});
    CHECK(elementary_divisors(IntMatrix(0, 3)).empty());
}

TEST_CASE("smith normal form agrees with determinantal divisors") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        IntMatrix a = oracle_support::random_matrix(rng, rows, cols, 6);
        auto snf = smith_normal_form(a);
        CAPTURE(trial);
        CHECK(multiply(multiply(snf.U, a), snf.V) == snf.D);
        CHECK(unimodular(snf.U));
        CHECK(unimodular(snf.V));
        CHECK(diagonal_chain(snf.D));
        CHECK(snf.divisors() == determinantal_divisors(a));
        CHECK(elementary_divisors(a) == snf.divisors());
    }
}

TEST_CASE("elementary divisors of structured matrices") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t rows = 2 + rng() % 5, cols = 2 + rng() % 5, inner = 1 + rng() % 4;
        IntMatrix left = oracle_support::random_matrix(rng, rows, inner, 3);
        IntMatrix right = oracle_support::random_matrix(rng, inner, cols, 3);
        for (std::size_t k = 0; k < inner; ++k)
            for (std::size_t c = 0; c < cols; ++c) right(k, c) *= BigInt(1 + rng() % 6);
        IntMatrix a = multiply(left, right);
        CAPTURE(trial);
        CHECK(elementary_divisors(a) == determinantal_divisors(a));
    }
}

TEST_CASE("elementary divisors of a large dense matrix") {
    std::mt19937 rng(13);
    for (std::size_t size : {24, 32}) {
        IntMatrix a = oracle_support::random_matrix(rng, size, size, 50);
        std::vector<std::vector<BigInt>> rows(size, std::vector<BigInt>(size));
        for (std::size_t r = 0; r < size; ++r)
            for (std::size_t c = 0; c < size; ++c) rows[r][c] = a(r, c);
        BigInt det = boost::multiprecision::abs(oracle_support::bareiss_determinant(rows));
        REQUIRE(det != 0);
        auto divisors = elementary_divisors(a);
        REQUIRE(divisors.size() == size);
        BigInt product = 1;
        for (std::size_t i = 0; i < size; ++i) {
            product *= divisors[i];
            if (i > 0) CHECK(divisors[i] % divisors[i - 1] == 0);
        }
        CHECK(product == det);
    }
}

TEST_CASE("field reduction") {
    auto q = CoefficientRing::rationals();
    auto id = field_reduce(FieldMatrix::identity(2), q);
    CHECK(id.rank == 2);
    CHECK(id.kernel_basis.empty());

    auto r = field_reduce(FieldMatrix{{1, 2}, {2, 4}}, q);
    CHECK(r.rank == 1);
    REQUIRE(r.kernel_basis.size() == 1);
    const auto& k = r.kernel_basis[0];
    CHECK(k[0] == -2 * k[1]);
    CHECK(k[1] != 0);

    auto f2 = field_reduce(FieldMatrix{{1, 1}, {1, 1}}, CoefficientRing::prime_field(2));
    CHECK(f2.rank == 1);
    REQUIRE(f2.kernel_basis.size() == 1);
    CHECK(f2.kernel_basis[0] == std::vector<Rational>{1, 1});

    CHECK_THROWS_AS(field_reduce(FieldMatrix{{1}}, CoefficientRing::integers()), RingMismatchError);
}

TEST_CASE("field rank matches independent elimination") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
        IntMatrix a = oracle_support::random_matrix(rng, rows, cols, 4);
        for (std::int64_t p : {2, 3, 5}) {
            FieldOps ops(CoefficientRing::prime_field(p));
            CHECK(field_reduce(to_field(a, ops), ops.ring()).rank == oracle_support::rank_mod(a, p));
        }
        FieldOps qops(CoefficientRing::rationals());
        std::vector<std::vector<Rational>> dense(rows, std::vector<Rational>(cols));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) dense[i][j] = Rational(a(i, j));
        auto red = field_reduce(to_field(a, qops), qops.ring());
        CHECK(red.rank == oracle_support::rational_rank(dense));
        CHECK(red.kernel_basis.size() == cols - red.rank);
        for (const auto& v : red.kernel_basis)
            for (std::size_t i = 0; i < rows; ++i) {
                Rational s = 0;
                for (std::size_t j = 0; j < cols; ++j) s += Rational(a(i, j)) * v[j];
                CHECK(s == 0);
            }
    }
}

TEST_CASE("cokernel decomposition") {
    auto z = CoefficientRing::integers();
    auto zero = cokernel_decomposition(IntMatrix(2, 3), z);
    CHECK(zero.free_rank == 2);
    CHECK(zero.torsion.empty());
    auto two = cokernel_decomposition(IntMatrix{{2}}, z);
    CHECK(two.free_rank == 0);
    CHECK(two.torsion == std::vector<BigInt>{2});
    auto two_q = cokernel_decomposition(IntMatrix{{2}}, CoefficientRing::rationals());
    CHECK(two_q.free_rank == 0);
    CHECK(two_q.torsion.empty());
    auto two_f2 = cokernel_decomposition(IntMatrix{{2}}, CoefficientRing::prime_field(2));
    CHECK(two_f2.free_rank == 1);
}

TEST_CASE("cokernel torsion is the non-unit part of the divisors") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        IntMatrix a = oracle_support::random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, 5);
        auto divisors = determinantal_divisors(a);
        std::vector<BigInt> torsion;
        for (const auto& d : divisors)
            if (d > 1) torsion.push_back(d);
        auto piece = cokernel_decomposition(a, CoefficientRing::integers());
        CHECK(piece.torsion == torsion);
        CHECK(piece.free_rank == a.rows() - divisors.size());
    }
}

TEST_CASE("rings") {
    CHECK(parse_ring("Z") == CoefficientRing::integers());
    CHECK(parse_ring("Q") == CoefficientRing::rationals());
    CHECK(parse_ring("Z/3") == CoefficientRing::prime_field(3));
    CHECK(parse_ring("Zp", 5).name() == "Z/5");
    CHECK_THROWS_AS(parse_ring("Zp"), PreconditionError);
    CHECK_THROWS_AS(parse_ring("R"), PreconditionError);
    CHECK_THROWS_AS(CoefficientRing::prime_field(4), PreconditionError);

    FieldOps f5(CoefficientRing::prime_field(5));
    CHECK(f5.reduce(Rational(-1)) == 4);
    CHECK(f5.mul(f5.inverse(3), 3) == 1);
    CHECK(f5.reduce(Rational(1, 2)) == 3);
}
