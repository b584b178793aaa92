#include "reeb/coefficients.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "reeb/detail/elimination.hpp"

namespace reeb {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

CoefficientRing CoefficientRing::prime_field(std::int64_t p) {
    if (!is_prime(p)) throw PreconditionError("prime field modulus " + std::to_string(p) + " is not prime");
    return CoefficientRing(Kind::PrimeField, p);
}

std::string CoefficientRing::name() const {
    switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "Z/" + std::to_string(*p_);
    }
    return "?";
}

CoefficientRing parse_ring(const std::string& text, std::optional<std::int64_t> p) {
    if (text == "Z") return CoefficientRing::integers();
    if (text == "Q") return CoefficientRing::rationals();
    if (text == "Zp") {
        if (!p) throw PreconditionError("ring Zp needs a prime modulus");
        return CoefficientRing::prime_field(*p);
    }
    if (text.rfind("Z/", 0) == 0 && text.size() > 2) {
        std::int64_t q = 0;
        try {
            std::size_t used = 0;
            q = std::stoll(text.substr(2), &used);
            if (used != text.size() - 2) throw std::invalid_argument(text);
        } catch (const std::exception&) {
            throw PreconditionError("unknown ring '" + text + "'");
        }
        return CoefficientRing::prime_field(q);
    }
    throw PreconditionError("unknown ring '" + text + "'");
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) { return detail::multiply(a, b, IntegerOps{}); }

namespace {

BigInt mod_floor(const BigInt& a, const BigInt& p) {
    BigInt r = a % p;
    if (r < 0) r += p;
    return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& p) {
    BigInt old_r = mod_floor(a, p), r = p;
    BigInt old_s = 1, s = 0;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw PreconditionError("element is not invertible modulo p");
    return mod_floor(old_s, p);
}

} // namespace

FieldOps::FieldOps(CoefficientRing ring) : ring_(ring) {
    if (!ring_.is_field()) throw RingMismatchError("field arithmetic requested over " + ring_.name());
    if (ring_.kind() == CoefficientRing::Kind::PrimeField) p_ = *ring_.modulus();
}

Rational FieldOps::reduce(const Rational& v) const {
    if (ring_.kind() == CoefficientRing::Kind::Rationals) return v;
    BigInt num = mod_floor(boost::multiprecision::numerator(v), p_);
    BigInt den = boost::multiprecision::denominator(v);
    if (den == 1) return Rational(num);
    return Rational(mod_floor(num * mod_inverse(den, p_), p_));
}

Rational FieldOps::inverse(const Rational& a) const {
    if (a == 0) throw PreconditionError("division by zero in " + ring_.name());
    if (ring_.kind() == CoefficientRing::Kind::Rationals) return 1 / a;
    return Rational(mod_inverse(boost::multiprecision::numerator(reduce(a)), p_));
}

std::vector<BigInt> SmithForm::divisors() const {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
        if (D(i, i) != 0) out.push_back(D(i, i));
    return out;
}

SmithForm smith_normal_form(const IntMatrix& a) {
    auto dec = detail::decompose(a, IntegerOps{}, true);
    return SmithForm{std::move(dec.D), std::move(dec.U), std::move(dec.V)};
}

namespace {

// Rank and |det| of one nonsingular rank x rank minor. Fraction-free
// elimination with full pivoting keeps every entry a minor of the input.
std::pair<std::size_t, BigInt> rank_and_minor(IntMatrix m) {
    BigInt prev = 1;
    std::size_t k = 0;
    for (; k < m.rows() && k < m.cols(); ++k) {
        std::optional<std::pair<std::size_t, std::size_t>> pivot;
        for (std::size_t i = k; i < m.rows() && !pivot; ++i)
            for (std::size_t j = k; j < m.cols(); ++j)
                if (m(i, j) != 0) {
                    pivot = {i, j};
                    break;
                }
        if (!pivot) break;
        m.swap_rows(k, pivot->first);
        m.swap_cols(k, pivot->second);
        for (std::size_t i = k + 1; i < m.rows(); ++i)
            for (std::size_t j = k + 1; j < m.cols(); ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return {k, boost::multiprecision::abs(prev)};
}

// g = gcd(a, b) = x a + y b, with (x, y) = (1, 0) when a divides b.
void extended_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& x, BigInt& y) {
    if (a != 0 && b % a == 0) {
        g = a;
        x = 1;
        y = 0;
        return;
    }
    BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    g = old_r;
    x = old_s;
    y = old_t;
}

// Invariant factors of a rank-r matrix all divide delta, so elimination can
// run on residues modulo delta.
std::vector<BigInt> divisors_modulo(IntMatrix m, std::size_t rank, const BigInt& delta) {
    if (delta == 1) return std::vector<BigInt>(rank, BigInt(1));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_floor(m(i, j), delta);

    // Rows (or columns, through `transpose`) t and i replaced by a unimodular
    // combination that clears the entry at (i, t).
    auto combine = [&](std::size_t t, std::size_t i, bool columns) {
        auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return columns ? m(c, r) : m(r, c); };
        const std::size_t len = columns ? m.rows() : m.cols();
        BigInt a = at(t, t), b = at(i, t), g, x, y;
        extended_gcd(a, b, g, x, y);
        BigInt u = -b / g, v = a / g;
        for (std::size_t j = 0; j < len; ++j) {
            BigInt p = at(t, j), q = at(i, j);
            if (p == 0 && q == 0) continue;
            at(t, j) = mod_floor(x * p + y * q, delta);
            at(i, j) = mod_floor(u * p + v * q, delta);
        }
    };

    std::vector<BigInt> diag;
    const std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < n; ++t) {
        std::optional<std::pair<std::size_t, std::size_t>> pivot;
        for (std::size_t i = t; i < m.rows() && !pivot; ++i)
            for (std::size_t j = t; j < m.cols(); ++j)
                if (m(i, j) != 0) {
                    pivot = {i, j};
                    break;
                }
        if (!pivot) break;
        m.swap_rows(t, pivot->first);
        m.swap_cols(t, pivot->second);
        for (bool dirty = true; dirty;) {
            dirty = false;
            for (std::size_t i = t + 1; i < m.rows(); ++i)
                if (m(i, t) != 0) combine(t, i, false);
            for (std::size_t j = t + 1; j < m.cols(); ++j)
                if (m(t, j) != 0) combine(t, j, true);
            for (std::size_t i = t + 1; i < m.rows(); ++i) dirty = dirty || m(i, t) != 0;
        }
        diag.push_back(boost::multiprecision::gcd(m(t, t), delta));
    }
    diag.resize(n, delta);
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            BigInt g = boost::multiprecision::gcd(diag[i], diag[j]);
            BigInt l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    diag.resize(rank);
    return diag;
}

} // namespace

std::vector<BigInt> elementary_divisors(const IntMatrix& a) {
    auto [rank, delta] = rank_and_minor(a);
    if (rank == 0) return {};
    return divisors_modulo(a, rank, delta);
}

FieldMatrix to_field(const IntMatrix& a, const FieldOps& ops) {
    FieldMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = ops.from_int(a(i, j));
    return out;
}

FieldReduction field_reduce(const FieldMatrix& a, const CoefficientRing& ring) {
    if (!ring.is_field())
        throw RingMismatchError("field_reduce needs a field; got " + ring.name());
    FieldOps ops(ring);
    FieldReduction red;
    red.rref = FieldMatrix(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) red.rref(i, j) = ops.reduce(a(i, j));
    red.transform = FieldMatrix::identity(a.rows());
    auto& m = red.rref;
    auto& t = red.transform;

    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && m(pr, col) == 0) ++pr;
        if (pr == m.rows()) continue;
        m.swap_rows(row, pr);
        t.swap_rows(row, pr);
        Rational inv = ops.inverse(m(row, col));
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = ops.mul(m(row, j), inv);
        for (std::size_t j = 0; j < t.cols(); ++j) t(row, j) = ops.mul(t(row, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rational f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(row, j) != 0) m(i, j) = ops.sub(m(i, j), ops.mul(f, m(row, j)));
            for (std::size_t j = 0; j < t.cols(); ++j)
                if (t(row, j) != 0) t(i, j) = ops.sub(t(i, j), ops.mul(f, t(row, j)));
        }
        red.pivot_columns.push_back(col);
        ++row;
    }
    red.rank = red.pivot_columns.size();

    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : red.pivot_columns) is_pivot[c] = true;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < red.rank; ++r) v[red.pivot_columns[r]] = ops.neg(m(r, free));
        red.kernel_basis.push_back(std::move(v));
    }
    return red;
}

std::optional<std::vector<Rational>> FieldReduction::pivot_coordinates(const std::vector<Rational>& v,
                                                                       const FieldOps& ops) const {
    if (v.size() != transform.cols()) throw PreconditionError("vector length does not match matrix rows");
    std::vector<Rational> tv(transform.rows(), Rational(0));
    for (std::size_t i = 0; i < transform.rows(); ++i)
        for (std::size_t j = 0; j < transform.cols(); ++j)
            if (transform(i, j) != 0 && v[j] != 0) tv[i] = ops.add(tv[i], ops.mul(transform(i, j), ops.reduce(v[j])));
    for (std::size_t i = rank; i < tv.size(); ++i)
        if (tv[i] != 0) return std::nullopt;
    tv.resize(rank);
    return tv;
}

ModulePiece cokernel_decomposition(const IntMatrix& a, const CoefficientRing& ring) {
    ModulePiece piece;
    if (ring.is_field()) {
        auto red = field_reduce(to_field(a, FieldOps(ring)), ring);
        piece.free_rank = a.rows() - red.rank;
        return piece;
    }
    auto divs = elementary_divisors(a);
    piece.free_rank = a.rows() - divs.size();
    for (const auto& d : divs)
        if (d > 1) piece.torsion.push_back(d);
    return piece;
}

std::string to_string(const ModulePiece& piece, const CoefficientRing& ring) {
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    if (piece.free_rank > 0) {
        sep();
        os << ring.name();
        if (piece.free_rank > 1) os << "^" << piece.free_rank;
    }
    for (const auto& t : piece.torsion) {
        sep();
        os << ring.name() << "/" << t;
    }
    if (first) os << "0";
    return os.str();
}

} // namespace reeb
