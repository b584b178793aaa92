#include "reeb/chain_complex.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "reeb/detail/elimination.hpp"

namespace reeb {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("coefficient overflow in chain arithmetic");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("coefficient overflow in chain arithmetic");
    return r;
}

// x + s * y for sorted columns.
ChainColumn axpy(const ChainColumn& x, std::int64_t s, const ChainColumn& y) {
    ChainColumn out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, checked_mul(s, y[j].second));
            ++j;
        } else {
            std::int64_t v = checked_add(x[i].second, checked_mul(s, y[j].second));
            if (v != 0) out.emplace_back(x[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

std::int64_t coefficient(const ChainColumn& c, std::size_t row) {
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, std::size_t r) { return e.first < r; });
    return (it != c.end() && it->first == row) ? it->second : 0;
}

} // namespace

ChainColumn normalized_column(ChainColumn c) {
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ChainColumn out;
    for (const auto& [r, v] : c) {
        if (!out.empty() && out.back().first == r)
            out.back().second = checked_add(out.back().second, v);
        else
            out.emplace_back(r, v);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.second == 0; }), out.end());
    return out;
}

std::size_t ChainComplexZ::dim(int k) const {
    if (k < 0 || k > max_degree()) return 0;
    return cells_[static_cast<std::size_t>(k)].size();
}

std::size_t ChainComplexZ::add_cell(int k, ChainColumn boundary) {
    if (k < 0) throw PreconditionError("negative cell degree");
    if (k == 0 && !boundary.empty()) throw PreconditionError("0-cells have no boundary");
    if (static_cast<std::size_t>(k) >= cells_.size()) cells_.resize(static_cast<std::size_t>(k) + 1);
    auto& level = cells_[static_cast<std::size_t>(k)];
    level.push_back(normalized_column(std::move(boundary)));
    return level.size() - 1;
}

const ChainColumn& ChainComplexZ::boundary(int k, std::size_t cell) const {
    return cells_.at(static_cast<std::size_t>(k)).at(cell);
}

void ChainComplexZ::set_boundary(int k, std::size_t cell, ChainColumn boundary) {
    cells_.at(static_cast<std::size_t>(k)).at(cell) = normalized_column(std::move(boundary));
}

IntMatrix ChainComplexZ::boundary_matrix(int k) const {
    IntMatrix m(dim(k - 1), dim(k));
    if (k <= 0) return m;
    for (std::size_t c = 0; c < dim(k); ++c)
        for (const auto& [r, v] : boundary(k, c)) m(r, c) = v;
    return m;
}

bool ChainComplexZ::boundary_squared_zero() const {
    for (int k = 2; k <= max_degree(); ++k)
        for (std::size_t c = 0; c < dim(k); ++c) {
            ChainColumn acc;
            for (const auto& [r, v] : boundary(k, c)) acc = axpy(acc, v, boundary(k - 1, r));
            if (!acc.empty()) return false;
        }
    for (int k = 1; k <= max_degree(); ++k)
        for (std::size_t c = 0; c < dim(k); ++c)
            for (const auto& [r, v] : boundary(k, c))
                if (r >= dim(k - 1)) return false;
    return true;
}

long ChainComplexZ::euler_characteristic() const {
    long chi = 0;
    for (int k = 0; k <= max_degree(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<long>(dim(k));
    return chi;
}

ChainColumn ChainMap::image(int k, std::size_t cell) const {
    if (k < 0 || static_cast<std::size_t>(k) >= images.size() || cell >= images[static_cast<std::size_t>(k)].size())
        return {};
    return images[static_cast<std::size_t>(k)][cell];
}

bool is_chain_map(const ChainMap& f, const ChainComplexZ& source, const ChainComplexZ& target) {
    for (int k = 0; k <= source.max_degree(); ++k)
        for (std::size_t c = 0; c < source.dim(k); ++c) {
            for (const auto& [r, v] : f.image(k, c))
                if (r >= target.dim(k)) return false;
            if (k == 0) continue;
            ChainColumn lhs, rhs;
            for (const auto& [r, v] : f.image(k, c)) lhs = axpy(lhs, v, target.boundary(k, r));
            for (const auto& [r, v] : source.boundary(k, c)) rhs = axpy(rhs, v, f.image(k - 1, r));
            if (lhs != rhs) return false;
        }
    return true;
}

ChainComplexZ direct_sum(const ChainComplexZ& a, const ChainComplexZ& b) {
    ChainComplexZ out;
    const int top = std::max(a.max_degree(), b.max_degree());
    for (int k = 0; k <= top; ++k) {
        for (std::size_t c = 0; c < a.dim(k); ++c) out.add_cell(k, a.boundary(k, c));
        for (std::size_t c = 0; c < b.dim(k); ++c) {
            ChainColumn col;
            for (const auto& [r, v] : b.boundary(k, c)) col.emplace_back(r + a.dim(k - 1), v);
            out.add_cell(k, std::move(col));
        }
    }
    return out;
}

TensorProduct tensor_product(const ChainComplexZ& a, const ChainComplexZ& b) {
    TensorProduct out;
    const int top = a.max_degree() < 0 || b.max_degree() < 0 ? -1 : a.max_degree() + b.max_degree();
    for (int k = 0; k <= top; ++k) {
        std::size_t next = 0;
        for (int p = 0; p <= k; ++p)
            for (std::size_t i = 0; i < a.dim(p); ++i)
                for (std::size_t j = 0; j < b.dim(k - p); ++j) out.index[{p, i, k - p, j}] = next++;
    }
    for (int k = 0; k <= top; ++k) {
        for (int p = 0; p <= k; ++p) {
            const int q = k - p;
            const std::int64_t sign = p % 2 ? -1 : 1;
            for (std::size_t i = 0; i < a.dim(p); ++i)
                for (std::size_t j = 0; j < b.dim(q); ++j) {
                    ChainColumn col;
                    if (p > 0)
                        for (const auto& [r, v] : a.boundary(p, i)) col.emplace_back(out.index.at({p - 1, r, q, j}), v);
                    if (q > 0)
                        for (const auto& [r, v] : b.boundary(q, j))
                            col.emplace_back(out.index.at({p, i, q - 1, r}), sign * v);
                    out.complex.add_cell(k, std::move(col));
                }
        }
    }
    return out;
}

ChainComplexZ mapping_cone(const ChainMap& f, const ChainComplexZ& a, const ChainComplexZ& b) {
    if (!is_chain_map(f, a, b)) throw PreconditionError("mapping cone of a non-chain map");
    ChainComplexZ out;
    const int top = std::max(a.max_degree() + 1, b.max_degree());
    for (int k = 0; k <= top; ++k) {
        for (std::size_t c = 0; c < b.dim(k); ++c) out.add_cell(k, b.boundary(k, c));
        if (k == 0) continue;
        for (std::size_t c = 0; c < a.dim(k - 1); ++c) {
            ChainColumn col = f.image(k - 1, c);
            if (k - 1 > 0)
                for (const auto& [r, v] : a.boundary(k - 1, c)) col.emplace_back(b.dim(k - 1) + r, -v);
            out.add_cell(k, std::move(col));
        }
    }
    return out;
}

std::size_t cone_source_index(const ChainComplexZ& b, int k, std::size_t i) { return b.dim(k + 1) + i; }

ChainReduction::ChainReduction(const ChainComplexZ& c) : original_(c) {
    const int top = c.max_degree();
    const std::size_t levels = static_cast<std::size_t>(std::max(top, -1) + 1);
    std::vector<std::vector<ChainColumn>> bd(levels);
    std::vector<std::vector<std::set<std::size_t>>> cob(levels);
    std::vector<std::vector<char>> alive(levels);
    for (int k = 0; k <= top; ++k) {
        auto K = static_cast<std::size_t>(k);
        bd[K].resize(c.dim(k));
        cob[K].resize(c.dim(k));
        alive[K].assign(c.dim(k), 1);
        for (std::size_t x = 0; x < c.dim(k); ++x) bd[K][x] = c.boundary(k, x);
    }
    for (int k = 1; k <= top; ++k)
        for (std::size_t x = 0; x < c.dim(k); ++x)
            for (const auto& [r, v] : bd[static_cast<std::size_t>(k)][x]) cob[static_cast<std::size_t>(k - 1)][r].insert(x);

    auto eliminate = [&](int k, std::size_t a, std::size_t b) {
        auto K = static_cast<std::size_t>(k);
        Cancellation rec{k, a, b, coefficient(bd[K][b], a), {}, {}};
        for (const auto& e : bd[K][b])
            if (e.first != a) rec.boundary_rest.push_back(e);
        for (std::size_t x : cob[K - 1][a])
            if (x != b) rec.coboundary_rest.emplace_back(x, coefficient(bd[K][x], a));

        const ChainColumn db = bd[K][b];
        for (const auto& [x, cx] : rec.coboundary_rest) {
            ChainColumn updated = axpy(bd[K][x], -checked_mul(cx, rec.eps), db);
            for (const auto& [r, v] : db) {
                bool before = coefficient(bd[K][x], r) != 0;
                bool after = coefficient(updated, r) != 0;
                if (before && !after) cob[K - 1][r].erase(x);
                if (!before && after) cob[K - 1][r].insert(x);
            }
            bd[K][x] = std::move(updated);
        }
        for (const auto& [r, v] : db) cob[K - 1][r].erase(b);
        if (K + 1 < levels)
            for (std::size_t y : cob[K][b]) {
                auto& col = bd[K + 1][y];
                col.erase(std::remove_if(col.begin(), col.end(), [&](const auto& e) { return e.first == b; }),
                          col.end());
            }
        cob[K][b].clear();
        bd[K][b].clear();
        if (K >= 2)
            for (const auto& [r, v] : bd[K - 1][a]) cob[K - 2][r].erase(a);
        bd[K - 1][a].clear();
        cob[K - 1][a].clear();
        alive[K][b] = 0;
        alive[K - 1][a] = 0;
        log_.push_back(std::move(rec));
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 1; k <= top; ++k) {
            auto K = static_cast<std::size_t>(k);
            for (std::size_t b = 0; b < bd[K].size(); ++b) {
                if (!alive[K][b]) continue;
                std::size_t best = SIZE_MAX, best_cost = SIZE_MAX;
                for (const auto& [r, v] : bd[K][b]) {
                    if (v != 1 && v != -1) continue;
                    std::size_t cost = cob[K - 1][r].size();
                    if (cost < best_cost) {
                        best = r;
                        best_cost = cost;
                    }
                }
                if (best == SIZE_MAX) continue;
                eliminate(k, best, b);
                changed = true;
            }
        }
    }

    survivors_.resize(levels);
    std::vector<std::vector<std::size_t>> position(levels);
    for (std::size_t K = 0; K < levels; ++K) {
        position[K].assign(bd[K].size(), SIZE_MAX);
        for (std::size_t x = 0; x < bd[K].size(); ++x)
            if (alive[K][x]) {
                position[K][x] = survivors_[K].size();
                survivors_[K].push_back(x);
            }
    }
    for (std::size_t K = 0; K < levels; ++K)
        for (std::size_t x : survivors_[K]) {
            ChainColumn col;
            for (const auto& [r, v] : bd[K][x]) col.emplace_back(position[K - 1][r], v);
            residual_.add_cell(static_cast<int>(K), std::move(col));
        }
}

std::vector<Rational> ChainReduction::lift_cycle(int k, const std::vector<Rational>& residual_cycle) const {
    const auto K = static_cast<std::size_t>(k);
    std::vector<Rational> z(original_.dim(k), Rational(0));
    for (std::size_t i = 0; i < residual_cycle.size(); ++i) z[survivors_.at(K)[i]] = residual_cycle[i];
    for (auto it = log_.rbegin(); it != log_.rend(); ++it) {
        if (it->k != k) continue;
        Rational s = 0;
        for (const auto& [x, c] : it->coboundary_rest)
            if (z[x] != 0) s += z[x] * c;
        z[it->b] = -s * it->eps;
    }
    return z;
}

std::vector<Rational> ChainReduction::pull_cocycle(int k, const std::vector<Rational>& residual_cocycle) const {
    const auto K = static_cast<std::size_t>(k);
    std::vector<Rational> phi(original_.dim(k), Rational(0));
    for (std::size_t i = 0; i < residual_cocycle.size(); ++i) phi[survivors_.at(K)[i]] = residual_cocycle[i];
    for (auto it = log_.rbegin(); it != log_.rend(); ++it) {
        if (it->k - 1 != k) continue;
        Rational s = 0;
        for (const auto& [r, c] : it->boundary_rest)
            if (phi[r] != 0) s += phi[r] * c;
        phi[it->a] = -s * it->eps;
    }
    return phi;
}

namespace {

// Ranks and torsion of the residual complex in every degree.
GradedModule residual_homology(const ChainComplexZ& c, int top, const CoefficientRing& ring) {
    GradedModule out;
    out.resize(top);
    std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 2, 0);
    std::vector<std::vector<BigInt>> divisors(static_cast<std::size_t>(top) + 2);
    for (int k = 1; k <= top; ++k) {
        IntMatrix m = c.boundary_matrix(k);
        if (m.empty()) continue;
        auto K = static_cast<std::size_t>(k);
        if (ring.is_field()) {
            FieldOps ops(ring);
            rank[K] = detail::decompose(to_field(m, ops), ops, false).rank;
        } else {
            divisors[K] = elementary_divisors(m);
            rank[K] = divisors[K].size();
        }
    }
    for (int k = 0; k <= top; ++k) {
        auto K = static_cast<std::size_t>(k);
        ModulePiece p;
        p.free_rank = c.dim(k) - rank[K] - rank[K + 1];
        for (const auto& d : divisors[K + 1])
            if (d > 1) p.torsion.push_back(d);
        out[k] = p;
    }
    return out;
}

template <class Ops>
HomologyBasis residual_basis(const ChainComplexZ& c, int k, const Ops& ops) {
    using T = typename Ops::value_type;
    auto convert = [&](const IntMatrix& m) {
        Matrix<T> out(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ops.from_int(m(i, j));
        return out;
    };
    HomologyBasis hb;
    hb.degree = k;
    const std::size_t nk = c.dim(k);
    if (nk == 0) return hb;

    Matrix<T> a = convert(c.boundary_matrix(k + 1)); // nk x n_{k+1}
    if (a.rows() != nk) a = Matrix<T>(nk, 0);
    auto dec = detail::decompose(a, ops, true);
    const std::size_t r = dec.rank;
    const Matrix<T>& P = dec.U_inv;
    const Matrix<T>& U = dec.U;

    Matrix<T> pc(nk, nk - r);
    for (std::size_t i = 0; i < nk; ++i)
        for (std::size_t j = r; j < nk; ++j) pc(i, j - r) = P(i, j);

    Matrix<T> dk = convert(c.boundary_matrix(k)); // n_{k-1} x nk
    Matrix<T> m = detail::multiply(dk, pc, ops);
    auto dec2 = detail::decompose(m, ops, true);
    const std::size_t r2 = dec2.rank;
    const std::size_t f = nk - r - r2;

    if constexpr (std::is_same_v<T, BigInt>)
        for (std::size_t t = 0; t < r; ++t)
            if (ops.norm(dec.D(t, t)) > 1) hb.piece.torsion.push_back(ops.norm(dec.D(t, t)));
    hb.piece.free_rank = f;

    for (std::size_t j = 0; j < f; ++j) {
        std::vector<Rational> z(nk, Rational(0));
        for (std::size_t i = 0; i < nk; ++i) {
            T acc = ops.zero();
            for (std::size_t t = 0; t < nk - r; ++t)
                if (!ops.is_zero(pc(i, t)) && !ops.is_zero(dec2.V(t, r2 + j)))
                    acc = ops.add(acc, ops.mul(pc(i, t), dec2.V(t, r2 + j)));
            z[i] = Rational(acc);
        }
        hb.cycles.push_back(std::move(z));
    }
    for (std::size_t i = 0; i < f; ++i) {
        std::vector<Rational> phi(nk, Rational(0));
        for (std::size_t col = 0; col < nk; ++col) {
            T acc = ops.zero();
            for (std::size_t t = 0; t < nk - r; ++t)
                if (!ops.is_zero(dec2.V_inv(r2 + i, t)) && !ops.is_zero(U(r + t, col)))
                    acc = ops.add(acc, ops.mul(dec2.V_inv(r2 + i, t), U(r + t, col)));
            phi[col] = Rational(acc);
        }
        hb.cocycles.push_back(std::move(phi));
    }
    return hb;
}

} // namespace

GradedModule homology(const ChainReduction& red, const CoefficientRing& ring) {
    return residual_homology(red.residual(), red.original().max_degree(), ring);
}

GradedModule homology(const ChainComplexZ& c, const CoefficientRing& ring) {
    return homology(ChainReduction(c), ring);
}

std::vector<HomologyBasis> homology_bases(const ChainReduction& red, const CoefficientRing& ring) {
    std::vector<HomologyBasis> out;
    const int top = red.original().max_degree();
    for (int k = 0; k <= top; ++k) {
        HomologyBasis hb = ring.is_field() ? residual_basis(red.residual(), k, FieldOps(ring))
                                           : residual_basis(red.residual(), k, IntegerOps{});
        hb.degree = k;
        for (auto& z : hb.cycles) z = red.lift_cycle(k, z);
        for (auto& phi : hb.cocycles) phi = red.pull_cocycle(k, phi);
        out.push_back(std::move(hb));
    }
    return out;
}

} // namespace reeb
