#pragma once

// Two-sided elimination over a Euclidean ring described by an Ops object
// (IntegerOps or FieldOps). Shared by the public Smith form, the residual
// complexes of the chain reducer and the oracle's cohomology bases.

#include <cstddef>
#include <optional>
#include <vector>

#include "reeb/coefficients.hpp"

namespace reeb::detail {

template <class Ops>
struct Decomposition {
    using T = typename Ops::value_type;

    Matrix<T> D;
    // U * A * V == D; the inverses are kept so that bases of images and
    // kernels come out without a separate inversion.
    Matrix<T> U, U_inv, V, V_inv;
    std::size_t rank = 0;
};

template <class Ops>
class Eliminator {
public:
    using T = typename Ops::value_type;

    Eliminator(Matrix<T> a, const Ops& ops, bool track)
        : ops_(ops), track_(track) {
        out_.D = std::move(a);
        if (track_) {
            out_.U = Matrix<T>::identity(out_.D.rows());
            out_.U_inv = out_.U;
            out_.V = Matrix<T>::identity(out_.D.cols());
            out_.V_inv = out_.V;
        }
    }

    Decomposition<Ops> run() {
        auto& d = out_.D;
        const std::size_t m = d.rows();
        const std::size_t n = d.cols();
        std::size_t t = 0;
        while (t < m && t < n) {
            auto pivot = find_pivot(t);
            if (!pivot) break;
            swap_rows(t, pivot->first);
            swap_cols(t, pivot->second);
            for (;;) {
                bool clean = true;
                for (std::size_t i = t + 1; i < m; ++i) {
                    if (ops_.is_zero(d(i, t))) continue;
                    auto [q, r] = ops_.div_rem(d(i, t), d(t, t));
                    add_row_multiple(i, t, ops_.neg(q));
                    if (!ops_.is_zero(r)) {
                        swap_rows(t, i);
                        clean = false;
                    }
                }
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (ops_.is_zero(d(t, j))) continue;
                    auto [q, r] = ops_.div_rem(d(t, j), d(t, t));
                    add_col_multiple(j, t, ops_.neg(q));
                    if (!ops_.is_zero(r)) {
                        swap_cols(t, j);
                        clean = false;
                    }
                }
                if (!clean) continue;
                // Divisibility chain: the pivot must divide the whole trailing block.
                std::optional<std::size_t> offender;
                for (std::size_t i = t + 1; i < m && !offender; ++i)
                    for (std::size_t j = t + 1; j < n; ++j) {
                        if (ops_.is_zero(d(i, j))) continue;
                        if (!ops_.is_zero(ops_.div_rem(d(i, j), d(t, t)).second)) {
                            offender = i;
                            break;
                        }
                    }
                if (!offender) break;
                add_row_multiple(t, *offender, ops_.one());
            }
            scale_row(t, ops_.canonical_unit(d(t, t)));
            ++t;
        }
        out_.rank = t;
        return std::move(out_);
    }

private:
    std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
        const auto& d = out_.D;
        std::optional<std::pair<std::size_t, std::size_t>> best;
        BigInt best_norm;
        for (std::size_t i = t; i < d.rows(); ++i)
            for (std::size_t j = t; j < d.cols(); ++j) {
                if (ops_.is_zero(d(i, j))) continue;
                BigInt nrm = ops_.norm(d(i, j));
                if (!best || nrm < best_norm) {
                    best = {i, j};
                    best_norm = nrm;
                    if (best_norm == 1) return best;
                }
            }
        return best;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        out_.D.swap_rows(a, b);
        if (track_) {
            out_.U.swap_rows(a, b);
            out_.U_inv.swap_cols(a, b);
        }
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        out_.D.swap_cols(a, b);
        if (track_) {
            out_.V.swap_cols(a, b);
            out_.V_inv.swap_rows(a, b);
        }
    }

    // row_dst += c * row_src
    void add_row_multiple(std::size_t dst, std::size_t src, const T& c) {
        if (ops_.is_zero(c)) return;
        row_axpy(out_.D, dst, src, c);
        if (track_) {
            row_axpy(out_.U, dst, src, c);
            col_axpy(out_.U_inv, src, dst, ops_.neg(c));
        }
    }

    // col_dst += c * col_src
    void add_col_multiple(std::size_t dst, std::size_t src, const T& c) {
        if (ops_.is_zero(c)) return;
        col_axpy(out_.D, dst, src, c);
        if (track_) {
            col_axpy(out_.V, dst, src, c);
            row_axpy(out_.V_inv, src, dst, ops_.neg(c));
        }
    }

    void scale_row(std::size_t r, const T& u) {
        if (u == ops_.one()) return;
        for (std::size_t c = 0; c < out_.D.cols(); ++c) out_.D(r, c) = ops_.mul(out_.D(r, c), u);
        if (track_) {
            for (std::size_t c = 0; c < out_.U.cols(); ++c) out_.U(r, c) = ops_.mul(out_.U(r, c), u);
            T inv = ops_.unit_inverse(u);
            for (std::size_t i = 0; i < out_.U_inv.rows(); ++i)
                out_.U_inv(i, r) = ops_.mul(out_.U_inv(i, r), inv);
        }
    }

    void row_axpy(Matrix<T>& m, std::size_t dst, std::size_t src, const T& c) const {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (ops_.is_zero(m(src, j))) continue;
            m(dst, j) = ops_.add(m(dst, j), ops_.mul(c, m(src, j)));
        }
    }

    void col_axpy(Matrix<T>& m, std::size_t dst, std::size_t src, const T& c) const {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (ops_.is_zero(m(i, src))) continue;
            m(i, dst) = ops_.add(m(i, dst), ops_.mul(c, m(i, src)));
        }
    }

    const Ops& ops_;
    bool track_;
    Decomposition<Ops> out_;
};

template <class Ops>
Decomposition<Ops> decompose(Matrix<typename Ops::value_type> a, const Ops& ops, bool track = true) {
    return Eliminator<Ops>(std::move(a), ops, track).run();
}

template <class Ops>
Matrix<typename Ops::value_type> multiply(const Matrix<typename Ops::value_type>& a,
                                          const Matrix<typename Ops::value_type>& b, const Ops& ops) {
    if (a.cols() != b.rows()) throw PreconditionError("matrix shape mismatch in multiply");
    Matrix<typename Ops::value_type> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (ops.is_zero(a(i, k))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (ops.is_zero(b(k, j))) continue;
                out(i, j) = ops.add(out(i, j), ops.mul(a(i, k), b(k, j)));
            }
        }
    return out;
}

} // namespace reeb::detail
