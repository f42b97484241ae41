#pragma once

#include "hyper_ricci/scalar.hpp"

#include <cassert>
#include <optional>
#include <utility>
#include <vector>

namespace hyper_ricci {

/// Row-major dense matrix over double or Rational. Eigen covers the
/// double-only paths; this exists so exact code shares one implementation.
template <class S>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, const S& fill = S(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<S> data_;
};

/// Solves A x = b by Gaussian elimination. Partial pivoting for double, first
/// nonzero pivot for exact scalars. Returns nullopt when a pivot is at most
/// `singular_tol` in magnitude (0 for exact arithmetic).
template <class S>
std::optional<std::vector<S>> solve_linear(DenseMatrix<S> a, std::vector<S> b, const S& singular_tol = S(0)) {
    const std::size_t n = a.rows();
    assert(a.cols() == n && b.size() == n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        if constexpr (ScalarTraits<S>::exact) {
            while (pivot < n && a(pivot, col) == 0) ++pivot;
            if (pivot == n) return std::nullopt;
        } else {
            for (std::size_t r = col + 1; r < n; ++r)
                if (abs_of(a(r, col)) > abs_of(a(pivot, col))) pivot = r;
            if (abs_of(a(pivot, col)) <= singular_tol) return std::nullopt;
        }
        a.swap_rows(col, pivot);
        std::swap(b[col], b[pivot]);
        const S inv = S(1) / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a(r, col) == S(0)) continue;
            const S factor = a(r, col) * inv;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
            b[r] -= factor * b[col];
        }
    }
    std::vector<S> x(n);
    for (std::size_t i = n; i-- > 0;) {
        S acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= a(i, c) * x[c];
        x[i] = acc / a(i, i);
    }
    return x;
}

/// Inverse via n solves; nullopt when singular.
template <class S>
std::optional<DenseMatrix<S>> invert(const DenseMatrix<S>& a, const S& singular_tol = S(0)) {
    const std::size_t n = a.rows();
    DenseMatrix<S> inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<S> e(n, S(0));
        e[c] = S(1);
        auto col = solve_linear(a, std::move(e), singular_tol);
        if (!col) return std::nullopt;
        for (std::size_t r = 0; r < n; ++r) inv(r, c) = (*col)[r];
    }
    return inv;
}

}  // namespace hyper_ricci
