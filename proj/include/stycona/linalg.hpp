// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stycona/errors.hpp"

namespace stycona {

/// Dense row-major matrix of doubles. All numerical kernels in the library
/// work in 64-bit precision even though images are stored as 32-bit floats.
class Matrix {
public:
    Matrix() = default;

    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(check_dims(rows, cols), 0.0) {}

    Matrix(int rows, int cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != check_dims(rows, cols)) {
            throw InvalidInput("Matrix: data length does not match rows*cols");
        }
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    size_t size() const { return data_.size(); }

    const std::vector<double>& values() const { return data_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool all_finite() const;
    double frobenius_norm() const;
    double max_abs_diff(const Matrix& other) const;

private:
    static size_t check_dims(int rows, int cols) {
        if (rows < 1 || cols < 1) throw InvalidInput("Matrix: dimensions must be positive");
        return static_cast<size_t>(rows) * static_cast<size_t>(cols);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Singular value decomposition of a rows x cols matrix, thin form with
/// k = min(rows, cols) factors.
///
/// Invariants maintained by svd():
///  - sigma is non-increasing and non-negative
///  - u (rows x k) and v (cols x k) have orthonormal columns
///  - per column, the largest-magnitude entry of u is non-negative
///    (ties broken by lowest row index), fixing the sign indeterminacy
struct SvdFactors {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;

    int rows() const { return u.rows(); }
    int cols() const { return v.rows(); }
    int k() const { return static_cast<int>(sigma.size()); }
};

/// Relative threshold under which a singular value counts as zero.
inline constexpr double kRankTolerance = 1e-10;

/// One-sided Jacobi SVD. Deterministic: identical input bytes produce
/// identical factor bytes. Throws InvalidInput for non-finite input and
/// NumericalFailure if the sweep cap (100) is exceeded.
SvdFactors svd(const Matrix& m);

/// Sum of sigma[r] * u[:,r] v[:,r]^T over all factors.
Matrix reconstruct(const SvdFactors& f);

/// Unscaled outer product u[:,r] v[:,r]^T of one singular-vector pair.
Matrix rank_one(const SvdFactors& f, int r);

/// Count of singular values above kRankTolerance * sigma[0].
int numerical_rank(std::span<const double> sigma);

}  // namespace stycona
