// Copyright 2026 The StyCona Authors
// SPDX-License-Identifier: Apache-2.0

#include "stycona/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stycona {

bool Matrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

double Matrix::frobenius_norm() const {
    double acc = 0.0;
    for (double v : data_) acc += v * v;
    return std::sqrt(acc);
}

double Matrix::max_abs_diff(const Matrix& other) const {
    if (!same_shape(other)) throw InvalidInput("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (size_t i = 0; i < data_.size(); ++i) {
        m = std::max(m, std::abs(data_[i] - other.data_[i]));
    }
    return m;
}

namespace {

constexpr double kJacobiTol = 1e-12;
constexpr int kMaxSweeps = 100;

// Orthogonalizes the columns of a p x q (p >= q) column-major working copy
// by plane rotations while accumulating the right rotations into v (q x q,
// column-major, starts as identity). Returns false if the sweep cap is hit.
bool jacobi_orthogonalize(std::vector<double>& w, std::vector<double>& v, int p, int q) {
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool converged = true;
        for (int i = 0; i < q - 1; ++i) {
            for (int j = i + 1; j < q; ++j) {
                double* ci = &w[static_cast<size_t>(i) * p];
                double* cj = &w[static_cast<size_t>(j) * p];
                double aii = 0.0, ajj = 0.0, aij = 0.0;
                for (int r = 0; r < p; ++r) {
                    aii += ci[r] * ci[r];
                    ajj += cj[r] * cj[r];
                    aij += ci[r] * cj[r];
                }
                // Exactly-zero columns keep aij == 0 and stay untouched.
                if (std::abs(aij) <= kJacobiTol * std::sqrt(aii * ajj)) continue;
                converged = false;

                const double zeta = (ajj - aii) / (2.0 * aij);
                const double t =
                    std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;

                for (int r = 0; r < p; ++r) {
                    const double x = ci[r], y = cj[r];
                    ci[r] = cs * x - sn * y;
                    cj[r] = sn * x + cs * y;
                }
                double* vi = &v[static_cast<size_t>(i) * q];
                double* vj = &v[static_cast<size_t>(j) * q];
                for (int r = 0; r < q; ++r) {
                    const double x = vi[r], y = vj[r];
                    vi[r] = cs * x - sn * y;
                    vj[r] = sn * x + cs * y;
                }
            }
        }
        if (converged) return true;
    }
    return false;
}

// Replaces exactly-zero columns of the column-major p x q matrix u (whose
// non-zero columns are orthonormal) with an orthonormal completion. Columns
// are processed left to right, so zero columns (sorted to the back) only need
// to orthogonalize against columns before them.
void complete_orthonormal_basis(std::vector<double>& u, int p, int q,
                                const std::vector<double>& sigma) {
    std::vector<double> work(p);
    for (int c = 0; c < q; ++c) {
        if (sigma[c] != 0.0) continue;
        // Pick the canonical basis vector with the largest residual after
        // projecting out the columns already in place.
        int best = 0;
        double best_res = -1.0;
        for (int cand = 0; cand < p; ++cand) {
            double proj = 0.0;
            for (int r = 0; r < c; ++r) {
                const double e = u[static_cast<size_t>(r) * p + cand];
                proj += e * e;
            }
            const double res = 1.0 - proj;
            if (res > best_res) {
                best_res = res;
                best = cand;
            }
        }
        std::fill(work.begin(), work.end(), 0.0);
        work[best] = 1.0;
        // Two Gram-Schmidt passes keep the residual orthogonal to 1e-15 even
        // when the best canonical vector is nearly inside the current span.
        for (int pass = 0; pass < 2; ++pass) {
            for (int r = 0; r < c; ++r) {
                const double* col = &u[static_cast<size_t>(r) * p];
                double dot = 0.0;
                for (int x = 0; x < p; ++x) dot += col[x] * work[x];
                for (int x = 0; x < p; ++x) work[x] -= dot * col[x];
            }
        }
        double nrm = 0.0;
        for (int x = 0; x < p; ++x) nrm += work[x] * work[x];
        nrm = std::sqrt(nrm);
        double* dst = &u[static_cast<size_t>(c) * p];
        for (int x = 0; x < p; ++x) dst[x] = work[x] / nrm;
    }
}

}  // namespace

SvdFactors svd(const Matrix& m) {
    if (!m.all_finite()) throw InvalidInput("svd: input has non-finite entries");

    const bool transposed = m.rows() < m.cols();
    const int p = transposed ? m.cols() : m.rows();
    const int q = transposed ? m.rows() : m.cols();

    // Column-major working copy of the tall orientation.
    std::vector<double> w(static_cast<size_t>(p) * q);
    for (int c = 0; c < q; ++c) {
        for (int r = 0; r < p; ++r) {
            w[static_cast<size_t>(c) * p + r] = transposed ? m(c, r) : m(r, c);
        }
    }
    std::vector<double> vrot(static_cast<size_t>(q) * q, 0.0);
    for (int c = 0; c < q; ++c) vrot[static_cast<size_t>(c) * q + c] = 1.0;

    if (!jacobi_orthogonalize(w, vrot, p, q)) {
        throw NumericalFailure("svd: Jacobi did not converge within 100 sweeps");
    }

    // Column norms are the singular values; normalized columns are the
    // left factors of the tall orientation.
    std::vector<double> sigma(q);
    for (int c = 0; c < q; ++c) {
        double* col = &w[static_cast<size_t>(c) * p];
        double nrm = 0.0;
        for (int r = 0; r < p; ++r) nrm += col[r] * col[r];
        nrm = std::sqrt(nrm);
        sigma[c] = nrm;
        if (nrm > 0.0) {
            for (int r = 0; r < p; ++r) col[r] /= nrm;
        }
    }

    // Sort non-increasing, stably, and permute the factor columns along.
    std::vector<int> order(q);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&sigma](int a, int b) { return sigma[a] > sigma[b]; });

    std::vector<double> sorted_sigma(q);
    std::vector<double> sorted_w(w.size());
    std::vector<double> sorted_v(vrot.size());
    for (int c = 0; c < q; ++c) {
        sorted_sigma[c] = sigma[order[c]];
        std::copy_n(&w[static_cast<size_t>(order[c]) * p], p, &sorted_w[static_cast<size_t>(c) * p]);
        std::copy_n(&vrot[static_cast<size_t>(order[c]) * q], q,
                    &sorted_v[static_cast<size_t>(c) * q]);
    }

    // Rank-deficient inputs leave exactly-zero columns; fill them with an
    // orthonormal completion so u always has orthonormal columns.
    complete_orthonormal_basis(sorted_w, p, q, sorted_sigma);

    SvdFactors f;
    f.sigma = std::move(sorted_sigma);
    if (!transposed) {
        f.u = Matrix(p, q);
        f.v = Matrix(q, q);
        for (int c = 0; c < q; ++c) {
            for (int r = 0; r < p; ++r) f.u(r, c) = sorted_w[static_cast<size_t>(c) * p + r];
            for (int r = 0; r < q; ++r) f.v(r, c) = sorted_v[static_cast<size_t>(c) * q + r];
        }
    } else {
        f.u = Matrix(q, q);
        f.v = Matrix(p, q);
        for (int c = 0; c < q; ++c) {
            for (int r = 0; r < q; ++r) f.u(r, c) = sorted_v[static_cast<size_t>(c) * q + r];
            for (int r = 0; r < p; ++r) f.v(r, c) = sorted_w[static_cast<size_t>(c) * p + r];
        }
    }

    // Sign convention: the largest-magnitude entry of each left vector is
    // non-negative, ties broken by lowest row index.
    const int rows = f.u.rows();
    const int cols = f.v.rows();
    const int k = f.k();
    for (int c = 0; c < k; ++c) {
        int imax = 0;
        double vmax = std::abs(f.u(0, c));
        for (int r = 1; r < rows; ++r) {
            const double av = std::abs(f.u(r, c));
            if (av > vmax) {
                vmax = av;
                imax = r;
            }
        }
        if (f.u(imax, c) < 0.0) {
            for (int r = 0; r < rows; ++r) f.u(r, c) = -f.u(r, c);
            for (int r = 0; r < cols; ++r) f.v(r, c) = -f.v(r, c);
        }
    }
    return f;
}

Matrix reconstruct(const SvdFactors& f) {
    const int k = f.k();
    if (f.u.cols() != k || f.v.cols() != k) {
        throw InvalidInput("reconstruct: factor dimensions inconsistent");
    }
    const int rows = f.u.rows();
    const int cols = f.v.rows();
    Matrix out(rows, cols);
    for (int r = 0; r < k; ++r) {
        const double s = f.sigma[r];
        if (s == 0.0) continue;
        for (int i = 0; i < rows; ++i) {
            const double ui = s * f.u(i, r);
            double* row = &out.data()[static_cast<size_t>(i) * cols];
            for (int j = 0; j < cols; ++j) row[j] += ui * f.v(j, r);
        }
    }
    return out;
}

Matrix rank_one(const SvdFactors& f, int r) {
    if (r < 0 || r >= f.k()) throw InvalidInput("rank_one: index out of range");
    const int rows = f.u.rows();
    const int cols = f.v.rows();
    Matrix out(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const double ui = f.u(i, r);
        double* row = &out.data()[static_cast<size_t>(i) * cols];
        for (int j = 0; j < cols; ++j) row[j] = ui * f.v(j, r);
    }
    return out;
}

int numerical_rank(std::span<const double> sigma) {
    if (sigma.empty()) return 0;
    const double cutoff = kRankTolerance * sigma[0];
    int rank = 0;
    for (double s : sigma) {
        if (s > cutoff) ++rank;
    }
    return rank;
}

}  // namespace stycona
