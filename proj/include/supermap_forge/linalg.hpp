// Copyright 2026 The supermap-forge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file linalg.hpp
 * Dense complex linear-algebra helpers shared by every module.
 *
 * Tensor products are always in the standard (Kronecker) basis: for
 * C^{d1} (x) C^{d2} the basis vector |p> (x) |a> sits at index p * d2 + a.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace smf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default absolute tolerance (Frobenius norm) used by library operations.
inline constexpr double kDefaultTol = 1e-9;

namespace linalg {

Matrix kron(const Matrix& a, const Matrix& b);

/// E_ab in an n x n matrix algebra.
Matrix matrix_unit(std::size_t n, std::size_t a, std::size_t b);

/// Partial trace over the first factor of an operator on C^{d1} (x) C^{d2}.
Matrix trace_first(const Matrix& m, std::size_t d1, std::size_t d2);

/// Partial trace over the second factor of an operator on C^{d1} (x) C^{d2}.
Matrix trace_second(const Matrix& m, std::size_t d1, std::size_t d2);

/// Reorders the tensor factors of an operator on (x)_k C^{dims[k]}.
/// Output factor k is input factor perm[k].
Matrix permute_factors(const Matrix& m, std::span<const std::size_t> dims,
                       std::span<const std::size_t> perm);

/// 0.5 * ||m - m^dagger||_F
double hermitian_defect(const Matrix& m);

struct HermitianEigen {
    RealVector values;   // ascending
    Matrix vectors;      // columns
};

/// Eigendecomposition of (m + m^dagger) / 2.
HermitianEigen hermitian_eigen(const Matrix& m);

/// Principal square root of a Hermitian PSD matrix; negative eigenvalues
/// are clamped to zero.
Matrix psd_sqrt(const Matrix& m);

/// Inverse square root restricted to the support; fails on singular input
/// only through the returned flag.
Matrix psd_inverse_sqrt(const Matrix& m, double rel_cutoff, bool* singular);

struct PseudoInverse {
    Matrix pinv;
    std::size_t rank = 0;
    double sigma_max = 0.0;
    double sigma_min_kept = 0.0;
};

/// Moore-Penrose pseudoinverse; singular values below rel_cutoff * sigma_max
/// are treated as zero.
PseudoInverse pseudo_inverse(const Matrix& m, double rel_cutoff);

/// Applies the linear map encoded by a single Choi block
/// C = sum_ab N(E_ab) (x) E_ab (on C^{out} (x) C^{in}) to x in M_in.
Matrix apply_choi_block(const Matrix& choi, std::size_t out_dim, std::size_t in_dim,
                        const Matrix& x);

/// Choi block sum_alpha vec(A) vec(A)^dagger for Kraus operators out x in.
Matrix choi_from_kraus(std::span<const Matrix> kraus, std::size_t out_dim, std::size_t in_dim);

/// Row-major flattening used to move between Kraus operators and Choi
/// eigenvectors: v[p * in + a] = A(p, a).
Vector flatten(const Matrix& a);
Matrix unflatten(const Vector& v, std::size_t rows, std::size_t cols);

} // namespace linalg
} // namespace smf
