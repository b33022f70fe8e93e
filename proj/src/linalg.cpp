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

#include "supermap_forge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "supermap_forge/error.hpp"

namespace smf::linalg {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix matrix_unit(std::size_t n, std::size_t a, std::size_t b) {
    Matrix e = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    e(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = 1.0;
    return e;
}

Matrix trace_first(const Matrix& m, std::size_t d1, std::size_t d2) {
    const auto n2 = static_cast<Eigen::Index>(d2);
    if (m.rows() != static_cast<Eigen::Index>(d1 * d2) || m.cols() != m.rows()) {
        throw Error(Errc::ShapeMismatch, "trace_first: operator is not on the declared product");
    }
    Matrix out = Matrix::Zero(n2, n2);
    for (std::size_t p = 0; p < d1; ++p) {
        const auto off = static_cast<Eigen::Index>(p * d2);
        out += m.block(off, off, n2, n2);
    }
    return out;
}

Matrix trace_second(const Matrix& m, std::size_t d1, std::size_t d2) {
    const auto n1 = static_cast<Eigen::Index>(d1);
    if (m.rows() != static_cast<Eigen::Index>(d1 * d2) || m.cols() != m.rows()) {
        throw Error(Errc::ShapeMismatch, "trace_second: operator is not on the declared product");
    }
    Matrix out = Matrix::Zero(n1, n1);
    for (std::size_t p = 0; p < d1; ++p) {
        for (std::size_t q = 0; q < d1; ++q) {
            Complex acc = 0.0;
            for (std::size_t a = 0; a < d2; ++a) {
                acc += m(static_cast<Eigen::Index>(p * d2 + a), static_cast<Eigen::Index>(q * d2 + a));
            }
            out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = acc;
        }
    }
    return out;
}

namespace {

// Mixed-radix decode of a flat index into per-factor digits.
void decode(std::size_t flat, std::span<const std::size_t> dims, std::vector<std::size_t>& digits) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = flat % dims[k];
        flat /= dims[k];
    }
}

} // namespace

Matrix permute_factors(const Matrix& m, std::span<const std::size_t> dims,
                       std::span<const std::size_t> perm) {
    if (dims.size() != perm.size()) {
        throw Error(Errc::InvalidArgument, "permute_factors: dims/perm length mismatch");
    }
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    if (m.rows() != static_cast<Eigen::Index>(total) || m.cols() != m.rows()) {
        throw Error(Errc::ShapeMismatch, "permute_factors: operator size does not match dims");
    }
    const std::size_t k = dims.size();
    std::vector<std::size_t> out_dims(k);
    for (std::size_t t = 0; t < k; ++t) out_dims[t] = dims[perm[t]];

    // map[out_index] = in_index
    std::vector<Eigen::Index> map(total);
    std::vector<std::size_t> out_digits(k), in_digits(k);
    for (std::size_t flat = 0; flat < total; ++flat) {
        decode(flat, out_dims, out_digits);
        for (std::size_t t = 0; t < k; ++t) in_digits[perm[t]] = out_digits[t];
        std::size_t in_flat = 0;
        for (std::size_t t = 0; t < k; ++t) in_flat = in_flat * dims[t] + in_digits[t];
        map[flat] = static_cast<Eigen::Index>(in_flat);
    }
    Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < total; ++r) {
        for (std::size_t c = 0; c < total; ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(map[r], map[c]);
        }
    }
    return out;
}

double hermitian_defect(const Matrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return 0.5 * (m - m.adjoint()).norm();
}

HermitianEigen hermitian_eigen(const Matrix& m) {
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix psd_sqrt(const Matrix& m) {
    auto eig = hermitian_eigen(m);
    RealVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

Matrix psd_inverse_sqrt(const Matrix& m, double rel_cutoff, bool* singular) {
    auto eig = hermitian_eigen(m);
    const double top = eig.values.size() ? eig.values.cwiseAbs().maxCoeff() : 0.0;
    bool bad = top <= 0.0;
    RealVector inv(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values(i) <= rel_cutoff * top) {
            bad = true;
            inv(i) = 0.0;
        } else {
            inv(i) = 1.0 / std::sqrt(eig.values(i));
        }
    }
    if (singular) *singular = bad;
    return eig.vectors * inv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

PseudoInverse pseudo_inverse(const Matrix& m, double rel_cutoff) {
    PseudoInverse out;
    out.pinv = Matrix::Zero(m.cols(), m.rows());
    if (m.size() == 0) return out;
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& s = svd.singularValues();
    out.sigma_max = s.size() ? s(0) : 0.0;
    const double cut = rel_cutoff * out.sigma_max;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cut && s(i) > 0.0) {
            out.pinv += svd.matrixV().col(i) * (1.0 / s(i)) * svd.matrixU().col(i).adjoint();
            out.sigma_min_kept = s(i);
            ++out.rank;
        }
    }
    return out;
}

Matrix apply_choi_block(const Matrix& choi, std::size_t out_dim, std::size_t in_dim,
                        const Matrix& x) {
    const auto no = static_cast<Eigen::Index>(out_dim);
    const auto ni = static_cast<Eigen::Index>(in_dim);
    Matrix out = Matrix::Zero(no, no);
    // out(p, q) = sum_{a, b} C[(p, a), (q, b)] x(a, b)
    for (Eigen::Index a = 0; a < ni; ++a) {
        for (Eigen::Index b = 0; b < ni; ++b) {
            const Complex w = x(a, b);
            if (w == Complex(0.0)) continue;
            for (Eigen::Index p = 0; p < no; ++p) {
                for (Eigen::Index q = 0; q < no; ++q) {
                    out(p, q) += w * choi(p * ni + a, q * ni + b);
                }
            }
        }
    }
    return out;
}

Vector flatten(const Matrix& a) {
    Vector v(a.size());
    for (Eigen::Index p = 0; p < a.rows(); ++p) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) v(p * a.cols() + c) = a(p, c);
    }
    return v;
}

Matrix unflatten(const Vector& v, std::size_t rows, std::size_t cols) {
    Matrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t p = 0; p < rows; ++p) {
        for (std::size_t c = 0; c < cols; ++c) {
            a(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(c)) =
                v(static_cast<Eigen::Index>(p * cols + c));
        }
    }
    return a;
}

Matrix choi_from_kraus(std::span<const Matrix> kraus, std::size_t out_dim, std::size_t in_dim) {
    const auto n = static_cast<Eigen::Index>(out_dim * in_dim);
    Matrix c = Matrix::Zero(n, n);
    for (const auto& k : kraus) {
        if (k.rows() != static_cast<Eigen::Index>(out_dim) || k.cols() != static_cast<Eigen::Index>(in_dim)) {
            throw Error(Errc::ShapeMismatch, "choi_from_kraus: Kraus operator has wrong shape");
        }
        const Vector v = flatten(k);
        c += v * v.adjoint();
    }
    return c;
}

} // namespace smf::linalg
