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

#include "supermap_forge/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "supermap_forge/error.hpp"

namespace smf {

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

Algebra::Algebra(std::vector<Block> blocks) {
    if (blocks.empty()) {
        throw Error(Errc::InvalidArgument, "an algebra needs at least one block");
    }
    std::set<std::string> seen;
    for (const auto& b : blocks) {
        if (b.dim == 0) {
            throw Error(Errc::InvalidArgument, "block '" + b.label + "' has dimension 0");
        }
        if (!seen.insert(b.label).second) {
            throw Error(Errc::InvalidArgument, "duplicate block label '" + b.label + "'");
        }
    }
    blocks_ = std::make_shared<const std::vector<Block>>(std::move(blocks));
}

Algebra Algebra::from_dims(const std::vector<std::size_t>& dims) {
    std::vector<Block> blocks;
    blocks.reserve(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) blocks.push_back({std::to_string(i), dims[i]});
    return Algebra(std::move(blocks));
}

Algebra Algebra::scalars() { return Algebra({{"0", 1}}); }

Algebra Algebra::product(const Algebra& left, const Algebra& right) {
    std::vector<Block> blocks;
    blocks.reserve(left.size() * right.size());
    for (const auto& l : left.blocks()) {
        for (const auto& r : right.blocks()) {
            blocks.push_back({"(" + l.label + "," + r.label + ")", l.dim * r.dim});
        }
    }
    Algebra out(std::move(blocks));
    out.product_ = std::make_shared<const ProductStructure>(ProductStructure{left, right});
    return out;
}

std::vector<std::size_t> Algebra::dims() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (const auto& b : blocks()) out.push_back(b.dim);
    return out;
}

std::size_t Algebra::total_dim() const noexcept {
    std::size_t n = 0;
    for (const auto& b : *blocks_) n += b.dim;
    return n;
}

bool Algebra::operator==(const Algebra& other) const {
    return blocks_ == other.blocks_ || *blocks_ == *other.blocks_;
}

std::string Algebra::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) os << " + ";
        const auto d = dim(i);
        if (d == 1) {
            os << "C";
        } else {
            os << "M" << d;
        }
        os << "[" << block(i).label << "]";
    }
    return os.str();
}

void require_same_algebra(const Algebra& a, const Algebra& b, const char* where) {
    if (!(a == b)) {
        throw Error(Errc::AlgebraMismatch,
                    std::string(where) + ": " + a.describe() + " vs " + b.describe());
    }
}

// ---------------------------------------------------------------------------
// BlockOperator
// ---------------------------------------------------------------------------

BlockOperator::BlockOperator(Algebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    if (blocks_.size() != algebra_.size()) {
        throw Error(Errc::ShapeMismatch, "block count does not match the algebra");
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const auto d = static_cast<Eigen::Index>(algebra_.dim(i));
        if (blocks_[i].rows() != d || blocks_[i].cols() != d) {
            throw Error(Errc::ShapeMismatch, "block " + std::to_string(i) + " is not " +
                                                 std::to_string(d) + "x" + std::to_string(d));
        }
    }
}

BlockOperator BlockOperator::zero(const Algebra& algebra) {
    std::vector<Matrix> blocks;
    for (auto d : algebra.dims()) {
        blocks.push_back(Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
    }
    return BlockOperator(algebra, std::move(blocks));
}

BlockOperator BlockOperator::identity(const Algebra& algebra) {
    std::vector<Matrix> blocks;
    for (auto d : algebra.dims()) {
        blocks.push_back(Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
    }
    return BlockOperator(algebra, std::move(blocks));
}

BlockOperator BlockOperator::unit(const Algebra& algebra, std::size_t block, std::size_t a,
                                  std::size_t b) {
    auto z = zero(algebra);
    z.blocks_.at(block)(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = 1.0;
    return z;
}

BlockOperator BlockOperator::adjoint() const {
    std::vector<Matrix> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(b.adjoint());
    return BlockOperator(algebra_, std::move(out));
}

BlockOperator BlockOperator::transpose() const {
    std::vector<Matrix> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(b.transpose());
    return BlockOperator(algebra_, std::move(out));
}

double BlockOperator::frobenius_norm() const {
    double s = 0.0;
    for (const auto& b : blocks_) s += b.squaredNorm();
    return std::sqrt(s);
}

BlockOperator BlockOperator::with_block(std::size_t i, Matrix m) const {
    auto copy = blocks_;
    copy.at(i) = std::move(m);
    return BlockOperator(algebra_, std::move(copy));
}

namespace {

template <class Op>
BlockOperator blockwise(const BlockOperator& a, const BlockOperator& b, const char* where, Op op) {
    require_same_algebra(a.algebra(), b.algebra(), where);
    std::vector<Matrix> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(op(a.block(i), b.block(i)));
    return BlockOperator(a.algebra(), std::move(out));
}

} // namespace

BlockOperator operator+(const BlockOperator& a, const BlockOperator& b) {
    return blockwise(a, b, "add", [](const Matrix& x, const Matrix& y) -> Matrix { return x + y; });
}

BlockOperator operator-(const BlockOperator& a, const BlockOperator& b) {
    return blockwise(a, b, "subtract", [](const Matrix& x, const Matrix& y) -> Matrix { return x - y; });
}

BlockOperator operator*(const BlockOperator& a, const BlockOperator& b) {
    return blockwise(a, b, "multiply", [](const Matrix& x, const Matrix& y) -> Matrix { return x * y; });
}

BlockOperator operator*(Complex s, const BlockOperator& a) {
    std::vector<Matrix> out;
    out.reserve(a.size());
    for (const auto& b : a.blocks()) out.push_back(s * b);
    return BlockOperator(a.algebra(), std::move(out));
}

Complex trace(const BlockOperator& x) {
    Complex t = 0.0;
    for (const auto& b : x.blocks()) t += b.trace();
    return t;
}

Complex hs_inner(const BlockOperator& x, const BlockOperator& y) {
    require_same_algebra(x.algebra(), y.algebra(), "hs_inner");
    Complex t = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        // Tr(x^dagger y) = sum conj(x_ab) y_ab
        t += x.block(i).cwiseProduct(y.block(i).conjugate()).sum();
    }
    return std::conj(t);
}

// ---------------------------------------------------------------------------
// Positivity
// ---------------------------------------------------------------------------

PositivityResult is_positive(const BlockOperator& x, double tol) {
    if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "is_positive: tol must be > 0");
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Matrix& m = x.block(i);
        const double defect = linalg::hermitian_defect(m);
        const double min_eig = linalg::hermitian_eigen(m).values.minCoeff();
        if (defect > tol || min_eig < -tol) {
            return {false, PositivityWitness{i, min_eig, defect}};
        }
    }
    return {true, std::nullopt};
}

BlockOperator BlockFactor::reassemble() const {
    std::vector<Matrix> out;
    out.reserve(factors.size());
    for (const auto& g : factors) out.push_back(g.adjoint() * g);
    return BlockOperator(algebra, std::move(out));
}

BlockFactor psd_factor(const BlockOperator& x, double tol) {
    auto check = is_positive(x, tol);
    if (!check) {
        const auto& w = *check.witness;
        throw Error(Errc::NotPsd, "block " + std::to_string(w.block) + " has eigenvalue " +
                                      std::to_string(w.min_eigenvalue) + " (hermitian defect " +
                                      std::to_string(w.hermitian_defect) + ")");
    }
    BlockFactor f{x.algebra(), {}};
    f.factors.reserve(x.size());
    for (const auto& b : x.blocks()) f.factors.push_back(linalg::psd_sqrt(b));
    return f;
}

// ---------------------------------------------------------------------------
// HybridState
// ---------------------------------------------------------------------------

HybridState::HybridState(BlockOperator op, double tol) : op_(std::move(op)) {
    auto check = is_positive(op_, tol);
    if (!check) {
        throw Error(Errc::NotPsd, "state block " + std::to_string(check.witness->block) +
                                      " is not positive");
    }
    const Complex t = trace(op_);
    if (std::abs(t - Complex(1.0)) > tol) {
        throw Error(Errc::InvalidArgument, "state trace is " + std::to_string(t.real()) + ", not 1");
    }
}

std::vector<double> HybridState::distribution() const {
    std::vector<double> p;
    p.reserve(op_.size());
    for (const auto& b : op_.blocks()) p.push_back(b.trace().real());
    return p;
}

} // namespace smf
