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
 * @file algebra.hpp
 * Multimatrix algebras (direct sums of full matrix algebras) and their
 * elements.
 *
 * An Algebra is an ordered list of labelled blocks. Cross-algebra
 * identifications always go through block order; labels are only carried
 * for display and serialization.
 */
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "supermap_forge/linalg.hpp"

namespace smf {

struct Block {
    std::string label;
    std::size_t dim = 0;

    bool operator==(const Block&) const = default;
};

struct ProductStructure;

class Algebra {
public:
    /// Throws InvalidArgument on an empty block list, a zero dimension or a
    /// repeated label.
    explicit Algebra(std::vector<Block> blocks);

    /// Blocks labelled "0", "1", ... with the given dimensions.
    static Algebra from_dims(const std::vector<std::size_t>& dims);

    /// The one-dimensional algebra C.
    static Algebra scalars();

    /// Blocks indexed by ordered pairs (p, q), lexicographic in (p, q), with
    /// dims left.dim(p) * right.dim(q). Inside each block the tensor order
    /// is left (x) right. The factor split is recorded.
    static Algebra product(const Algebra& left, const Algebra& right);

    std::size_t size() const noexcept { return blocks_->size(); }
    std::size_t dim(std::size_t block) const { return blocks_->at(block).dim; }
    const Block& block(std::size_t i) const { return blocks_->at(i); }
    const std::vector<Block>& blocks() const noexcept { return *blocks_; }
    std::vector<std::size_t> dims() const;

    /// sum of block dimensions; equals Tr(identity).
    std::size_t total_dim() const noexcept;

    /// nullptr unless built by product().
    const ProductStructure* product_structure() const noexcept { return product_.get(); }

    /// Same ordered blocks (labels and dims). Product metadata is ignored.
    bool operator==(const Algebra& other) const;

    std::string describe() const;

private:
    std::shared_ptr<const std::vector<Block>> blocks_;
    std::shared_ptr<const ProductStructure> product_;
};

struct ProductStructure {
    Algebra left;
    Algebra right;

    std::size_t index(std::size_t p, std::size_t q) const { return p * right.size() + q; }
};

/// An element of a multimatrix algebra: one square matrix per block.
class BlockOperator {
public:
    /// Throws ShapeMismatch if the matrices do not match the block dims.
    BlockOperator(Algebra algebra, std::vector<Matrix> blocks);

    static BlockOperator zero(const Algebra& algebra);
    static BlockOperator identity(const Algebra& algebra);

    /// Matrix unit E_ab inside block `block`, zero elsewhere.
    static BlockOperator unit(const Algebra& algebra, std::size_t block, std::size_t a,
                              std::size_t b);

    const Algebra& algebra() const noexcept { return algebra_; }
    const Matrix& block(std::size_t i) const { return blocks_.at(i); }
    const std::vector<Matrix>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }

    BlockOperator adjoint() const;
    BlockOperator transpose() const;

    double frobenius_norm() const;

    /// Copy with a single block replaced.
    BlockOperator with_block(std::size_t i, Matrix m) const;

    friend BlockOperator operator+(const BlockOperator& a, const BlockOperator& b);
    friend BlockOperator operator-(const BlockOperator& a, const BlockOperator& b);
    friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b);
    friend BlockOperator operator*(Complex s, const BlockOperator& a);
    friend BlockOperator operator*(const BlockOperator& a, Complex s) { return s * a; }

private:
    Algebra algebra_;
    std::vector<Matrix> blocks_;
};

/// Throws AlgebraMismatch unless a and b share an algebra.
void require_same_algebra(const Algebra& a, const Algebra& b, const char* where);

/// sum of block traces
Complex trace(const BlockOperator& x);

/// sum over blocks of Tr(x_b^dagger y_b)
Complex hs_inner(const BlockOperator& x, const BlockOperator& y);

struct PositivityWitness {
    std::size_t block = 0;
    double min_eigenvalue = 0.0;
    double hermitian_defect = 0.0;
};

struct PositivityResult {
    bool positive = false;
    std::optional<PositivityWitness> witness;  // set when positive == false

    explicit operator bool() const noexcept { return positive; }
};

/// Each block Hermitian within tol and with smallest eigenvalue >= -tol.
PositivityResult is_positive(const BlockOperator& x, double tol = kDefaultTol);

/// Per-block g with g^dagger g equal to the block.
struct BlockFactor {
    Algebra algebra;
    std::vector<Matrix> factors;

    BlockOperator reassemble() const;
};

/// PSD square root per block (eigenvalues clamped at 0). Throws NotPsd when
/// is_positive(x, tol) fails.
BlockFactor psd_factor(const BlockOperator& x, double tol = kDefaultTol);

/// A trace-one positive element: a distribution over blocks together with a
/// density matrix per block.
class HybridState {
public:
    /// Throws NotPsd / InvalidArgument when the invariants fail at tol.
    explicit HybridState(BlockOperator op, double tol = kDefaultTol);

    const BlockOperator& op() const noexcept { return op_; }
    const Algebra& algebra() const noexcept { return op_.algebra(); }

    /// Block traces {p_x}.
    std::vector<double> distribution() const;

private:
    BlockOperator op_;
};

} // namespace smf
