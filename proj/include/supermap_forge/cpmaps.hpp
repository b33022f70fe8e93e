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
 * @file cpmaps.hpp
 * Completely positive maps between multimatrix algebras.
 *
 * A CpMap A -> B is stored as its family of Choi blocks: for target block j
 * and source block i,
 *
 *     C_{ji} = sum_{a,b} N(E_ab in block i)_j (x) E_ab      (target (x) source)
 *
 * in the standard basis, unnormalised. With this convention the map is
 * trace preserving iff sum_j Tr_target(C_{ji}) = Id for every i, and it acts as
 *
 *     N(x)_j = sum_i Tr_source[(Id (x) x_i^T) C_{ji}].
 *
 * Dilations are in the Schrodinger form: Kraus operators A_{ji,alpha}: H_i ->
 * K_j with N(x)_j = sum_{i,alpha} A x_i A^dagger, and the stacked operator
 * V_i = (+)_j sum_alpha A_{ji,alpha} (x) |alpha> is an isometry iff N is trace
 * preserving.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "supermap_forge/algebra.hpp"

namespace smf {

class CpMap {
public:
    /// Checks shapes and complete positivity (every Choi block PSD within
    /// tol); throws NotCp otherwise.
    static CpMap from_choi(Algebra source, Algebra target, std::vector<Matrix> choi,
                           double tol = kDefaultTol);

    /// Checks shapes only. Used for perturbed or not-yet-verified input.
    static CpMap from_choi_unchecked(Algebra source, Algebra target, std::vector<Matrix> choi);

    static CpMap identity(const Algebra& a);

    const Algebra& source() const noexcept { return source_; }
    const Algebra& target() const noexcept { return target_; }

    std::size_t index(std::size_t target_block, std::size_t source_block) const {
        return target_block * source_.size() + source_block;
    }
    const Matrix& choi(std::size_t target_block, std::size_t source_block) const {
        return choi_.at(index(target_block, source_block));
    }
    const std::vector<Matrix>& choi_blocks() const noexcept { return choi_; }

    /// max over blocks of ||C - C'||_F; throws AlgebraMismatch on type mismatch.
    double choi_distance(const CpMap& other) const;

private:
    CpMap(Algebra source, Algebra target, std::vector<Matrix> choi);

    Algebra source_;
    Algebra target_;
    std::vector<Matrix> choi_;
};

CpMap operator*(double s, const CpMap& m);
CpMap operator+(const CpMap& a, const CpMap& b);

BlockOperator apply(const CpMap& m, const BlockOperator& x);

/// The (target j <- source i) component applied to a single matrix.
Matrix apply_component(const CpMap& m, std::size_t target_block, std::size_t source_block,
                       const Matrix& x);

using LinearAction = std::function<BlockOperator(const BlockOperator&)>;

/// Choi blocks of a linear map given by its action on matrix units; no
/// positivity check.
std::vector<Matrix> choi_blocks_from_action(const Algebra& source, const Algebra& target,
                                            const LinearAction& action);

/// Throws NotCp when some resulting block is not PSD at tol.
CpMap choi_from_action(const Algebra& source, const Algebra& target, const LinearAction& action,
                       double tol = kDefaultTol);

struct BlockCheck {
    bool ok = false;
    std::vector<double> residuals;

    explicit operator bool() const noexcept { return ok; }
    double max_residual() const;
};

/// Residual per source block i: ||sum_j Tr_target(C_ji) - Id||_F.
BlockCheck is_tp(const CpMap& m, double tol = kDefaultTol);

/// Residual per target block j: ||m(Id)_j - Id||_F.
BlockCheck is_unital(const CpMap& m, double tol = kDefaultTol);

/// PSD check of every Choi block; residuals are the negated smallest
/// eigenvalues (clamped at 0) per block.
BlockCheck is_cp(const CpMap& m, double tol = kDefaultTol);

/// A trace-preserving CpMap.
class Channel {
public:
    /// Throws NotTp when is_tp(map, tol) fails.
    explicit Channel(CpMap map, double tol = kDefaultTol);

    const CpMap& map() const noexcept { return map_; }
    const Algebra& source() const noexcept { return map_.source(); }
    const Algebra& target() const noexcept { return map_.target(); }

private:
    CpMap map_;
};

struct KrausDecomposition {
    Algebra source;
    Algebra target;
    /// ops[j * |source| + i] lists operators H_i -> K_j
    std::vector<std::vector<Matrix>> ops;

    const std::vector<Matrix>& at(std::size_t target_block, std::size_t source_block) const {
        return ops.at(target_block * source.size() + source_block);
    }
    CpMap to_cpmap() const;
};

/// Eigendecomposes each Choi block, keeping eigenvalues above the cutoff.
/// rank_tol < 0 selects the default cutoff 1e-10 * (largest eigenvalue over
/// all blocks). Throws NotCp when an eigenvalue is below -max(cutoff, tol).
KrausDecomposition kraus_from_choi(const CpMap& m, double rank_tol = -1.0,
                                   double tol = kDefaultTol);

class StinespringDilation {
public:
    explicit StinespringDilation(KrausDecomposition kraus);

    const Algebra& source() const noexcept { return kraus_.source; }
    const Algebra& target() const noexcept { return kraus_.target; }
    const KrausDecomposition& kraus() const noexcept { return kraus_; }

    std::size_t env_dim(std::size_t target_block, std::size_t source_block) const {
        return kraus_.at(target_block, source_block).size();
    }
    std::vector<std::size_t> env_dims() const;

    /// V_i : H_i -> (+)_j K_j (x) E_{ji}. Row index of |p>_j (x) |alpha> is
    /// offset_j + p * r_{ji} + alpha.
    Matrix isometry(std::size_t source_block) const;

    /// max_i ||V_i^dagger V_i - Id||_F
    double isometry_defect() const;

    /// x -> sum Tr_env(V x V^dagger), i.e. the dilated map.
    BlockOperator apply(const BlockOperator& x) const;
    CpMap to_cpmap() const { return kraus_.to_cpmap(); }

    /// Gram matrix G_{ab} = Tr(A_a^dagger A_b) of one component.
    Matrix gram(std::size_t target_block, std::size_t source_block) const;

    /// Smallest eigenvalue over all component Gram matrices (+inf when no
    /// component has operators).
    double min_gram_eigenvalue() const;

    /// Largest condition number over all component Gram matrices.
    double gram_condition() const;

    /// Gram matrices invertible: smallest eigenvalue above
    /// rel_tol * largest.
    bool is_minimal(double rel_tol = 1e-10) const;

private:
    KrausDecomposition kraus_;
};

StinespringDilation minimal_stinespring(const CpMap& m, double tol = kDefaultTol);

/// Linear relation between two dilations of the same map: per component,
/// to_alpha = sum_beta sigma(alpha, beta) from_beta, found by least squares.
struct Intertwiner {
    std::vector<Matrix> blocks;  // per component, env_to x env_from
    double residual = 0.0;        // sqrt(sum ||L - sigma R||^2)
    double isometry_defect = 0.0; // sqrt(sum ||sigma^dagger sigma - Id||^2)
    double partial_isometry_defect = 0.0; // sqrt(sum ||P P - P||^2), P = sigma^dagger sigma
    bool full_rank = true;        // `from` operators linearly independent
    double min_singular = 0.0;    // smallest kept singular value across blocks
};

Intertwiner solve_intertwiner(const StinespringDilation& from, const StinespringDilation& to,
                              double rel_cutoff = 1e-10);

/// Hilbert-Schmidt adjoint: hs_inner(m(x), y) = hs_inner(x, hs_dual(m)(y)).
CpMap hs_dual(const CpMap& m);

/// g after f. Throws AlgebraMismatch unless f.target == g.source.
CpMap compose(const CpMap& g, const CpMap& f, double tol = kDefaultTol);

/// f (x) g. Source and target are Algebra::product of the factors; each
/// Choi block is kron(C_f, C_g) with factors reordered from
/// (K1, H1, K2, H2) to (K1, K2, H1, H2).
CpMap tensor(const CpMap& f, const CpMap& g);

/// Blocks "(k,k)" of dimension dim(k); off-diagonal pairs are omitted.
Algebra copy_target(const Algebra& a);

/// Copies the block index: block k content goes to block (k,k).
Channel copy_channel(const Algebra& a);

/// Discards the classical copy: block (k,k) of copy_target(a) goes to block k.
Channel discard_copy(const Algebra& a);

enum class TargetGroup { None, Left, Right, All };

/// Partial trace over part of a product-structured target. Left/Right need
/// Algebra::product_structure() on the target (StructureMissing otherwise).
/// All yields a map into the scalars.
CpMap trace_out_target_group(const CpMap& m, TargetGroup group);

} // namespace smf
