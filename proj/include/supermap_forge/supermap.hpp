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
 * @file supermap.hpp
 * Deterministic supermaps: CP maps Hom(A,B) -> Hom(C,D) that send Choi
 * operators of channels to Choi operators of channels.
 *
 * Naming used throughout:
 *   A = (+)_i B(H_in,i)   B = (+)_j B(H_out,j)
 *   C = (+)_k B(K_in,k)   D = (+)_l B(K_out,l)
 * Hom(A,B) has blocks (j,i) holding H_out,j (x) H_in,i.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "supermap_forge/algebra.hpp"
#include "supermap_forge/cpmaps.hpp"

namespace smf {

struct HomAlgebra {
    Algebra source;   // A, the H_in family
    Algebra target;   // B, the H_out family
    Algebra algebra;  // Algebra::product(target, source)

    /// dim(H_out) = sum_j dim(H_out,j)
    std::size_t output_dim() const noexcept { return target.total_dim(); }
};

HomAlgebra hom_algebra(const Algebra& source, const Algebra& target);

/// The Choi operator of f : A -> B as an element of Hom(A,B).
BlockOperator choi_operator(const HomAlgebra& hom, const CpMap& f);

/// Inverse of choi_operator (no positivity check).
CpMap as_cpmap(const HomAlgebra& hom, const BlockOperator& c);

/// Tr_{H_out}: Hom(A,B) -> A, block i = sum_j Tr_{H_out,j}(c_{ji}).
BlockOperator trace_output(const HomAlgebra& hom, const BlockOperator& c);

/// Id_{H_out} (x) x : A -> Hom(A,B), block (j,i) = Id_{H_out,j} (x) x_i.
BlockOperator identity_tensor(const HomAlgebra& hom, const BlockOperator& x);

/// (Id_{H_out} (x) x) / dim(H_out); a right inverse of trace_output.
BlockOperator tp_section(const HomAlgebra& hom, const BlockOperator& x);

/// ||trace_output(c) - Id||_F per block of A.
BlockCheck is_tp_choi(const HomAlgebra& hom, const BlockOperator& c, double tol = kDefaultTol);

/// Orthonormal (Frobenius) basis of the Hermitian elements of the kernel of
/// trace_output. Its size is sum_{ji} (dim H_out,j dim H_in,i)^2 - sum_i dim(H_in,i)^2.
std::vector<BlockOperator> tp_kernel_basis(const HomAlgebra& hom);

class Supermap {
public:
    /// Throws AlgebraMismatch unless inner: in.algebra -> out.algebra.
    Supermap(HomAlgebra in, HomAlgebra out, CpMap inner);

    /// The identity supermap on Hom(a, b).
    static Supermap identity(const Algebra& a, const Algebra& b);

    const HomAlgebra& in() const noexcept { return in_; }
    const HomAlgebra& out() const noexcept { return out_; }
    const CpMap& inner() const noexcept { return inner_; }

    /// Set only on copies returned by verified().
    bool is_deterministic() const noexcept { return deterministic_; }

    /// Runs verify_deterministic; returns a copy flagged deterministic, or
    /// throws NotDeterministic with the failing residuals.
    Supermap verified(double tol = kDefaultTol) const;

private:
    HomAlgebra in_;
    HomAlgebra out_;
    CpMap inner_;
    bool deterministic_ = false;
};

BlockOperator apply_to_choi(const Supermap& s, const BlockOperator& c);

/// N(x) = Tr_{K_out}[S(tp_section(x))], a map A -> C. Throws NotCp when the
/// resulting Choi blocks are not PSD at tol.
CpMap extract_n(const Supermap& s, double tol = kDefaultTol);

struct VerificationReport {
    bool cp_ok = false;
    double cp_residual = 0.0;          // max negative eigenvalue magnitude / Hermitian defect
    double kernel_residual = 0.0;      // max_e ||Tr_{K_out} S(B_e)||_F over tp_kernel_basis
    std::optional<CpMap> n_map;        // extracted N (unchecked)
    double n_unital_residual = 0.0;    // ||N(Id) - Id||_F
    bool n_cp_ok = false;
    double tol = kDefaultTol;
    bool verdict = false;
};

/// verdict = cp_ok && kernel_residual <= tol && n_unital_residual <= tol.
VerificationReport verify_deterministic(const Supermap& s, double tol = kDefaultTol);

struct Lemma1Result {
    BlockOperator rho;               // Tr_{H_out}(c) / dim(H_out)
    double residual = 0.0;           // ||c - Id (x) rho||_F
    double hypothesis_residual = 0.0;// max over TP probes of |Tr(c F) - 1|
    double kappa = 0.0;              // 1 / smallest singular value of the probe pairing on the kernel
};

/// Splits c in Hom(A,B) as Id_{H_out} (x) rho and reports how far c is from
/// that form. `tol` is accepted for interface symmetry; nothing is thrown.
Lemma1Result lemma1_decompose(const HomAlgebra& hom, const BlockOperator& c, double tol = kDefaultTol);

} // namespace smf
