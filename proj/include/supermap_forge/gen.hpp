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
 * @file gen.hpp
 * Seeded generators and brute-force oracles.
 *
 * Every generator takes an explicit 64-bit seed and is bit-reproducible on a
 * given platform (std::mt19937_64 + std::normal_distribution). Batches derive
 * per-item seeds with split_seed(seed, index) = splitmix64(seed ^ index).
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "supermap_forge/algebra.hpp"
#include "supermap_forge/cpmaps.hpp"
#include "supermap_forge/supermap.hpp"

namespace smf {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Complex Ginibre matrix (entries N(0,1) + i N(0,1)).
Matrix random_ginibre(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Gaussian block -> Gram -> global trace normalisation.
HybridState random_state(const Algebra& a, std::uint64_t seed);

/// Random PSD Choi blocks, renormalised on the source marginal. Throws
/// SingularMarginal when 10 fresh draws all give a singular marginal.
Channel random_channel(const Algebra& source, const Algebra& target, std::uint64_t seed);

/// Draws random E' and G' of the realisation shape with memory dimension
/// p_dim and evaluates the circuit on every matrix unit of Hom(a, b). The
/// result is not flagged; call verified() on it.
Supermap random_supermap_from_circuit(const Algebra& a, const Algebra& b, const Algebra& c,
                                      const Algebra& d, std::size_t p_dim, std::uint64_t seed);

struct TpAffineBasis {
    BlockOperator base_point;              // tp_section(Id)
    std::vector<BlockOperator> directions; // orthonormal, in ker Tr_{H_out}
    double epsilon = 0.0;

    /// base_point followed by base_point + epsilon * d for every direction.
    std::vector<BlockOperator> elements() const;
};

/// epsilon is half the smallest eigenvalue of base_point, 1 / (2 dim H_out);
/// directions have unit Frobenius norm, so every element stays PSD.
TpAffineBasis tp_affine_basis(const Algebra& a, const Algebra& b);

/// Literal check: S maps every basis element to a TP Choi operator.
bool brute_force_tp_preservation(const Supermap& s, const TpAffineBasis& basis, double tol);

enum class PerturbMode { CpBreaking, TpBreaking };

/// CpBreaking pushes the smallest eigenvalue of one random Choi block to
/// -epsilon. TpBreaking adds epsilon * <B, .> Y with B a random unit element
/// of ker Tr_{H_out} and Y = Id (x) sigma / dim(K_out) for a random state
/// sigma, so that Tr_{K_out} S no longer factors through Tr_{H_out}.
/// epsilon == 0 returns s unchanged.
Supermap perturb_supermap(const Supermap& s, double epsilon, PerturbMode mode, std::uint64_t seed);

} // namespace smf
