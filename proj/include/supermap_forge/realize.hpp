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
 * @file realize.hpp
 * Circuit realisation of a deterministic supermap.
 *
 * The circuit, for an input channel f : A -> B:
 *
 *   k (classical, copied) -> E -> (i, P (x) H_in,i) -> i copied -> f on H_in,i
 *     -> (i, j, k, P (x) H_out,j) -> G -> D
 *
 * so the output channel is
 *
 *   rho_k  |->  sum_{i,j} G_{(i,j,k)}[ (id_P (x) f_{ji}) (E_{ik}(rho_k)) ].
 *
 * Construction. Let N : A -> C be the extracted unital map with minimal Kraus
 * family N_{ki,b} : H_in,i -> K_in,k (b < r_{ik}). E has a single Kraus
 * operator per (i,k),
 *
 *   V_{ik} = sum_b |b>_P (x) N_{ki,b}^T : K_in,k -> P (x) H_in,i,
 *
 * which is a channel because N is unital. Tr_{K_out} o S and N o Tr_{H_out}
 * are the same CP map Hom(A,B) -> C; a Kraus family of the former comes from
 * S's own minimal dilation, one of the latter is <h| (x) N_{ki,b}, and it is
 * minimal. W is the unique isometry relating the two; G's Kraus operators
 * read W back as maps P (x) H_out,j -> K_out,l on the image of P's leading
 * r_{ik} basis vectors, and the completion policy covers the rest of P.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "supermap_forge/cpmaps.hpp"
#include "supermap_forge/supermap.hpp"

namespace smf {

struct PaddedEnvironment {
    std::size_t p_dim = 1;
    std::size_t n_source = 0;               // |I|
    std::size_t n_control = 0;              // |K|
    std::vector<std::size_t> env_dims;      // r_{ik} at i * n_control + k
    std::vector<Matrix> injections;         // p_dim x r_{ik}, leading-basis inclusions

    std::size_t rank(std::size_t i, std::size_t k) const { return env_dims.at(i * n_control + k); }
    const Matrix& injection(std::size_t i, std::size_t k) const {
        return injections.at(i * n_control + k);
    }
    std::size_t complement_dim(std::size_t i, std::size_t k) const { return p_dim - rank(i, k); }
};

/// env_dims and bound_dims are both indexed i * n_control + k. p_dim is the
/// largest r_{ik} (1 when all vanish). Throws BoundViolated when some
/// r_{ik} > bound_{ik}.
PaddedEnvironment pad_environment(std::size_t n_source, std::size_t n_control,
                                  const std::vector<std::size_t>& env_dims,
                                  const std::vector<std::size_t>& bound_dims);

/// Minimal dilation of Tr_{K_out} o S, a map Hom(A,B) -> C. Kraus operators of
/// component (k <- (j,i)) are listed in (l, a, alpha) order, a running over
/// the K_out,l basis and alpha over S's dilation space for ((l,k) <- (j,i)).
/// Throws VerifyRequired unless s.is_deterministic().
StinespringDilation left_dilation(const Supermap& s, double tol = kDefaultTol);

/// The same, starting from a given dilation of s.inner().
StinespringDilation bend_output(const StinespringDilation& s_dilation, const Supermap& s);

/// Dilation of N o Tr_{H_out} with Kraus operators <h| (x) N_{ki,b}, listed in
/// (h, b) order. Throws NotUnital when ||N(Id) - Id|| > tol.
StinespringDilation right_dilation(const CpMap& n, const HomAlgebra& hom, double tol = kDefaultTol);

/// The same, from a given Kraus family of N (no unitality check).
StinespringDilation trace_then(const StinespringDilation& n_dilation, const HomAlgebra& hom);

struct WSolution {
    Intertwiner w;          // blocks indexed by k * |Hom(A,B)| + (j * |I| + i)
    double residual = 0.0;
    double isometry_defect = 0.0;
};

/// Least squares for left = W right, componentwise. Throws NotMinimal when
/// `right` is rank deficient and ResidualTooLarge when the residual or the
/// isometry defect exceeds 10 * tol.
WSolution solve_w(const StinespringDilation& right, const StinespringDilation& left,
                  double tol = kDefaultTol);

enum class Completion { PureFirstBlock, MaximallyMixed };

std::string to_string(Completion c);
Completion completion_from_string(const std::string& name);

/// Target algebra of E: blocks i of dim p * dim(H_in,i) (P (x) H_in,i).
Algebra e_target(const Algebra& a, std::size_t p_dim);

/// Source algebra of G: blocks "(i,j,k)" of dim p * dim(H_out,j), ordered
/// lexicographically in (i, j, k).
Algebra g_source(const Algebra& a, const Algebra& b, const Algebra& c, std::size_t p_dim);

/// E from the minimal Kraus family of N. Throws NotUnital (E not TP).
Channel assemble_e(const StinespringDilation& n_dilation, const PaddedEnvironment& pad,
                   double tol = kDefaultTol);

/// G from W. `s_dilation` (the dilation bent by bend_output) fixes the
/// (l, a, alpha) labelling of W's rows. Throws IsometryDefect when the W
/// defects exceed 10 * tol or G fails TP at that level.
Channel assemble_g(const WSolution& w, const StinespringDilation& s_dilation, const Supermap& s,
                   const PaddedEnvironment& pad, Completion completion, double tol = kDefaultTol);

struct CircuitRealisation {
    Algebra a, b, c, d;
    std::size_t p_dim = 1;
    Channel e_channel;
    Channel g_channel;
    Completion completion = Completion::PureFirstBlock;
    double w_residual = 0.0;
    double w_isometry_defect = 0.0;
    double gram_condition = 1.0;   // of the right (minimal) dilation
    std::size_t p_bound = 1;       // max_{i,k} dim(H_in,i) dim(K_in,k)
};

/// max_{i,k} dim(H_in,i) * dim(K_in,k)
std::size_t p_dim_bound(const Algebra& a, const Algebra& c);

/// Verifies s (NotDeterministic on failure) and builds the realisation.
CircuitRealisation realize(const Supermap& s, double tol = kDefaultTol,
                           Completion completion = Completion::PureFirstBlock);

/// Evaluates the circuit on an arbitrary linear map A -> B given by its Choi
/// element; returns the Choi element of the output map C -> D.
BlockOperator evaluate_circuit_on_choi(const CircuitRealisation& r, const BlockOperator& f_choi);

/// Throws AlgebraMismatch unless f : A -> B.
Channel evaluate_circuit(const CircuitRealisation& r, const Channel& f, double tol = kDefaultTol);

struct RealisationCheck {
    double max_trial_deviation = 0.0;
    double max_spanning_deviation = 0.0;
    std::size_t trials = 0;
    std::size_t spanning_elements = 0;
    double tol = 0.0;
    bool passed = false;

    double max_deviation() const { return std::max(max_trial_deviation, max_spanning_deviation); }
};

/// Compares the circuit against S on `trials` random channels and on every
/// matrix unit of Hom(A,B). trials may be 0.
RealisationCheck check_realisation(const CircuitRealisation& r, const Supermap& s,
                                   std::size_t trials, double tol, std::uint64_t seed = 0);

} // namespace smf
