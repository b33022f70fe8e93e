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

// Small helpers shared by the test binaries.
#pragma once

#include <optional>
#include <string>

#include "supermap_forge/algebra.hpp"
#include "supermap_forge/error.hpp"
#include "supermap_forge/gen.hpp"

namespace smf::test {

inline Matrix hermitian(std::size_t n, std::uint64_t seed) {
    const Matrix g = random_ginibre(n, n, seed);
    return 0.5 * (g + g.adjoint());
}

inline BlockOperator random_operator(const Algebra& a, std::uint64_t seed) {
    std::vector<Matrix> blocks;
    for (std::size_t i = 0; i < a.size(); ++i) blocks.push_back(random_ginibre(a.dim(i), a.dim(i), split_seed(seed, i)));
    return BlockOperator(a, std::move(blocks));
}

inline BlockOperator random_hermitian(const Algebra& a, std::uint64_t seed) {
    std::vector<Matrix> blocks;
    for (std::size_t i = 0; i < a.size(); ++i) blocks.push_back(hermitian(a.dim(i), split_seed(seed, i)));
    return BlockOperator(a, std::move(blocks));
}

// Random isometry n -> m via QR of a Ginibre matrix.
inline Matrix random_isometry(std::size_t m, std::size_t n, std::uint64_t seed) {
    const Matrix g = random_ginibre(m, n, seed);
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
}

// The Errc thrown by f, or nullopt when f returns normally.
template <class F>
std::optional<Errc> error_code(F f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

} // namespace smf::test
