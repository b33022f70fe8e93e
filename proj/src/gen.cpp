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

#include "supermap_forge/gen.hpp"

#include <cmath>
#include <random>

#include "supermap_forge/error.hpp"
#include "supermap_forge/realize.hpp"

namespace smf {

namespace {

Eigen::Index ix(std::size_t n) { return static_cast<Eigen::Index>(n); }

constexpr int kMaxAttempts = 10;

} // namespace

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    // splitmix64 finaliser
    std::uint64_t z = (seed ^ index) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Matrix random_ginibre(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(ix(rows), ix(cols));
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    }
    return g;
}

HybridState random_state(const Algebra& a, std::uint64_t seed) {
    std::vector<Matrix> blocks;
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Matrix g = random_ginibre(a.dim(i), a.dim(i), split_seed(seed, i));
        Matrix m = g * g.adjoint();
        m = 0.5 * (m + m.adjoint());
        total += m.trace().real();
        blocks.push_back(std::move(m));
    }
    for (auto& m : blocks) m /= total;
    return HybridState(BlockOperator(a, std::move(blocks)));
}

Channel random_channel(const Algebra& source, const Algebra& target, std::uint64_t seed) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const std::uint64_t s = split_seed(seed, static_cast<std::uint64_t>(attempt) << 32);
        std::vector<Matrix> m(source.size() * target.size());
        for (std::size_t j = 0; j < target.size(); ++j) {
            for (std::size_t i = 0; i < source.size(); ++i) {
                const auto n = target.dim(j) * source.dim(i);
                const Matrix g = random_ginibre(n, n, split_seed(s, j * source.size() + i));
                m[j * source.size() + i] = g * g.adjoint();
            }
        }
        bool singular = false;
        std::vector<Matrix> choi(m.size());
        for (std::size_t i = 0; i < source.size() && !singular; ++i) {
            const auto di = ix(source.dim(i));
            Matrix marginal = Matrix::Zero(di, di);
            for (std::size_t j = 0; j < target.size(); ++j) {
                marginal += linalg::trace_first(m[j * source.size() + i], target.dim(j), source.dim(i));
            }
            const Matrix r = linalg::psd_inverse_sqrt(marginal, 1e-12, &singular);
            for (std::size_t j = 0; j < target.size(); ++j) {
                const auto dj = ix(target.dim(j));
                const Matrix x = linalg::kron(Matrix::Identity(dj, dj), r);
                Matrix c = x * m[j * source.size() + i] * x;
                choi[j * source.size() + i] = 0.5 * (c + c.adjoint());
            }
        }
        if (singular) continue;
        return Channel(CpMap::from_choi(source, target, std::move(choi)), 1e-10);
    }
    throw Error(Errc::SingularMarginal, "random_channel: marginal singular after " +
                                            std::to_string(kMaxAttempts) + " draws");
}

Supermap random_supermap_from_circuit(const Algebra& a, const Algebra& b, const Algebra& c,
                                      const Algebra& d, std::size_t p_dim, std::uint64_t seed) {
    if (p_dim == 0) throw Error(Errc::InvalidArgument, "p_dim must be >= 1");
    CircuitRealisation r{a,
                         b,
                         c,
                         d,
                         p_dim,
                         random_channel(c, e_target(a, p_dim), split_seed(seed, 0)),
                         random_channel(g_source(a, b, c, p_dim), d, split_seed(seed, 1)),
                         Completion::PureFirstBlock,
                         0.0,
                         0.0,
                         1.0,
                         p_dim_bound(a, c)};
    const auto in = hom_algebra(a, b);
    const auto out = hom_algebra(c, d);
    auto choi = choi_blocks_from_action(in.algebra, out.algebra, [&](const BlockOperator& x) {
        return evaluate_circuit_on_choi(r, x);
    });
    for (auto& m : choi) m = 0.5 * (m + m.adjoint());
    return Supermap(in, out, CpMap::from_choi(in.algebra, out.algebra, std::move(choi)));
}

std::vector<BlockOperator> TpAffineBasis::elements() const {
    std::vector<BlockOperator> out{base_point};
    for (const auto& d : directions) out.push_back(base_point + Complex(epsilon) * d);
    return out;
}

TpAffineBasis tp_affine_basis(const Algebra& a, const Algebra& b) {
    const auto hom = hom_algebra(a, b);
    TpAffineBasis basis{tp_section(hom, BlockOperator::identity(a)), tp_kernel_basis(hom), 0.0};
    basis.epsilon = 0.5 / static_cast<double>(hom.output_dim());
    return basis;
}

bool brute_force_tp_preservation(const Supermap& s, const TpAffineBasis& basis, double tol) {
    for (const auto& e : basis.elements()) {
        if (!is_tp_choi(s.out(), apply_to_choi(s, e), tol)) return false;
    }
    return true;
}

Supermap perturb_supermap(const Supermap& s, double epsilon, PerturbMode mode, std::uint64_t seed) {
    if (epsilon < 0.0) throw Error(Errc::InvalidArgument, "perturb_supermap: epsilon must be >= 0");
    if (epsilon == 0.0) return s;
    const CpMap& inner = s.inner();
    auto blocks = inner.choi_blocks();
    std::mt19937_64 rng(split_seed(seed, 0));

    if (mode == PerturbMode::CpBreaking) {
        const auto pick = std::uniform_int_distribution<std::size_t>(0, blocks.size() - 1)(rng);
        auto& c = blocks[pick];
        const auto eig = linalg::hermitian_eigen(c);
        const Vector v = eig.vectors.col(0);
        c -= (eig.values(0) + epsilon) * (v * v.adjoint());
    } else {
        const auto dirs = tp_kernel_basis(s.in());
        if (dirs.empty()) {
            throw Error(Errc::InvalidArgument, "Hom(A,B) has no traceless directions to perturb along");
        }
        std::normal_distribution<double> normal(0.0, 1.0);
        BlockOperator kernel = BlockOperator::zero(s.in().algebra);
        for (const auto& d : dirs) kernel = kernel + Complex(normal(rng)) * d;
        kernel = Complex(1.0 / kernel.frobenius_norm()) * kernel;

        const auto sigma = random_state(s.out().source, split_seed(seed, 1));
        const auto y = tp_section(s.out(), sigma.op());
        const auto& hin = s.in().algebra;
        for (std::size_t t = 0; t < s.out().algebra.size(); ++t) {
            for (std::size_t u = 0; u < hin.size(); ++u) {
                blocks[t * hin.size() + u] += epsilon * linalg::kron(y.block(t), kernel.block(u).conjugate());
            }
        }
    }
    return Supermap(s.in(), s.out(),
                    CpMap::from_choi_unchecked(inner.source(), inner.target(), std::move(blocks)));
}

} // namespace smf
