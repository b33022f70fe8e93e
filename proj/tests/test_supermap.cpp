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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supermap_forge/realize.hpp"
#include "supermap_forge/supermap.hpp"
#include "support.hpp"

using namespace smf;
using smf::test::error_code;

namespace {

const Algebra q2 = Algebra::from_dims({2});
const Algebra bit = Algebra::from_dims({1, 1});

Supermap sample(std::uint64_t seed) {
    return random_supermap_from_circuit(Algebra::from_dims({2, 1}), Algebra::from_dims({1, 2}),
                                        Algebra::from_dims({2}), Algebra::from_dims({1, 2}), 2, seed);
}

} // namespace

TEST_CASE("hom_algebra") {
    const auto povm = hom_algebra(q2, bit);
    CHECK(povm.algebra.dims() == std::vector<std::size_t>{2, 2});
    CHECK(povm.algebra.block(0).label == "(0,0)");
    CHECK(povm.algebra.block(1).label == "(1,0)");
    CHECK(povm.algebra.product_structure() != nullptr);

    const auto states = hom_algebra(Algebra::scalars(), q2);
    CHECK(states.algebra.dims() == std::vector<std::size_t>{2});

    CHECK(hom_algebra(q2, Algebra::from_dims({3})).algebra.dims() == std::vector<std::size_t>{6});

    // Block (j,i) sits at j * |I| + i.
    const auto h = hom_algebra(Algebra::from_dims({1, 2}), Algebra::from_dims({3, 4}));
    CHECK(h.algebra.dims() == std::vector<std::size_t>{3, 6, 4, 8});
}

TEST_CASE("tp_section") {
    const auto hom = hom_algebra(q2, q2);
    const auto sec = tp_section(hom, BlockOperator::identity(q2));
    CHECK((sec.block(0) - 0.5 * Matrix::Identity(4, 4)).norm() < 1e-15);
    CHECK((trace_output(hom, sec) - BlockOperator::identity(q2)).frobenius_norm() < 1e-15);
    CHECK(tp_section(hom, BlockOperator::zero(q2)).frobenius_norm() == 0.0);

    const auto a = Algebra::from_dims({2, 3});
    const auto h2 = hom_algebra(a, Algebra::from_dims({1, 2}));
    const auto x = test::random_hermitian(a, 4);
    CHECK((trace_output(h2, tp_section(h2, x)) - x).frobenius_norm() < 1e-12);
    CHECK(error_code([&] { tp_section(h2, BlockOperator::identity(q2)); }) == Errc::AlgebraMismatch);
}

TEST_CASE("tp_kernel_basis") {
    const auto a = Algebra::from_dims({2, 1});
    const auto b = Algebra::from_dims({1, 2});
    const auto hom = hom_algebra(a, b);
    const auto basis = tp_kernel_basis(hom);
    // sum_{ji} (b_j a_i)^2 - sum_i a_i^2 = (4 + 1 + 16 + 4) - (4 + 1)
    CHECK(basis.size() == 20);
    for (std::size_t e = 0; e < basis.size(); ++e) {
        CHECK(linalg::hermitian_defect(basis[e].block(0)) < 1e-14);
        CHECK(trace_output(hom, basis[e]).frobenius_norm() < 1e-12);
        for (std::size_t f = 0; f < basis.size(); ++f) {
            const double expect = e == f ? 1.0 : 0.0;
            CHECK(std::abs(hs_inner(basis[e], basis[f]) - expect) < 1e-12);
        }
    }
    CHECK(tp_kernel_basis(hom_algebra(Algebra::scalars(), Algebra::scalars())).empty());
}

TEST_CASE("apply_to_choi") {
    const auto id = Supermap::identity(q2, q2);
    const auto f = random_channel(q2, q2, 1);
    const auto c = choi_operator(id.in(), f.map());
    CHECK((apply_to_choi(id, c) - c).frobenius_norm() < 1e-14);

    const auto s = sample(3);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = random_channel(s.in().source, s.in().target, seed);
        const auto out = apply_to_choi(s, choi_operator(s.in(), g.map()));
        CHECK(is_tp_choi(s.out(), out, 1e-10).ok);
        CHECK(is_tp(as_cpmap(s.out(), out), 1e-10).ok);
    }

    const Supermap doubled(id.in(), id.out(), 2.0 * id.inner());
    CHECK_FALSE(is_tp_choi(doubled.out(), apply_to_choi(doubled, c)).ok);
    CHECK(error_code([&] { apply_to_choi(s, c); }) == Errc::AlgebraMismatch);
}

TEST_CASE("extract_n") {
    const auto trivial = Supermap::identity(Algebra::scalars(), Algebra::scalars());
    CHECK(extract_n(trivial).choi_distance(CpMap::identity(Algebra::scalars())) < 1e-15);
    const auto id_q = Supermap::identity(q2, q2);
    CHECK(extract_n(id_q).choi_distance(CpMap::identity(q2)) < 1e-14);

    // Circuit-based oracle: the generator's E' marginal over P is N's dual,
    // conjugated by the standard-basis transpose of the dual wire.
    const auto a = Algebra::from_dims({2, 1});
    const auto b = Algebra::from_dims({1, 2});
    const auto c = Algebra::from_dims({2, 1});
    const auto d = Algebra::from_dims({2});
    const std::size_t p = 2;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto s = random_supermap_from_circuit(a, b, c, d, p, seed);
        const auto e_prime = random_channel(c, e_target(a, p), split_seed(seed, 0));
        const auto n = extract_n(s);
        CHECK(is_unital(n, 1e-10).ok);
        const auto n_star = hs_dual(n);
        const auto rho = random_state(c, seed + 10).op();
        const auto e_out = apply(e_prime.map(), rho);
        const auto dual = apply(n_star, rho.transpose()).transpose();
        for (std::size_t i = 0; i < a.size(); ++i) {
            const Matrix marginal = linalg::trace_first(e_out.block(i), p, a.dim(i));
            CHECK((marginal - dual.block(i)).norm() < 1e-10);
        }
    }
}

TEST_CASE("verify_deterministic") {
    const auto id = Supermap::identity(Algebra::from_dims({2, 1}), bit);
    const auto r = verify_deterministic(id, 1e-9);
    CHECK(r.verdict);
    CHECK(r.cp_ok);
    REQUIRE(r.n_map);
    CHECK(r.n_map->choi_distance(CpMap::identity(Algebra::from_dims({2, 1}))) < 1e-14);

    const auto s = sample(5);
    const auto basis = tp_affine_basis(s.in().source, s.in().target);
    CHECK(verify_deterministic(s, 1e-9).verdict);
    CHECK(brute_force_tp_preservation(s, basis, 1e-9));

    // +0.01 along a kernel direction feeding the K_out-traced output.
    const auto bad = perturb_supermap(s, 0.01, PerturbMode::TpBreaking, 2);
    const auto rb = verify_deterministic(bad, 1e-9);
    CHECK_FALSE(rb.verdict);
    CHECK(rb.kernel_residual > 1e-4);
    CHECK_FALSE(brute_force_tp_preservation(bad, basis, 1e-9));

    CHECK(error_code([&] { (void)s.verified(1e-9); }) == std::nullopt);
    CHECK(s.verified(1e-9).is_deterministic());
    CHECK_FALSE(s.is_deterministic());
    CHECK(error_code([&] { (void)bad.verified(1e-9); }) == Errc::NotDeterministic);
    CHECK(error_code([&] { verify_deterministic(s, 0.0); }) == Errc::InvalidArgument);
}

TEST_CASE("output-trace factorisation through N and the dual identity") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto s = sample(seed + 20).verified(1e-9);
        const auto n = extract_n(s);
        for (std::uint64_t t = 0; t < 10; ++t) {
            const auto x = test::random_operator(s.in().algebra, split_seed(seed, t));
            const auto lhs = trace_output(s.out(), apply_to_choi(s, x));
            const auto rhs = apply(n, trace_output(s.in(), x));
            CHECK((lhs - rhs).frobenius_norm() < 1e-10);
        }
        const auto s_star = hs_dual(s.inner());
        const auto n_star = hs_dual(n);
        for (std::uint64_t t = 0; t < 5; ++t) {
            const auto rho = random_state(s.out().source, split_seed(seed + 99, t)).op();
            const auto lhs = apply(s_star, identity_tensor(s.out(), rho));
            const auto rhs = identity_tensor(s.in(), apply(n_star, rho));
            CHECK((lhs - rhs).frobenius_norm() < 1e-10);
        }
    }
}

TEST_CASE("lemma1_decompose") {
    const auto a = Algebra::from_dims({2, 1});
    const auto hom = hom_algebra(a, q2);
    const auto rho0 = random_state(a, 3).op();
    const auto c = identity_tensor(hom, rho0);
    const auto r = lemma1_decompose(hom, c);
    CHECK((r.rho - rho0).frobenius_norm() < 1e-14);
    CHECK(r.residual < 1e-14);
    CHECK(r.hypothesis_residual < 1e-14);
    // probes step epsilon = 1/(2 dim H_out) along orthonormal directions
    CHECK(r.kappa == doctest::Approx(4.0));

    const auto dir = tp_kernel_basis(hom)[3];
    const double eps = 1e-3;
    const auto r2 = lemma1_decompose(hom, c + Complex(eps) * dir);
    CHECK(r2.residual == doctest::Approx(eps).epsilon(1e-9));
    CHECK((r2.rho - rho0).frobenius_norm() < 1e-14);
    CHECK(r2.hypothesis_residual > 0.0);
    CHECK(r2.residual <= r2.kappa * r2.hypothesis_residual + 1e-15);

    const auto s = sample(8).verified(1e-9);
    const auto rho = random_state(s.out().source, 1).op();
    const auto cs = apply(hs_dual(s.inner()), identity_tensor(s.out(), rho));
    const auto r3 = lemma1_decompose(s.in(), cs);
    CHECK(r3.residual <= 1e-8);
    CHECK(is_positive(r3.rho, 1e-9).positive);
    CHECK(std::abs(trace(r3.rho) - 1.0) <= 1e-9);
}
