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

#include "supermap_forge/demos.hpp"
#include "supermap_forge/realize.hpp"
#include "support.hpp"

using namespace smf;
using smf::test::error_code;

namespace {

const Algebra q2 = Algebra::from_dims({2});

Supermap sample(std::uint64_t seed) {
    return random_supermap_from_circuit(Algebra::from_dims({2, 1}), Algebra::from_dims({1, 2}),
                                        Algebra::from_dims({1, 2}), Algebra::from_dims({2}), 2, seed)
        .verified(1e-9);
}

// Compares x -> V^dagger (x (x) Id_env) V, i.e. the Heisenberg-picture map, against `expect`.
double dilation_mismatch(const StinespringDilation& dil, const CpMap& expect) {
    return dil.to_cpmap().choi_distance(expect);
}

} // namespace

TEST_CASE("pad_environment") {
    // |I| = 2, |K| = 1 with r = {2, 3}
    const auto pad = pad_environment(2, 1, {2, 3}, {4, 4});
    CHECK(pad.p_dim == 3);
    CHECK((pad.injection(0, 0) - Matrix::Identity(3, 2)).norm() == 0.0);
    CHECK(pad.complement_dim(0, 0) == 1);
    const auto ones = pad_environment(2, 2, {1, 1, 1, 1}, {1, 1, 1, 1});
    CHECK(ones.p_dim == 1);
    CHECK(ones.injection(1, 1)(0, 0) == Complex(1.0));
    CHECK(pad_environment(1, 1, {0}, {1}).p_dim == 1);
    CHECK(error_code([] { pad_environment(1, 1, {5}, {4}); }) == Errc::BoundViolated);

    // H_in dims (2,3), K_in dims (2,2)
    CHECK(p_dim_bound(Algebra::from_dims({2, 3}), Algebra::from_dims({2, 2})) == 6);
}

TEST_CASE("left and right dilations") {
    const auto s = sample(1);
    const auto n = extract_n(s);
    const auto phi = choi_from_action(s.in().algebra, s.out().source, [&](const BlockOperator& x) {
        return trace_output(s.out(), apply_to_choi(s, x));
    });
    const auto left = left_dilation(s);
    CHECK(dilation_mismatch(left, phi) < 1e-9);
    const auto right = right_dilation(n, s.in());
    CHECK(dilation_mismatch(right, phi) < 1e-9);
    CHECK(right.is_minimal());
    CHECK(std::isfinite(right.gram_condition()));

    const auto raw = random_supermap_from_circuit(q2, q2, q2, q2, 1, 3);
    CHECK(error_code([&] { left_dilation(raw); }) == Errc::VerifyRequired);
    CHECK(error_code([&] { right_dilation(2.0 * n, s.in()); }) == Errc::NotUnital);

    // |L| = 1 and dim K_out = 1: nothing to bend.
    const auto flat = random_supermap_from_circuit(q2, q2, q2, Algebra::scalars(), 1, 4).verified(1e-9);
    const auto plain = minimal_stinespring(flat.inner());
    const auto bent = left_dilation(flat);
    CHECK(bent.env_dims() == plain.env_dims());
    for (std::size_t k = 0; k < plain.kraus().ops.size(); ++k) {
        for (std::size_t t = 0; t < plain.kraus().ops[k].size(); ++t) {
            CHECK((bent.kraus().ops[k][t] - plain.kraus().ops[k][t]).norm() == 0.0);
        }
    }
}

TEST_CASE("solve_w") {
    const auto s = sample(2);
    const auto right = right_dilation(extract_n(s), s.in());
    const auto same = solve_w(right, right);
    for (const auto& w : same.w.blocks) CHECK((w - Matrix::Identity(w.rows(), w.cols())).norm() < 1e-9);

    // Planted unitary on each component's environment.
    KrausDecomposition rotated = right.kraus();
    std::vector<Matrix> planted;
    for (std::size_t k = 0; k < rotated.ops.size(); ++k) {
        const auto r = rotated.ops[k].size();
        const Matrix u = r ? test::random_isometry(r, r, 40 + k) : Matrix(0, 0);
        std::vector<Matrix> ops;
        for (std::size_t a = 0; a < r; ++a) {
            Matrix acc = Matrix::Zero(right.kraus().ops[k][0].rows(), right.kraus().ops[k][0].cols());
            for (std::size_t b = 0; b < r; ++b) {
                acc += u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * right.kraus().ops[k][b];
            }
            ops.push_back(acc);
        }
        rotated.ops[k] = ops;
        planted.push_back(u);
    }
    const auto rec = solve_w(right, StinespringDilation(rotated));
    for (std::size_t k = 0; k < planted.size(); ++k) CHECK((rec.w.blocks[k] - planted[k]).norm() < 1e-9);

    // An extra zero environment row: W is the basis inclusion.
    KrausDecomposition padded = right.kraus();
    for (auto& ops : padded.ops) {
        if (!ops.empty()) ops.push_back(Matrix::Zero(ops[0].rows(), ops[0].cols()));
    }
    const auto inc = solve_w(right, StinespringDilation(padded));
    for (const auto& w : inc.w.blocks) CHECK((w - Matrix::Identity(w.rows(), w.cols())).norm() < 1e-9);

    // Rank-deficient right dilation
    CHECK(error_code([&] { solve_w(StinespringDilation(padded), right); }) == Errc::NotMinimal);
    // Different maps
    const auto other = right_dilation(extract_n(sample(3)), s.in());
    CHECK(error_code([&] { solve_w(right, other); }) == Errc::ResidualTooLarge);
}

TEST_CASE("assemble_e and assemble_g") {
    const auto bit = Algebra::from_dims({1, 1});
    // N = identity on C + C: E relabels k -> i = k with trivial memory.
    const auto n_dil = minimal_stinespring(CpMap::identity(bit));
    const auto pad = pad_environment(2, 2, {1, 0, 0, 1}, {1, 1, 1, 1});
    const auto e = assemble_e(n_dil, pad);
    CHECK(is_tp(e.map(), 1e-12).ok);
    CHECK(e.map().choi_distance(CpMap::from_choi_unchecked(bit, bit, CpMap::identity(bit).choi_blocks())) < 1e-14);

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto s = sample(seed + 10);
        const auto r = realize(s, 1e-9);
        CHECK(is_tp(r.e_channel.map(), 1e-9).ok);
        CHECK(is_tp(r.g_channel.map(), 1e-9).ok);
        CHECK(is_cp(r.g_channel.map(), 1e-9).ok);
    }
}

TEST_CASE("completion policy on a complement-only block") {
    // Identity supermap on classical C+C -> C+C: r_{ik} vanishes off the diagonal.
    const auto bit = Algebra::from_dims({1, 1});
    const auto s = Supermap::identity(bit, bit).verified(1e-9);
    for (auto policy : {Completion::PureFirstBlock, Completion::MaximallyMixed}) {
        const auto r = realize(s, 1e-9, policy);
        CHECK(r.p_dim == 1);
        // G block (i, j, k) = (0, 0, 1) only meets the complement of iota_{01}.
        const auto& gsrc = r.g_channel.source();
        const std::size_t g = (0 * 2 + 0) * 2 + 1;
        const auto out = apply(r.g_channel.map(), BlockOperator::unit(gsrc, g, 0, 0));
        CHECK(std::abs(trace(out) - 1.0) < 1e-14);
        if (policy == Completion::PureFirstBlock) CHECK(out.block(0)(0, 0) == Complex(1.0));
        if (policy == Completion::MaximallyMixed) CHECK(std::abs(out.block(1)(0, 0) - 0.5) < 1e-14);
        CHECK(check_realisation(r, s, 3, 1e-9, 1).passed);
    }
}

TEST_CASE("realize: identity supermaps and example shapes") {
    const auto s = Supermap::identity(q2, q2).verified(1e-9);
    const auto r = realize(s, 1e-9);
    const auto chk = check_realisation(r, s, 5, 1e-9, 2);
    CHECK(chk.passed);
    CHECK(chk.max_deviation() <= 1e-9);
    CHECK(chk.spanning_elements == 16);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto f = random_channel(q2, q2, seed);
        CHECK(evaluate_circuit(r, f).map().choi_distance(f.map()) <= 1e-7);
    }

    const auto cdp = run_demo("cdp08", 1e-8, 3);
    CHECK(cdp.ok());
    CHECK(cdp.realisation.e_channel.source().size() == 1);
    const auto mm = run_demo("multimeter", 1e-8, 3);
    CHECK(mm.ok());
    for (auto d : mm.realisation.g_channel.target().dims()) CHECK(d == 1);
    const auto povm = run_demo("povm-to-state", 1e-8, 3);
    CHECK(povm.ok());
    // Evaluating at a POVM yields a state preparation (trivial input).
    const auto measure = random_channel(q2, Algebra::from_dims({1, 1}), 5);
    const auto prep = evaluate_circuit(povm.realisation, measure);
    CHECK(prep.source().size() == 1);
    CHECK(prep.source().dim(0) == 1);
    CHECK(std::abs(prep.map().choi(0, 0).trace() - 1.0) < 1e-10);
}

TEST_CASE("realize: random round trips and completion invariance") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto s = sample(seed + 30);
        const auto r1 = realize(s, 1e-9, Completion::PureFirstBlock);
        const auto r2 = realize(s, 1e-9, Completion::MaximallyMixed);
        CHECK(check_realisation(r1, s, 10, 1e-6, seed).passed);
        CHECK(check_realisation(r2, s, 10, 1e-6, seed).passed);
        CHECK(r1.p_dim <= r1.p_bound);
        CHECK(r1.w_isometry_defect <= 1e-8);
        CHECK(r1.w_residual <= 1e-8);
        for (std::uint64_t t = 0; t < 3; ++t) {
            const auto f = random_channel(s.in().source, s.in().target, t);
            const auto o1 = evaluate_circuit(r1, f).map();
            const auto o2 = evaluate_circuit(r2, f).map();
            CHECK(o1.choi_distance(o2) <= 1e-8);
        }
    }
    CHECK(error_code([] {
              const auto bad = perturb_supermap(sample(1), 0.01, PerturbMode::TpBreaking, 1);
              realize(bad, 1e-9);
          }) == Errc::NotDeterministic);
    CHECK(error_code([] {
              const auto s = sample(1);
              const auto r = realize(s, 1e-9);
              evaluate_circuit(r, random_channel(q2, q2, 1));
          }) == Errc::AlgebraMismatch);
}

TEST_CASE("check_realisation detects the wrong supermap") {
    const auto s = sample(50);
    const auto t = sample(51);
    const auto r = realize(s, 1e-9);
    const auto c = check_realisation(r, t, 0, 1e-6, 0);
    CHECK_FALSE(c.passed);
    CHECK(c.trials == 0);
    CHECK(c.spanning_elements > 0);
}
