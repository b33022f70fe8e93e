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

#include "supermap_forge/supermap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "supermap_forge/error.hpp"

namespace smf {

namespace {

Eigen::Index ix(std::size_t n) { return static_cast<Eigen::Index>(n); }

} // namespace

HomAlgebra hom_algebra(const Algebra& source, const Algebra& target) {
    return HomAlgebra{source, target, Algebra::product(target, source)};
}

BlockOperator choi_operator(const HomAlgebra& hom, const CpMap& f) {
    require_same_algebra(hom.source, f.source(), "choi_operator source");
    require_same_algebra(hom.target, f.target(), "choi_operator target");
    return BlockOperator(hom.algebra, f.choi_blocks());
}

CpMap as_cpmap(const HomAlgebra& hom, const BlockOperator& c) {
    require_same_algebra(hom.algebra, c.algebra(), "as_cpmap");
    return CpMap::from_choi_unchecked(hom.source, hom.target, c.blocks());
}

BlockOperator trace_output(const HomAlgebra& hom, const BlockOperator& c) {
    require_same_algebra(hom.algebra, c.algebra(), "trace_output");
    const auto ni = hom.source.size();
    std::vector<Matrix> out;
    out.reserve(ni);
    for (std::size_t i = 0; i < ni; ++i) {
        const auto di = ix(hom.source.dim(i));
        Matrix acc = Matrix::Zero(di, di);
        for (std::size_t j = 0; j < hom.target.size(); ++j) {
            acc += linalg::trace_first(c.block(j * ni + i), hom.target.dim(j), hom.source.dim(i));
        }
        out.push_back(std::move(acc));
    }
    return BlockOperator(hom.source, std::move(out));
}

BlockOperator identity_tensor(const HomAlgebra& hom, const BlockOperator& x) {
    require_same_algebra(hom.source, x.algebra(), "identity_tensor");
    std::vector<Matrix> out;
    out.reserve(hom.algebra.size());
    for (std::size_t j = 0; j < hom.target.size(); ++j) {
        const auto dj = ix(hom.target.dim(j));
        for (std::size_t i = 0; i < hom.source.size(); ++i) {
            out.push_back(linalg::kron(Matrix::Identity(dj, dj), x.block(i)));
        }
    }
    return BlockOperator(hom.algebra, std::move(out));
}

BlockOperator tp_section(const HomAlgebra& hom, const BlockOperator& x) {
    return Complex(1.0 / static_cast<double>(hom.output_dim())) * identity_tensor(hom, x);
}

BlockCheck is_tp_choi(const HomAlgebra& hom, const BlockOperator& c, double tol) {
    const auto t = trace_output(hom, c);
    BlockCheck out;
    out.ok = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto d = ix(hom.source.dim(i));
        const double r = (t.block(i) - Matrix::Identity(d, d)).norm();
        out.residuals.push_back(r);
        if (!(r <= tol)) out.ok = false;
    }
    return out;
}

std::vector<BlockOperator> tp_kernel_basis(const HomAlgebra& hom) {
    // Project the Hermitian matrix-unit basis onto ker(Tr_out) along the
    // section, then orthonormalise in real coordinates (re and im parts of
    // every entry); Re Tr(x^dagger y) is the Euclidean product there.
    const Algebra& alg = hom.algebra;
    std::size_t coords = 0;
    for (auto d : alg.dims()) coords += 2 * d * d;

    auto to_real = [&](const BlockOperator& x) {
        RealVector v(ix(coords));
        Eigen::Index k = 0;
        for (const auto& b : x.blocks()) {
            for (Eigen::Index r = 0; r < b.rows(); ++r) {
                for (Eigen::Index c = 0; c < b.cols(); ++c) {
                    v(k++) = b(r, c).real();
                    v(k++) = b(r, c).imag();
                }
            }
        }
        return v;
    };
    auto from_real = [&](const RealVector& v) {
        std::vector<Matrix> blocks;
        Eigen::Index k = 0;
        for (auto d : alg.dims()) {
            Matrix b(ix(d), ix(d));
            for (Eigen::Index r = 0; r < b.rows(); ++r) {
                for (Eigen::Index c = 0; c < b.cols(); ++c) {
                    b(r, c) = Complex(v(k), v(k + 1));
                    k += 2;
                }
            }
            blocks.push_back(0.5 * (b + b.adjoint()));
        }
        return BlockOperator(alg, std::move(blocks));
    };

    std::vector<RealVector> columns;
    for (std::size_t blk = 0; blk < alg.size(); ++blk) {
        const auto d = alg.dim(blk);
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = a; b < d; ++b) {
                std::vector<BlockOperator> herm;
                if (a == b) {
                    herm.push_back(BlockOperator::unit(alg, blk, a, a));
                } else {
                    const auto eab = BlockOperator::unit(alg, blk, a, b);
                    const auto eba = BlockOperator::unit(alg, blk, b, a);
                    herm.push_back(eab + eba);
                    herm.push_back(Complex(0.0, 1.0) * (eab - eba));
                }
                for (const auto& h : herm) {
                    const auto p = h - tp_section(hom, trace_output(hom, h));
                    columns.push_back(to_real(p));
                }
            }
        }
    }
    Eigen::MatrixXd m(ix(coords), ix(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) m.col(ix(c)) = columns[c];

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    const double cutoff = 1e-10 * (s.size() ? s(0) : 0.0);
    std::vector<BlockOperator> basis;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (s(k) <= cutoff) break;
        basis.push_back(from_real(svd.matrixU().col(k)));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Supermap
// ---------------------------------------------------------------------------

Supermap::Supermap(HomAlgebra in, HomAlgebra out, CpMap inner)
    : in_(std::move(in)), out_(std::move(out)), inner_(std::move(inner)) {
    require_same_algebra(in_.algebra, inner_.source(), "supermap source");
    require_same_algebra(out_.algebra, inner_.target(), "supermap target");
}

Supermap Supermap::identity(const Algebra& a, const Algebra& b) {
    auto hom = hom_algebra(a, b);
    return Supermap(hom, hom, CpMap::identity(hom.algebra));
}

Supermap Supermap::verified(double tol) const {
    const auto report = verify_deterministic(*this, tol);
    if (!report.verdict) {
        std::ostringstream os;
        os << "cp_ok=" << report.cp_ok << " cp_residual=" << report.cp_residual
           << " kernel_residual=" << report.kernel_residual
           << " n_unital_residual=" << report.n_unital_residual << " (tol " << tol << ")";
        throw Error(Errc::NotDeterministic, os.str());
    }
    Supermap copy = *this;
    copy.deterministic_ = true;
    return copy;
}

BlockOperator apply_to_choi(const Supermap& s, const BlockOperator& c) {
    require_same_algebra(s.in().algebra, c.algebra(), "apply_to_choi");
    return apply(s.inner(), c);
}

namespace {

std::vector<Matrix> n_choi_blocks(const Supermap& s) {
    return choi_blocks_from_action(s.in().source, s.out().source, [&](const BlockOperator& x) {
        return trace_output(s.out(), apply_to_choi(s, tp_section(s.in(), x)));
    });
}

} // namespace

CpMap extract_n(const Supermap& s, double tol) {
    return CpMap::from_choi(s.in().source, s.out().source, n_choi_blocks(s), tol);
}

VerificationReport verify_deterministic(const Supermap& s, double tol) {
    if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "verify_deterministic: tol must be > 0");
    VerificationReport r;
    r.tol = tol;

    const auto cp = is_cp(s.inner(), tol);
    r.cp_ok = cp.ok;
    r.cp_residual = cp.max_residual();

    for (const auto& b : tp_kernel_basis(s.in())) {
        const double k = trace_output(s.out(), apply_to_choi(s, b)).frobenius_norm();
        r.kernel_residual = std::max(r.kernel_residual, k);
    }

    auto n = CpMap::from_choi_unchecked(s.in().source, s.out().source, n_choi_blocks(s));
    const auto unital = is_unital(n, tol);
    double u2 = 0.0;
    for (double x : unital.residuals) u2 += x * x;
    r.n_unital_residual = std::sqrt(u2);
    r.n_cp_ok = is_cp(n, tol).ok;
    r.n_map = std::move(n);

    r.verdict = r.cp_ok && r.kernel_residual <= tol && r.n_unital_residual <= tol;
    return r;
}

Lemma1Result lemma1_decompose(const HomAlgebra& hom, const BlockOperator& c, double /*tol*/) {
    require_same_algebra(hom.algebra, c.algebra(), "lemma1_decompose");
    const double dim_out = static_cast<double>(hom.output_dim());
    Lemma1Result out{Complex(1.0 / dim_out) * trace_output(hom, c), 0.0, 0.0, 0.0};
    out.residual = (c - identity_tensor(hom, out.rho)).frobenius_norm();

    // Probes: the interior TP point and its epsilon-steps along the kernel.
    const auto base = tp_section(hom, BlockOperator::identity(hom.source));
    const double eps = 0.5 / dim_out;
    const auto dirs = tp_kernel_basis(hom);
    auto pairing = [](const BlockOperator& x, const BlockOperator& f) { return trace(x * f); };

    out.hypothesis_residual = std::abs(pairing(c, base) - 1.0);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ix(dirs.size() + 1), ix(dirs.size()));
    for (std::size_t a = 0; a < dirs.size(); ++a) {
        const auto probe = base + Complex(eps) * dirs[a];
        out.hypothesis_residual = std::max(out.hypothesis_residual, std::abs(pairing(c, probe) - 1.0));
        for (std::size_t e = 0; e < dirs.size(); ++e) {
            m(ix(a + 1), ix(e)) = pairing(dirs[e], probe).real();
        }
    }
    for (std::size_t e = 0; e < dirs.size(); ++e) m(0, ix(e)) = pairing(dirs[e], base).real();
    if (dirs.empty()) {
        out.kappa = 1.0;
    } else {
        const auto s = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
        out.kappa = 1.0 / s(s.size() - 1);
    }
    return out;
}

} // namespace smf
