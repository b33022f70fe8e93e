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

#include "supermap_forge/cpmaps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "supermap_forge/error.hpp"

namespace smf {

namespace {

Eigen::Index ix(std::size_t n) { return static_cast<Eigen::Index>(n); }

void check_choi_shapes(const Algebra& source, const Algebra& target,
                       const std::vector<Matrix>& choi) {
    if (choi.size() != source.size() * target.size()) {
        throw Error(Errc::ShapeMismatch, "expected " + std::to_string(source.size() * target.size()) +
                                             " Choi blocks, got " + std::to_string(choi.size()));
    }
    for (std::size_t j = 0; j < target.size(); ++j) {
        for (std::size_t i = 0; i < source.size(); ++i) {
            const auto n = ix(target.dim(j) * source.dim(i));
            const auto& c = choi[j * source.size() + i];
            if (c.rows() != n || c.cols() != n) {
                throw Error(Errc::ShapeMismatch, "Choi block (" + std::to_string(j) + "," +
                                                     std::to_string(i) + ") has wrong size");
            }
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// CpMap
// ---------------------------------------------------------------------------

CpMap::CpMap(Algebra source, Algebra target, std::vector<Matrix> choi)
    : source_(std::move(source)), target_(std::move(target)), choi_(std::move(choi)) {
    check_choi_shapes(source_, target_, choi_);
}

CpMap CpMap::from_choi_unchecked(Algebra source, Algebra target, std::vector<Matrix> choi) {
    return CpMap(std::move(source), std::move(target), std::move(choi));
}

CpMap CpMap::from_choi(Algebra source, Algebra target, std::vector<Matrix> choi, double tol) {
    CpMap m(std::move(source), std::move(target), std::move(choi));
    auto cp = is_cp(m, tol);
    if (!cp) {
        throw Error(Errc::NotCp, "Choi block violates positivity by " +
                                     std::to_string(cp.max_residual()));
    }
    return m;
}

CpMap CpMap::identity(const Algebra& a) {
    std::vector<Matrix> choi;
    choi.reserve(a.size() * a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto n = ix(a.dim(j) * a.dim(i));
            if (i != j) {
                choi.push_back(Matrix::Zero(n, n));
                continue;
            }
            // sum_ab E_ab (x) E_ab = |Omega><Omega|, Omega = sum_a |a>|a>
            Vector omega = Vector::Zero(n);
            for (std::size_t k = 0; k < a.dim(i); ++k) omega(ix(k * a.dim(i) + k)) = 1.0;
            choi.push_back(omega * omega.adjoint());
        }
    }
    return CpMap(a, a, std::move(choi));
}

double CpMap::choi_distance(const CpMap& other) const {
    require_same_algebra(source_, other.source_, "choi_distance source");
    require_same_algebra(target_, other.target_, "choi_distance target");
    double d = 0.0;
    for (std::size_t k = 0; k < choi_.size(); ++k) d = std::max(d, (choi_[k] - other.choi_[k]).norm());
    return d;
}

CpMap operator*(double s, const CpMap& m) {
    auto blocks = m.choi_blocks();
    for (auto& b : blocks) b *= s;
    return CpMap::from_choi_unchecked(m.source(), m.target(), std::move(blocks));
}

CpMap operator+(const CpMap& a, const CpMap& b) {
    require_same_algebra(a.source(), b.source(), "CpMap add source");
    require_same_algebra(a.target(), b.target(), "CpMap add target");
    auto blocks = a.choi_blocks();
    for (std::size_t k = 0; k < blocks.size(); ++k) blocks[k] += b.choi_blocks()[k];
    return CpMap::from_choi_unchecked(a.source(), a.target(), std::move(blocks));
}

Matrix apply_component(const CpMap& m, std::size_t target_block, std::size_t source_block,
                       const Matrix& x) {
    return linalg::apply_choi_block(m.choi(target_block, source_block), m.target().dim(target_block),
                                    m.source().dim(source_block), x);
}

BlockOperator apply(const CpMap& m, const BlockOperator& x) {
    require_same_algebra(m.source(), x.algebra(), "apply");
    std::vector<Matrix> out;
    out.reserve(m.target().size());
    for (std::size_t j = 0; j < m.target().size(); ++j) {
        const auto d = ix(m.target().dim(j));
        Matrix acc = Matrix::Zero(d, d);
        for (std::size_t i = 0; i < m.source().size(); ++i) {
            if (x.block(i).isZero(0.0)) continue;
            acc += apply_component(m, j, i, x.block(i));
        }
        out.push_back(std::move(acc));
    }
    return BlockOperator(m.target(), std::move(out));
}

std::vector<Matrix> choi_blocks_from_action(const Algebra& source, const Algebra& target,
                                            const LinearAction& action) {
    std::vector<Matrix> choi;
    choi.reserve(source.size() * target.size());
    for (std::size_t j = 0; j < target.size(); ++j) {
        for (std::size_t i = 0; i < source.size(); ++i) {
            const auto n = ix(target.dim(j) * source.dim(i));
            choi.push_back(Matrix::Zero(n, n));
        }
    }
    for (std::size_t i = 0; i < source.size(); ++i) {
        const auto di = source.dim(i);
        for (std::size_t a = 0; a < di; ++a) {
            for (std::size_t b = 0; b < di; ++b) {
                const BlockOperator image = action(BlockOperator::unit(source, i, a, b));
                require_same_algebra(target, image.algebra(), "choi_from_action image");
                const Matrix unit = linalg::matrix_unit(di, a, b);
                for (std::size_t j = 0; j < target.size(); ++j) {
                    choi[j * source.size() + i] += linalg::kron(image.block(j), unit);
                }
            }
        }
    }
    return choi;
}

CpMap choi_from_action(const Algebra& source, const Algebra& target, const LinearAction& action,
                       double tol) {
    return CpMap::from_choi(source, target, choi_blocks_from_action(source, target, action), tol);
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

double BlockCheck::max_residual() const {
    double r = 0.0;
    for (double x : residuals) r = std::max(r, x);
    return r;
}

BlockCheck is_tp(const CpMap& m, double tol) {
    BlockCheck out;
    out.ok = true;
    for (std::size_t i = 0; i < m.source().size(); ++i) {
        const auto di = ix(m.source().dim(i));
        Matrix acc = Matrix::Zero(di, di);
        for (std::size_t j = 0; j < m.target().size(); ++j) {
            acc += linalg::trace_first(m.choi(j, i), m.target().dim(j), m.source().dim(i));
        }
        const double r = (acc - Matrix::Identity(di, di)).norm();
        out.residuals.push_back(r);
        if (!(r <= tol)) out.ok = false;
    }
    return out;
}

BlockCheck is_unital(const CpMap& m, double tol) {
    const auto image = apply(m, BlockOperator::identity(m.source()));
    BlockCheck out;
    out.ok = true;
    for (std::size_t j = 0; j < image.size(); ++j) {
        const auto d = ix(m.target().dim(j));
        const double r = (image.block(j) - Matrix::Identity(d, d)).norm();
        out.residuals.push_back(r);
        if (!(r <= tol)) out.ok = false;
    }
    return out;
}

BlockCheck is_cp(const CpMap& m, double tol) {
    BlockCheck out;
    out.ok = true;
    for (const auto& c : m.choi_blocks()) {
        const double defect = linalg::hermitian_defect(c);
        const double min_eig = c.size() ? linalg::hermitian_eigen(c).values.minCoeff() : 0.0;
        const double r = std::max(defect, std::max(0.0, -min_eig));
        out.residuals.push_back(r);
        if (!(r <= tol)) out.ok = false;
    }
    return out;
}

Channel::Channel(CpMap map, double tol) : map_(std::move(map)) {
    auto tp = is_tp(map_, tol);
    if (!tp) {
        throw Error(Errc::NotTp, "trace-preservation residual " + std::to_string(tp.max_residual()));
    }
}

// ---------------------------------------------------------------------------
// Kraus and Stinespring
// ---------------------------------------------------------------------------

CpMap KrausDecomposition::to_cpmap() const {
    std::vector<Matrix> choi;
    choi.reserve(ops.size());
    for (std::size_t j = 0; j < target.size(); ++j) {
        for (std::size_t i = 0; i < source.size(); ++i) {
            choi.push_back(linalg::choi_from_kraus(at(j, i), target.dim(j), source.dim(i)));
        }
    }
    return CpMap::from_choi_unchecked(source, target, std::move(choi));
}

KrausDecomposition kraus_from_choi(const CpMap& m, double rank_tol, double tol) {
    std::vector<linalg::HermitianEigen> eigs;
    eigs.reserve(m.choi_blocks().size());
    double top = 0.0;
    for (const auto& c : m.choi_blocks()) {
        if (linalg::hermitian_defect(c) > tol) {
            throw Error(Errc::NotCp, "Choi block is not Hermitian");
        }
        eigs.push_back(linalg::hermitian_eigen(c));
        if (eigs.back().values.size()) top = std::max(top, eigs.back().values.maxCoeff());
    }
    const double cutoff = rank_tol >= 0.0 ? rank_tol : 1e-10 * top;

    KrausDecomposition out{m.source(), m.target(), {}};
    out.ops.resize(m.choi_blocks().size());
    for (std::size_t j = 0; j < m.target().size(); ++j) {
        for (std::size_t i = 0; i < m.source().size(); ++i) {
            const auto k = m.index(j, i);
            const auto& e = eigs[k];
            for (Eigen::Index t = e.values.size(); t-- > 0;) {
                const double lambda = e.values(t);
                if (lambda < -std::max(cutoff, tol)) {
                    throw Error(Errc::NotCp, "Choi eigenvalue " + std::to_string(lambda));
                }
                if (lambda <= cutoff) continue;
                const Vector v = std::sqrt(lambda) * e.vectors.col(t);
                out.ops[k].push_back(linalg::unflatten(v, m.target().dim(j), m.source().dim(i)));
            }
        }
    }
    return out;
}

StinespringDilation::StinespringDilation(KrausDecomposition kraus) : kraus_(std::move(kraus)) {
    if (kraus_.ops.size() != kraus_.source.size() * kraus_.target.size()) {
        throw Error(Errc::ShapeMismatch, "Kraus family does not cover every block pair");
    }
    for (std::size_t j = 0; j < kraus_.target.size(); ++j) {
        for (std::size_t i = 0; i < kraus_.source.size(); ++i) {
            for (const auto& a : kraus_.at(j, i)) {
                if (a.rows() != ix(kraus_.target.dim(j)) || a.cols() != ix(kraus_.source.dim(i))) {
                    throw Error(Errc::ShapeMismatch, "Kraus operator has wrong shape");
                }
            }
        }
    }
}

std::vector<std::size_t> StinespringDilation::env_dims() const {
    std::vector<std::size_t> out;
    out.reserve(kraus_.ops.size());
    for (const auto& l : kraus_.ops) out.push_back(l.size());
    return out;
}

Matrix StinespringDilation::isometry(std::size_t i) const {
    std::size_t rows = 0;
    for (std::size_t j = 0; j < target().size(); ++j) rows += target().dim(j) * env_dim(j, i);
    Matrix v = Matrix::Zero(ix(rows), ix(source().dim(i)));
    std::size_t offset = 0;
    for (std::size_t j = 0; j < target().size(); ++j) {
        const auto& ops = kraus_.at(j, i);
        const std::size_t r = ops.size();
        for (std::size_t alpha = 0; alpha < r; ++alpha) {
            for (std::size_t p = 0; p < target().dim(j); ++p) {
                v.row(ix(offset + p * r + alpha)) = ops[alpha].row(ix(p));
            }
        }
        offset += target().dim(j) * r;
    }
    return v;
}

double StinespringDilation::isometry_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < source().size(); ++i) {
        const Matrix v = isometry(i);
        const auto n = ix(source().dim(i));
        d = std::max(d, (v.adjoint() * v - Matrix::Identity(n, n)).norm());
    }
    return d;
}

BlockOperator StinespringDilation::apply(const BlockOperator& x) const {
    require_same_algebra(source(), x.algebra(), "dilation apply");
    std::vector<Matrix> out;
    for (std::size_t j = 0; j < target().size(); ++j) {
        const auto d = ix(target().dim(j));
        Matrix acc = Matrix::Zero(d, d);
        for (std::size_t i = 0; i < source().size(); ++i) {
            for (const auto& a : kraus_.at(j, i)) acc += a * x.block(i) * a.adjoint();
        }
        out.push_back(std::move(acc));
    }
    return BlockOperator(target(), std::move(out));
}

Matrix StinespringDilation::gram(std::size_t j, std::size_t i) const {
    const auto& ops = kraus_.at(j, i);
    const auto r = ix(ops.size());
    Matrix g(r, r);
    for (Eigen::Index a = 0; a < r; ++a) {
        for (Eigen::Index b = 0; b < r; ++b) {
            g(a, b) = (ops[static_cast<std::size_t>(a)].adjoint() * ops[static_cast<std::size_t>(b)]).trace();
        }
    }
    return g;
}

namespace {

struct GramStats {
    double min_eig = std::numeric_limits<double>::infinity();
    double condition = 1.0;
    bool minimal = true;
};

GramStats gram_stats(const StinespringDilation& d, double rel_tol) {
    GramStats s;
    for (std::size_t j = 0; j < d.target().size(); ++j) {
        for (std::size_t i = 0; i < d.source().size(); ++i) {
            if (d.env_dim(j, i) == 0) continue;
            const auto vals = linalg::hermitian_eigen(d.gram(j, i)).values;
            const double lo = vals.minCoeff();
            const double hi = vals.maxCoeff();
            s.min_eig = std::min(s.min_eig, lo);
            s.condition = std::max(s.condition, lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity());
            if (!(lo > rel_tol * hi)) s.minimal = false;
        }
    }
    return s;
}

} // namespace

double StinespringDilation::min_gram_eigenvalue() const { return gram_stats(*this, 0.0).min_eig; }
double StinespringDilation::gram_condition() const { return gram_stats(*this, 0.0).condition; }
bool StinespringDilation::is_minimal(double rel_tol) const { return gram_stats(*this, rel_tol).minimal; }

StinespringDilation minimal_stinespring(const CpMap& m, double tol) {
    return StinespringDilation(kraus_from_choi(m, -1.0, tol));
}

Intertwiner solve_intertwiner(const StinespringDilation& from, const StinespringDilation& to,
                              double rel_cutoff) {
    require_same_algebra(from.source(), to.source(), "solve_intertwiner source");
    require_same_algebra(from.target(), to.target(), "solve_intertwiner target");
    Intertwiner out;
    out.min_singular = std::numeric_limits<double>::infinity();
    double res2 = 0.0, iso2 = 0.0, piso2 = 0.0;
    for (std::size_t j = 0; j < from.target().size(); ++j) {
        for (std::size_t i = 0; i < from.source().size(); ++i) {
            const auto& r_ops = from.kraus().at(j, i);
            const auto& l_ops = to.kraus().at(j, i);
            const auto n = ix(from.target().dim(j) * from.source().dim(i));
            Matrix r(n, ix(r_ops.size()));
            for (std::size_t b = 0; b < r_ops.size(); ++b) r.col(ix(b)) = linalg::flatten(r_ops[b]);
            Matrix l(n, ix(l_ops.size()));
            for (std::size_t a = 0; a < l_ops.size(); ++a) l.col(ix(a)) = linalg::flatten(l_ops[a]);

            // L = R sigma^T
            const auto pinv = linalg::pseudo_inverse(r, rel_cutoff);
            if (pinv.rank < r_ops.size()) out.full_rank = false;
            if (pinv.rank > 0) out.min_singular = std::min(out.min_singular, pinv.sigma_min_kept);
            Matrix sigma = (pinv.pinv * l).transpose();
            res2 += (l - r * sigma.transpose()).squaredNorm();
            const Matrix p = sigma.adjoint() * sigma;
            iso2 += (p - Matrix::Identity(p.rows(), p.cols())).squaredNorm();
            piso2 += (p * p - p).squaredNorm();
            out.blocks.push_back(std::move(sigma));
        }
    }
    out.residual = std::sqrt(res2);
    out.isometry_defect = std::sqrt(iso2);
    out.partial_isometry_defect = std::sqrt(piso2);
    if (!std::isfinite(out.min_singular)) out.min_singular = 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

CpMap hs_dual(const CpMap& m) {
    // D_{ij}[(a,p),(b,q)] = conj(C_{ji}[(p,a),(q,b)])
    const auto& src = m.source();
    const auto& tgt = m.target();
    std::vector<Matrix> choi;
    choi.reserve(m.choi_blocks().size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        for (std::size_t j = 0; j < tgt.size(); ++j) {
            const std::array<std::size_t, 2> dims{tgt.dim(j), src.dim(i)};
            const std::array<std::size_t, 2> perm{1, 0};
            choi.push_back(linalg::permute_factors(m.choi(j, i).conjugate(), dims, perm));
        }
    }
    return CpMap::from_choi_unchecked(tgt, src, std::move(choi));
}

CpMap compose(const CpMap& g, const CpMap& f, double tol) {
    require_same_algebra(f.target(), g.source(), "compose");
    return choi_from_action(f.source(), g.target(),
                            [&](const BlockOperator& x) { return apply(g, apply(f, x)); }, tol);
}

CpMap tensor(const CpMap& f, const CpMap& g) {
    const Algebra source = Algebra::product(f.source(), g.source());
    const Algebra target = Algebra::product(f.target(), g.target());
    std::vector<Matrix> choi(source.size() * target.size());
    for (std::size_t j1 = 0; j1 < f.target().size(); ++j1) {
        for (std::size_t j2 = 0; j2 < g.target().size(); ++j2) {
            const std::size_t j = j1 * g.target().size() + j2;
            for (std::size_t i1 = 0; i1 < f.source().size(); ++i1) {
                for (std::size_t i2 = 0; i2 < g.source().size(); ++i2) {
                    const std::size_t i = i1 * g.source().size() + i2;
                    const std::array<std::size_t, 4> dims{f.target().dim(j1), f.source().dim(i1),
                                                          g.target().dim(j2), g.source().dim(i2)};
                    const std::array<std::size_t, 4> perm{0, 2, 1, 3};
                    choi[j * source.size() + i] = linalg::permute_factors(
                        linalg::kron(f.choi(j1, i1), g.choi(j2, i2)), dims, perm);
                }
            }
        }
    }
    return CpMap::from_choi_unchecked(source, target, std::move(choi));
}

Algebra copy_target(const Algebra& a) {
    std::vector<Block> blocks;
    blocks.reserve(a.size());
    for (const auto& b : a.blocks()) blocks.push_back({"(" + b.label + "," + b.label + ")", b.dim});
    return Algebra(std::move(blocks));
}

namespace {

// Block-diagonal identity Choi between two algebras with equal block dims.
CpMap relabel_identity(const Algebra& source, const Algebra& target) {
    const auto id = CpMap::identity(source);
    return CpMap::from_choi_unchecked(source, target, id.choi_blocks());
}

} // namespace

Channel copy_channel(const Algebra& a) { return Channel(relabel_identity(a, copy_target(a))); }

Channel discard_copy(const Algebra& a) { return Channel(relabel_identity(copy_target(a), a)); }

CpMap trace_out_target_group(const CpMap& m, TargetGroup group) {
    const auto& src = m.source();
    if (group == TargetGroup::None) return m;
    if (group == TargetGroup::All) {
        const Algebra scalars = Algebra::scalars();
        std::vector<Matrix> choi;
        for (std::size_t i = 0; i < src.size(); ++i) {
            const auto di = ix(src.dim(i));
            Matrix acc = Matrix::Zero(di, di);
            for (std::size_t t = 0; t < m.target().size(); ++t) {
                acc += linalg::trace_first(m.choi(t, i), m.target().dim(t), src.dim(i));
            }
            choi.push_back(std::move(acc));
        }
        return CpMap::from_choi_unchecked(src, scalars, std::move(choi));
    }
    const ProductStructure* ps = m.target().product_structure();
    if (!ps) {
        throw Error(Errc::StructureMissing, "target " + m.target().describe() +
                                                " carries no product structure");
    }
    const Algebra& left = ps->left;
    const Algebra& right = ps->right;
    if (group == TargetGroup::Left) {
        std::vector<Matrix> choi;
        for (std::size_t q = 0; q < right.size(); ++q) {
            for (std::size_t i = 0; i < src.size(); ++i) {
                const auto n = ix(right.dim(q) * src.dim(i));
                Matrix acc = Matrix::Zero(n, n);
                for (std::size_t p = 0; p < left.size(); ++p) {
                    acc += linalg::trace_first(m.choi(ps->index(p, q), i), left.dim(p),
                                               right.dim(q) * src.dim(i));
                }
                choi.push_back(std::move(acc));
            }
        }
        return CpMap::from_choi_unchecked(src, right, std::move(choi));
    }
    std::vector<Matrix> choi;
    for (std::size_t p = 0; p < left.size(); ++p) {
        for (std::size_t i = 0; i < src.size(); ++i) {
            const auto n = ix(left.dim(p) * src.dim(i));
            Matrix acc = Matrix::Zero(n, n);
            for (std::size_t q = 0; q < right.size(); ++q) {
                const std::array<std::size_t, 3> dims{left.dim(p), right.dim(q), src.dim(i)};
                const std::array<std::size_t, 3> perm{0, 2, 1};
                const Matrix moved = linalg::permute_factors(m.choi(ps->index(p, q), i), dims, perm);
                acc += linalg::trace_second(moved, left.dim(p) * src.dim(i), right.dim(q));
            }
            choi.push_back(std::move(acc));
        }
    }
    return CpMap::from_choi_unchecked(src, left, std::move(choi));
}

} // namespace smf
