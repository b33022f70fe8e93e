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

#include "supermap_forge/realize.hpp"

#include <cmath>
#include <sstream>

#include "supermap_forge/error.hpp"
#include "supermap_forge/gen.hpp"

namespace smf {

namespace {

Eigen::Index ix(std::size_t n) { return static_cast<Eigen::Index>(n); }

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace

PaddedEnvironment pad_environment(std::size_t n_source, std::size_t n_control,
                                  const std::vector<std::size_t>& env_dims,
                                  const std::vector<std::size_t>& bound_dims) {
    if (env_dims.size() != n_source * n_control || bound_dims.size() != env_dims.size()) {
        throw Error(Errc::ShapeMismatch, "pad_environment: expected |I|*|K| entries");
    }
    PaddedEnvironment pad;
    pad.n_source = n_source;
    pad.n_control = n_control;
    pad.env_dims = env_dims;
    pad.p_dim = 1;
    for (std::size_t t = 0; t < env_dims.size(); ++t) {
        if (env_dims[t] > bound_dims[t]) {
            throw Error(Errc::BoundViolated, "environment (" + std::to_string(t / n_control) + "," +
                                                 std::to_string(t % n_control) + ") has dimension " +
                                                 std::to_string(env_dims[t]) + " > " +
                                                 std::to_string(bound_dims[t]));
        }
        pad.p_dim = std::max(pad.p_dim, env_dims[t]);
    }
    for (auto r : env_dims) {
        pad.injections.push_back(Matrix::Identity(ix(pad.p_dim), ix(r)));
    }
    return pad;
}

StinespringDilation bend_output(const StinespringDilation& s_dil, const Supermap& s) {
    const HomAlgebra& in = s.in();
    const HomAlgebra& out = s.out();
    const Algebra& c = out.source;
    const Algebra& d = out.target;
    KrausDecomposition k{in.algebra, c, {}};
    k.ops.resize(c.size() * in.algebra.size());
    for (std::size_t kk = 0; kk < c.size(); ++kk) {
        const auto ck = ix(c.dim(kk));
        for (std::size_t src = 0; src < in.algebra.size(); ++src) {
            auto& list = k.ops[kk * in.algebra.size() + src];
            for (std::size_t l = 0; l < d.size(); ++l) {
                const auto& ops = s_dil.kraus().at(l * c.size() + kk, src);
                for (std::size_t a = 0; a < d.dim(l); ++a) {
                    for (const auto& op : ops) list.push_back(op.middleRows(ix(a) * ck, ck));
                }
            }
        }
    }
    return StinespringDilation(std::move(k));
}

StinespringDilation left_dilation(const Supermap& s, double tol) {
    if (!s.is_deterministic()) {
        throw Error(Errc::VerifyRequired, "left_dilation needs a verified supermap");
    }
    return bend_output(minimal_stinespring(s.inner(), tol), s);
}

StinespringDilation trace_then(const StinespringDilation& n_dil, const HomAlgebra& hom) {
    const Algebra& c = n_dil.target();
    require_same_algebra(n_dil.source(), hom.source, "trace_then");
    KrausDecomposition k{hom.algebra, c, {}};
    k.ops.resize(c.size() * hom.algebra.size());
    for (std::size_t kk = 0; kk < c.size(); ++kk) {
        for (std::size_t j = 0; j < hom.target.size(); ++j) {
            const auto bj = hom.target.dim(j);
            for (std::size_t i = 0; i < hom.source.size(); ++i) {
                auto& list = k.ops[kk * hom.algebra.size() + j * hom.source.size() + i];
                for (std::size_t h = 0; h < bj; ++h) {
                    const Matrix bra = linalg::matrix_unit(bj, h, h).row(ix(h));
                    for (const auto& op : n_dil.kraus().at(kk, i)) list.push_back(linalg::kron(bra, op));
                }
            }
        }
    }
    return StinespringDilation(std::move(k));
}

StinespringDilation right_dilation(const CpMap& n, const HomAlgebra& hom, double tol) {
    const auto unital = is_unital(n, tol);
    if (!unital) {
        throw Error(Errc::NotUnital, "||N(Id) - Id|| = " + fmt(unital.max_residual()));
    }
    return trace_then(minimal_stinespring(n, tol), hom);
}

WSolution solve_w(const StinespringDilation& right, const StinespringDilation& left, double tol) {
    WSolution out;
    out.w = solve_intertwiner(right, left, 1e-10);
    if (!out.w.full_rank) {
        throw Error(Errc::NotMinimal, "right dilation is rank deficient (smallest kept singular value " +
                                          fmt(out.w.min_singular) + ")");
    }
    out.residual = out.w.residual;
    out.isometry_defect = out.w.isometry_defect;
    if (out.residual > 10.0 * tol || out.isometry_defect > 10.0 * tol) {
        throw Error(Errc::ResidualTooLarge, "W residual " + fmt(out.residual) + ", isometry defect " +
                                                fmt(out.isometry_defect) + " (tol " + fmt(tol) + ")");
    }
    return out;
}

std::string to_string(Completion c) {
    return c == Completion::PureFirstBlock ? "pure-first-block" : "maximally-mixed";
}

Completion completion_from_string(const std::string& name) {
    if (name == "pure-first-block") return Completion::PureFirstBlock;
    if (name == "maximally-mixed") return Completion::MaximallyMixed;
    throw Error(Errc::InvalidArgument, "unknown completion policy '" + name + "'");
}

Algebra e_target(const Algebra& a, std::size_t p_dim) {
    std::vector<Block> blocks;
    for (const auto& blk : a.blocks()) blocks.push_back({blk.label, p_dim * blk.dim});
    return Algebra(std::move(blocks));
}

Algebra g_source(const Algebra& a, const Algebra& b, const Algebra& c, std::size_t p_dim) {
    std::vector<Block> blocks;
    for (const auto& i : a.blocks()) {
        for (const auto& j : b.blocks()) {
            for (const auto& k : c.blocks()) {
                blocks.push_back({"(" + i.label + "," + j.label + "," + k.label + ")", p_dim * j.dim});
            }
        }
    }
    return Algebra(std::move(blocks));
}

Channel assemble_e(const StinespringDilation& n_dil, const PaddedEnvironment& pad, double tol) {
    const Algebra& a = n_dil.source();
    const Algebra& c = n_dil.target();
    const Algebra target = e_target(a, pad.p_dim);
    KrausDecomposition k{c, target, {}};
    k.ops.resize(a.size() * c.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t kk = 0; kk < c.size(); ++kk) {
            const auto& ops = n_dil.kraus().at(kk, i);
            if (ops.empty()) continue;
            Matrix v = Matrix::Zero(ix(pad.p_dim * a.dim(i)), ix(c.dim(kk)));
            for (std::size_t b = 0; b < ops.size(); ++b) {
                v += linalg::kron(pad.injection(i, kk).col(ix(b)), ops[b].transpose());
            }
            k.ops[i * c.size() + kk].push_back(std::move(v));
        }
    }
    try {
        return Channel(k.to_cpmap(), tol);
    } catch (const Error& e) {
        if (e.code() != Errc::NotTp) throw;
        throw Error(Errc::NotUnital, std::string("E is not trace preserving: ") + e.what());
    }
}

Channel assemble_g(const WSolution& w, const StinespringDilation& s_dil, const Supermap& s,
                   const PaddedEnvironment& pad, Completion completion, double tol) {
    if (w.residual > 10.0 * tol || w.isometry_defect > 10.0 * tol) {
        throw Error(Errc::IsometryDefect, "W isometry defect " + fmt(w.isometry_defect) +
                                              ", residual " + fmt(w.residual));
    }
    const Algebra& a = s.in().source;
    const Algebra& b = s.in().target;
    const Algebra& c = s.out().source;
    const Algebra& d = s.out().target;
    const Algebra source = g_source(a, b, c, pad.p_dim);
    const std::size_t p = pad.p_dim;
    std::size_t d_total = d.total_dim();

    KrausDecomposition k{source, d, {}};
    k.ops.resize(source.size() * d.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            for (std::size_t kk = 0; kk < c.size(); ++kk) {
                const std::size_t g = (i * b.size() + j) * c.size() + kk;
                const std::size_t bj = b.dim(j);
                const std::size_t r = pad.rank(i, kk);
                const std::size_t hom_block = j * a.size() + i;
                const Matrix& sigma = w.w.blocks.at(kk * s.in().algebra.size() + hom_block);
                // sigma rows follow bend_output: (l, a, alpha); columns (h, beta).
                Eigen::Index row = 0;
                for (std::size_t l = 0; l < d.size(); ++l) {
                    const std::size_t n_alpha = s_dil.env_dim(l * c.size() + kk, hom_block);
                    std::vector<Matrix> ops(n_alpha, Matrix::Zero(ix(d.dim(l)), ix(p * bj)));
                    for (std::size_t aa = 0; aa < d.dim(l); ++aa) {
                        for (std::size_t alpha = 0; alpha < n_alpha; ++alpha, ++row) {
                            for (std::size_t h = 0; h < bj; ++h) {
                                for (std::size_t beta = 0; beta < r; ++beta) {
                                    ops[alpha](ix(aa), ix(beta * bj + h)) = sigma(row, ix(h * r + beta));
                                }
                            }
                        }
                    }
                    auto& list = k.ops[l * source.size() + g];
                    for (auto& op : ops) list.push_back(std::move(op));
                }
                // Completion on (P minus the image of iota) (x) H_out,j.
                for (std::size_t pi = r; pi < p; ++pi) {
                    for (std::size_t h = 0; h < bj; ++h) {
                        const auto col = ix(pi * bj + h);
                        if (completion == Completion::PureFirstBlock) {
                            Matrix op = Matrix::Zero(ix(d.dim(0)), ix(p * bj));
                            op(0, col) = 1.0;
                            k.ops[0 * source.size() + g].push_back(std::move(op));
                        } else {
                            const double amp = 1.0 / std::sqrt(static_cast<double>(d_total));
                            for (std::size_t l = 0; l < d.size(); ++l) {
                                for (std::size_t m = 0; m < d.dim(l); ++m) {
                                    Matrix op = Matrix::Zero(ix(d.dim(l)), ix(p * bj));
                                    op(ix(m), col) = amp;
                                    k.ops[l * source.size() + g].push_back(std::move(op));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    try {
        return Channel(k.to_cpmap(), 10.0 * tol);
    } catch (const Error& e) {
        if (e.code() != Errc::NotTp) throw;
        throw Error(Errc::IsometryDefect, std::string("G is not trace preserving: ") + e.what());
    }
}

std::size_t p_dim_bound(const Algebra& a, const Algebra& c) {
    std::size_t best = 1;
    for (auto ai : a.dims()) {
        for (auto ck : c.dims()) best = std::max(best, ai * ck);
    }
    return best;
}

CircuitRealisation realize(const Supermap& s_in, double tol, Completion completion) {
    const Supermap s = s_in.is_deterministic() ? s_in : s_in.verified(tol);
    const Algebra& a = s.in().source;
    const Algebra& c = s.out().source;

    const CpMap n = extract_n(s, tol);
    const auto unital = is_unital(n, tol);
    if (!unital) throw Error(Errc::NotUnital, "||N(Id) - Id|| = " + fmt(unital.max_residual()));
    const auto n_dil = minimal_stinespring(n, tol);
    const auto s_dil = minimal_stinespring(s.inner(), tol);
    const auto left = bend_output(s_dil, s);
    const auto right = trace_then(n_dil, s.in());
    const auto w = solve_w(right, left, tol);

    std::vector<std::size_t> env, bound;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            env.push_back(n_dil.env_dim(k, i));
            bound.push_back(a.dim(i) * c.dim(k));
        }
    }
    const auto pad = pad_environment(a.size(), c.size(), env, bound);

    CircuitRealisation r{a,
                         s.in().target,
                         c,
                         s.out().target,
                         pad.p_dim,
                         assemble_e(n_dil, pad, tol),
                         assemble_g(w, s_dil, s, pad, completion, tol),
                         completion,
                         w.residual,
                         w.isometry_defect,
                         right.gram_condition(),
                         p_dim_bound(a, c)};
    if (r.p_dim > r.p_bound) {
        throw Error(Errc::BoundViolated, "p_dim " + std::to_string(r.p_dim) + " exceeds " +
                                             std::to_string(r.p_bound));
    }
    return r;
}

BlockOperator evaluate_circuit_on_choi(const CircuitRealisation& r, const BlockOperator& f_choi) {
    const HomAlgebra in = hom_algebra(r.a, r.b);
    const HomAlgebra out = hom_algebra(r.c, r.d);
    require_same_algebra(in.algebra, f_choi.algebra(), "evaluate_circuit");
    const std::size_t p = r.p_dim;
    const Algebra& gsrc = r.g_channel.source();

    auto action = [&](const BlockOperator& rho) {
        // Steps: copy k, E, copy i, f on H_in,i, then G on (i, j, k).
        std::vector<Matrix> g_in;
        g_in.reserve(gsrc.size());
        for (auto dim : gsrc.dims()) g_in.push_back(Matrix::Zero(ix(dim), ix(dim)));
        for (std::size_t k = 0; k < r.c.size(); ++k) {
            if (rho.block(k).isZero(0.0)) continue;
            for (std::size_t i = 0; i < r.a.size(); ++i) {
                const Matrix z = apply_component(r.e_channel.map(), i, k, rho.block(k));
                const auto ai = r.a.dim(i);
                for (std::size_t j = 0; j < r.b.size(); ++j) {
                    const auto bj = r.b.dim(j);
                    const Matrix& fc = f_choi.block(j * r.a.size() + i);
                    Matrix& y = g_in[(i * r.b.size() + j) * r.c.size() + k];
                    for (std::size_t u = 0; u < p; ++u) {
                        for (std::size_t v = 0; v < p; ++v) {
                            y.block(ix(u * bj), ix(v * bj), ix(bj), ix(bj)) = linalg::apply_choi_block(
                                fc, bj, ai, z.block(ix(u * ai), ix(v * ai), ix(ai), ix(ai)));
                        }
                    }
                }
            }
        }
        return apply(r.g_channel.map(), BlockOperator(gsrc, std::move(g_in)));
    };
    return BlockOperator(out.algebra, choi_blocks_from_action(r.c, r.d, action));
}

Channel evaluate_circuit(const CircuitRealisation& r, const Channel& f, double tol) {
    require_same_algebra(r.a, f.source(), "evaluate_circuit source");
    require_same_algebra(r.b, f.target(), "evaluate_circuit target");
    const auto in = hom_algebra(r.a, r.b);
    const auto out = hom_algebra(r.c, r.d);
    return Channel(as_cpmap(out, evaluate_circuit_on_choi(r, choi_operator(in, f.map()))), tol);
}

RealisationCheck check_realisation(const CircuitRealisation& r, const Supermap& s,
                                   std::size_t trials, double tol, std::uint64_t seed) {
    require_same_algebra(hom_algebra(r.a, r.b).algebra, s.in().algebra, "check_realisation source");
    require_same_algebra(hom_algebra(r.c, r.d).algebra, s.out().algebra, "check_realisation target");
    RealisationCheck out;
    out.tol = tol;
    out.trials = trials;
    auto deviation = [&](const BlockOperator& x) {
        return (evaluate_circuit_on_choi(r, x) - apply_to_choi(s, x)).frobenius_norm();
    };
    for (std::size_t t = 0; t < trials; ++t) {
        const auto f = random_channel(r.a, r.b, split_seed(seed, t));
        out.max_trial_deviation =
            std::max(out.max_trial_deviation, deviation(choi_operator(s.in(), f.map())));
    }
    const Algebra& hom = s.in().algebra;
    for (std::size_t blk = 0; blk < hom.size(); ++blk) {
        for (std::size_t u = 0; u < hom.dim(blk); ++u) {
            for (std::size_t v = 0; v < hom.dim(blk); ++v) {
                out.max_spanning_deviation =
                    std::max(out.max_spanning_deviation, deviation(BlockOperator::unit(hom, blk, u, v)));
                ++out.spanning_elements;
            }
        }
    }
    out.passed = out.max_deviation() <= tol;
    return out;
}

} // namespace smf
