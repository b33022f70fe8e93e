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

#include "supermap_forge/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "supermap_forge/error.hpp"

namespace smf::io {

namespace {

Eigen::Index ix(std::size_t n) { return static_cast<Eigen::Index>(n); }

std::string number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_number(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) throw Error(Errc::Parse, "matrix entry is neither a string nor a number");
    const auto& s = j.get_ref<const std::string&>();
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        throw Error(Errc::Parse, "bad number '" + s + "'");
    }
    return v;
}

// Runs f, turning json library failures into Parse errors.
template <class F>
auto guarded(const char* what, F f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw Error(Errc::Parse, std::string(what) + ": " + e.what());
    }
}

std::vector<Matrix> matrices_from_json(const Json& j) {
    if (!j.is_array()) throw Error(Errc::Parse, "expected a list of matrices");
    std::vector<Matrix> out;
    for (const auto& m : j) out.push_back(matrix_from_json(m));
    return out;
}

Json matrices_to_json(const std::vector<Matrix>& ms) {
    Json out = Json::array();
    for (const auto& m : ms) out.push_back(matrix_to_json(m));
    return out;
}

} // namespace

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({number(m(r, c).real()), number(m(r, c).imag())}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    return guarded("matrix", [&] {
        if (!j.is_array()) throw Error(Errc::Parse, "matrix must be a list of rows");
        const auto rows = j.size();
        const auto cols = rows ? j.at(0).size() : 0;
        Matrix m(ix(rows), ix(cols));
        for (std::size_t r = 0; r < rows; ++r) {
            const auto& row = j.at(r);
            if (!row.is_array() || row.size() != cols) throw Error(Errc::Parse, "ragged matrix");
            for (std::size_t c = 0; c < cols; ++c) {
                const auto& e = row.at(c);
                if (!e.is_array() || e.size() != 2) throw Error(Errc::Parse, "entry must be [re, im]");
                m(ix(r), ix(c)) = Complex(parse_number(e.at(0)), parse_number(e.at(1)));
            }
        }
        return m;
    });
}

Json algebra_to_json(const Algebra& a) {
    Json blocks = Json::array();
    for (const auto& b : a.blocks()) blocks.push_back({{"label", b.label}, {"dim", b.dim}});
    return {{"blocks", blocks}};
}

Algebra algebra_from_json(const Json& j) {
    return guarded("algebra", [&] {
        std::vector<Block> blocks;
        for (const auto& b : j.at("blocks")) {
            const auto dim = b.at("dim").get<long long>();
            if (dim <= 0) throw Error(Errc::Parse, "block dimension must be positive");
            blocks.push_back({b.at("label").get<std::string>(), static_cast<std::size_t>(dim)});
        }
        try {
            return Algebra(std::move(blocks));
        } catch (const Error& e) {
            throw Error(Errc::Parse, e.what());
        }
    });
}

Json cpmap_payload(const CpMap& m) {
    return {{"source", algebra_to_json(m.source())},
            {"target", algebra_to_json(m.target())},
            {"choi", matrices_to_json(m.choi_blocks())}};
}

CpMap cpmap_from_payload(const Json& p) {
    return guarded("channel", [&] {
        return CpMap::from_choi_unchecked(algebra_from_json(p.at("source")),
                                          algebra_from_json(p.at("target")),
                                          matrices_from_json(p.at("choi")));
    });
}

Json supermap_payload(const Supermap& s) {
    return {{"a", algebra_to_json(s.in().source)},
            {"b", algebra_to_json(s.in().target)},
            {"c", algebra_to_json(s.out().source)},
            {"d", algebra_to_json(s.out().target)},
            {"choi", matrices_to_json(s.inner().choi_blocks())}};
}

Supermap supermap_from_payload(const Json& p) {
    return guarded("supermap", [&] {
        const auto in = hom_algebra(algebra_from_json(p.at("a")), algebra_from_json(p.at("b")));
        const auto out = hom_algebra(algebra_from_json(p.at("c")), algebra_from_json(p.at("d")));
        return Supermap(in, out,
                        CpMap::from_choi_unchecked(in.algebra, out.algebra,
                                                   matrices_from_json(p.at("choi"))));
    });
}

Json realisation_payload(const CircuitRealisation& r) {
    return {{"a", algebra_to_json(r.a)},
            {"b", algebra_to_json(r.b)},
            {"c", algebra_to_json(r.c)},
            {"d", algebra_to_json(r.d)},
            {"p_dim", r.p_dim},
            {"p_bound", r.p_bound},
            {"completion", to_string(r.completion)},
            {"e_channel", cpmap_payload(r.e_channel.map())},
            {"g_channel", cpmap_payload(r.g_channel.map())},
            {"diagnostics",
             {{"w_residual", number(r.w_residual)},
              {"w_isometry_defect", number(r.w_isometry_defect)},
              {"gram_condition", number(r.gram_condition)}}}};
}

CircuitRealisation realisation_from_payload(const Json& p, double tol) {
    return guarded("realisation", [&] {
        const auto a = algebra_from_json(p.at("a"));
        const auto b = algebra_from_json(p.at("b"));
        const auto c = algebra_from_json(p.at("c"));
        const auto d = algebra_from_json(p.at("d"));
        const auto p_dim = p.at("p_dim").get<std::size_t>();
        auto e = cpmap_from_payload(p.at("e_channel"));
        auto g = cpmap_from_payload(p.at("g_channel"));
        if (!(e.source() == c) || !(e.target() == e_target(a, p_dim)) ||
            !(g.source() == g_source(a, b, c, p_dim)) || !(g.target() == d)) {
            throw Error(Errc::AlgebraMismatch, "realisation channels do not fit the declared algebras");
        }
        const auto& diag = p.at("diagnostics");
        return CircuitRealisation{a,
                                  b,
                                  c,
                                  d,
                                  p_dim,
                                  Channel(std::move(e), tol),
                                  Channel(std::move(g), tol),
                                  completion_from_string(p.at("completion").get<std::string>()),
                                  parse_number(diag.at("w_residual")),
                                  parse_number(diag.at("w_isometry_defect")),
                                  parse_number(diag.at("gram_condition")),
                                  p.at("p_bound").get<std::size_t>()};
    });
}

Json report_payload(const VerificationReport& r) {
    Json out = {{"cp_ok", r.cp_ok},
                {"cp_residual", number(r.cp_residual)},
                {"kernel_residual", number(r.kernel_residual)},
                {"n_unital_residual", number(r.n_unital_residual)},
                {"n_cp_ok", r.n_cp_ok},
                {"tol", number(r.tol)},
                {"verdict", r.verdict}};
    if (r.n_map) out["n_map"] = cpmap_payload(*r.n_map);
    return out;
}

Json report_payload(const RealisationCheck& r) {
    return {{"max_trial_deviation", number(r.max_trial_deviation)},
            {"max_spanning_deviation", number(r.max_spanning_deviation)},
            {"max_deviation", number(r.max_deviation())},
            {"trials", r.trials},
            {"spanning_elements", r.spanning_elements},
            {"tol", number(r.tol)},
            {"passed", r.passed}};
}

Json make_document(const std::string& kind, Json payload) {
    return {{"format_version", kFormatVersion}, {"kind", kind}, {"payload", std::move(payload)}};
}

const Json& document_payload(const Json& doc, const std::string& expected_kind) {
    return guarded("document", [&]() -> const Json& {
        if (!doc.is_object()) throw Error(Errc::Parse, "document must be a JSON object");
        if (doc.at("format_version").get<std::string>() != kFormatVersion) {
            throw Error(Errc::Parse, "unsupported format_version");
        }
        const auto kind = doc.at("kind").get<std::string>();
        if (!expected_kind.empty() && kind != expected_kind) {
            throw Error(Errc::Parse, "expected a '" + expected_kind + "' document, got '" + kind + "'");
        }
        return doc.at("payload");
    });
}

Json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Parse, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(Errc::Parse, "'" + path + "': " + e.what());
    }
}

void write_document(const std::string& path, const Json& doc) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + path + "'");
    out << dump(doc);
    if (!out) throw Error(Errc::InvalidArgument, "write to '" + path + "' failed");
}

std::string dump(const Json& doc) { return doc.dump(1) + "\n"; }

} // namespace smf::io
