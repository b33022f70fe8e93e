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

#include "supermap_forge/cli.hpp"

#include <cstdlib>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "supermap_forge/demos.hpp"
#include "supermap_forge/error.hpp"
#include "supermap_forge/gen.hpp"
#include "supermap_forge/io.hpp"
#include "supermap_forge/realize.hpp"

namespace smf::cli {

namespace {

int exit_code_for(const Error& e) {
    switch (e.code()) {
    case Errc::Parse:
    case Errc::ShapeMismatch:
    case Errc::AlgebraMismatch:
    case Errc::InvalidArgument:
        return kInputError;
    default:
        return kFailure;
    }
}

Algebra parse_dims(const std::string& flag, const std::string& text) {
    std::vector<std::size_t> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != item.size() || item.empty() || v <= 0) {
            throw Error(Errc::InvalidArgument, flag + ": '" + text + "' is not a list of positive dims");
        }
        dims.push_back(static_cast<std::size_t>(v));
    }
    if (dims.empty()) throw Error(Errc::InvalidArgument, flag + " is empty");
    return Algebra::from_dims(dims);
}

void emit(const std::optional<std::string>& path, const io::Json& doc, std::ostream& out) {
    if (path) {
        io::write_document(*path, doc);
    } else {
        out << io::dump(doc);
    }
}

struct Options {
    double tol = 1e-8;
    std::string path, second;
    std::optional<std::string> out_path;
    std::size_t trials = 10;
    std::uint64_t seed = 0;
    std::uint64_t demo_seed = 7;
    std::string completion = "pure-first-block";
    std::string kind;
    std::string a, b, c, d;
    std::size_t p = 2;
};

int cmd_verify(const Options& o, std::ostream& out) {
    const auto s = io::supermap_from_payload(io::document_payload(io::read_document(o.path), "supermap"));
    const auto r = verify_deterministic(s, o.tol);
    out << "supermap " << s.in().source.describe() << " -> " << s.in().target.describe() << "  =>  "
        << s.out().source.describe() << " -> " << s.out().target.describe() << "\n";
    out << "  completely positive: " << (r.cp_ok ? "yes" : "no") << " (residual " << r.cp_residual << ")\n";
    out << "  kernel residual:     " << r.kernel_residual << "\n";
    out << "  N unital residual:   " << r.n_unital_residual << "\n";
    out << "  N completely positive: " << (r.n_cp_ok ? "yes" : "no") << "\n";
    out << "verdict: " << (r.verdict ? "deterministic" : "NOT deterministic") << " (tol " << o.tol << ")\n";
    if (o.out_path) io::write_document(*o.out_path, io::make_document("report", io::report_payload(r)));
    return r.verdict ? kOk : kFailure;
}

int cmd_realize(const Options& o, std::ostream& out) {
    const auto s = io::supermap_from_payload(io::document_payload(io::read_document(o.path), "supermap"));
    const auto r = realize(s, o.tol, completion_from_string(o.completion));
    out << "realisation\n";
    out << "  E: " << r.e_channel.source().describe() << " -> " << r.e_channel.target().describe() << "\n";
    out << "  G: " << r.g_channel.source().describe() << " -> " << r.g_channel.target().describe() << "\n";
    out << "  p_dim: " << r.p_dim << "\n";
    out << "  bound max_{i,k} dim(H_in,i)*dim(K_in,k): " << r.p_bound << "\n";
    out << "  p_dim <= bound: " << (r.p_dim <= r.p_bound ? "yes" : "NO") << "\n";
    out << "  W residual: " << r.w_residual << "  W isometry defect: " << r.w_isometry_defect << "\n";
    out << "  right dilation Gram condition: " << r.gram_condition << "\n";
    if (o.out_path) io::write_document(*o.out_path, io::make_document("realisation", io::realisation_payload(r)));
    return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
    const auto s = io::supermap_from_payload(io::document_payload(io::read_document(o.path), "supermap"));
    const auto r = io::realisation_from_payload(
        io::document_payload(io::read_document(o.second), "realisation"), std::max(o.tol, 1e-8));
    const auto c = check_realisation(r, s, o.trials, o.tol, o.seed);
    out << "check: " << c.trials << " random channels, " << c.spanning_elements << " matrix units\n";
    out << "  max deviation (random):   " << c.max_trial_deviation << "\n";
    out << "  max deviation (spanning): " << c.max_spanning_deviation << "\n";
    out << (c.passed ? "passed" : "FAILED") << " (tol " << o.tol << ")\n";
    if (o.out_path) io::write_document(*o.out_path, io::make_document("report", io::report_payload(c)));
    return c.passed ? kOk : kFailure;
}

int cmd_demo(const Options& o, std::ostream& out) {
    const auto r = run_demo(o.path, o.tol, o.demo_seed);
    print_demo(out, r);
    return r.ok() ? kOk : kFailure;
}

int cmd_gen(const Options& o, std::ostream& out) {
    if (o.kind == "channel") {
        if (o.a.empty() || o.b.empty()) throw Error(Errc::InvalidArgument, "gen channel needs --a and --b");
        const auto ch = random_channel(parse_dims("--a", o.a), parse_dims("--b", o.b), o.seed);
        emit(o.out_path, io::make_document("channel", io::cpmap_payload(ch.map())), out);
        return kOk;
    }
    if (o.kind == "supermap") {
        if (o.a.empty() || o.b.empty() || o.c.empty() || o.d.empty()) {
            throw Error(Errc::InvalidArgument, "gen supermap needs --a, --b, --c and --d");
        }
        if (o.p == 0) throw Error(Errc::InvalidArgument, "--p must be >= 1");
        const auto s = random_supermap_from_circuit(parse_dims("--a", o.a), parse_dims("--b", o.b),
                                                    parse_dims("--c", o.c), parse_dims("--d", o.d), o.p,
                                                    o.seed);
        emit(o.out_path, io::make_document("supermap", io::supermap_payload(s)), out);
        return kOk;
    }
    throw Error(Errc::InvalidArgument, "gen kind must be 'channel' or 'supermap'");
}

} // namespace

double default_tolerance() {
    if (const char* env = std::getenv("SUPERMAP_FORGE_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0) return v;
    }
    return 1e-8;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    o.tol = default_tolerance();

    CLI::App app{"Deterministic supermaps between multimatrix channel types: verify, realise, certify.",
                 "supermap-forge"};
    app.require_subcommand(1);
    auto add_tol = [&](CLI::App* sub) {
        sub->add_option("--tol", o.tol, "numerical tolerance (default 1e-8 or $SUPERMAP_FORGE_TOL)")
            ->check(CLI::PositiveNumber);
    };
    auto add_out = [&](CLI::App* sub, const char* what) { sub->add_option("--out", o.out_path, what); };

    auto* verify = app.add_subcommand("verify", "check that a supermap document is deterministic");
    verify->add_option("supermap", o.path, "supermap document")->required();
    add_tol(verify);
    add_out(verify, "write the verification report here");

    auto* real = app.add_subcommand("realize", "build the E / G circuit realisation of a supermap");
    real->add_option("supermap", o.path, "supermap document")->required();
    add_tol(real);
    add_out(real, "write the realisation document here");
    real->add_option("--completion", o.completion, "pure-first-block | maximally-mixed")
        ->check(CLI::IsMember({"pure-first-block", "maximally-mixed"}));

    auto* check = app.add_subcommand("check", "certify a realisation against its supermap");
    check->add_option("supermap", o.path, "supermap document")->required();
    check->add_option("realisation", o.second, "realisation document")->required();
    check->add_option("--trials", o.trials, "random channels in addition to the matrix-unit basis");
    check->add_option("--seed", o.seed, "seed for the random channels");
    add_tol(check);
    add_out(check, "write the check report here");

    auto* demo = app.add_subcommand("demo", "run a bundled example");
    demo->add_option("name", o.path, "cdp08 | multimeter | povm-to-state | state-to-povm | "
                                     "classical-to-quantum | quantum-to-classical")
        ->required();
    demo->add_option("--seed", o.demo_seed, "seed for the sample supermap (default 7)");
    add_tol(demo);

    auto* gen = app.add_subcommand("gen", "write a random channel or circuit-generated supermap");
    gen->add_option("kind", o.kind, "channel | supermap")->required();
    gen->add_option("--a", o.a, "block dims of A (channel source), e.g. 2,1");
    gen->add_option("--b", o.b, "block dims of B (channel target)");
    gen->add_option("--c", o.c, "block dims of C");
    gen->add_option("--d", o.d, "block dims of D");
    gen->add_option("--p", o.p, "memory dimension of the generating circuit (default 2)");
    gen->add_option("--seed", o.seed, "generator seed");
    add_out(gen, "output path (stdout when omitted)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*verify) return cmd_verify(o, out);
        if (*real) return cmd_realize(o, out);
        if (*check) return cmd_check(o, out);
        if (*demo) return cmd_demo(o, out);
        if (*gen) return cmd_gen(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

} // namespace smf::cli
