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

#include "supermap_forge/demos.hpp"

#include <algorithm>

#include "supermap_forge/error.hpp"
#include "supermap_forge/gen.hpp"

namespace smf {

namespace {

bool all_dims(const Algebra& a, std::size_t d) {
    const auto dims = a.dims();
    return std::all_of(dims.begin(), dims.end(), [d](std::size_t x) { return x == d; });
}

// The copy channel of a singleton classical set is the identity channel.
bool copy_is_identity(const Algebra& a) {
    if (a.size() != 1) return false;
    const auto copy = copy_channel(a);
    return copy.target().dims() == a.dims() &&
           copy.map().choi_blocks() == CpMap::identity(a).choi_blocks();
}

struct Shape {
    Algebra a, b, c, d;
    const char* summary;
};

Shape shape_of(const std::string& name) {
    const auto q2 = Algebra::from_dims({2});
    const auto bit = Algebra::from_dims({1, 1});
    const auto one = Algebra::scalars();
    if (name == "cdp08") {
        return {q2, q2, q2, q2, "quantum channels to quantum channels; every classical set is a singleton"};
    }
    if (name == "multimeter") {
        const auto settings = Algebra::from_dims({2, 2});
        return {settings, bit, settings, bit,
                "multimeters to multimeters; B and D are fully classical"};
    }
    if (name == "povm-to-state") {
        return {q2, bit, one, q2, "POVMs on M2 to states of M2; C is trivial"};
    }
    if (name == "state-to-povm") {
        return {one, q2, q2, bit, "states of M2 to POVMs on M2; A is trivial"};
    }
    if (name == "classical-to-quantum") {
        return {bit, bit, q2, q2, "stochastic matrices to channels on M2"};
    }
    if (name == "quantum-to-classical") {
        return {q2, q2, bit, bit, "channels on M2 to stochastic matrices"};
    }
    std::string list;
    for (const auto& n : demo_names()) list += (list.empty() ? "" : ", ") + n;
    throw Error(Errc::InvalidArgument, "unknown demo '" + name + "'; available: " + list);
}

std::vector<DemoAssertion> assertions_for(const std::string& name, const CircuitRealisation& r) {
    const auto& e = r.e_channel;
    const auto& g = r.g_channel;
    std::vector<DemoAssertion> out;
    if (name == "cdp08") {
        out.push_back({"|I| = |J| = |K| = |L| = 1",
                       r.a.size() == 1 && r.b.size() == 1 && r.c.size() == 1 && r.d.size() == 1});
        out.push_back({"copy channel on K is the identity", copy_is_identity(r.c)});
        out.push_back({"copy channel on I is the identity", copy_is_identity(r.a)});
        out.push_back({"E is a single pre-processing channel K_in -> P (x) H_in",
                       e.source().size() == 1 && e.target().size() == 1});
        out.push_back({"G is a single post-processing channel P (x) H_out -> K_out",
                       g.source().size() == 1 && g.target().size() == 1});
    } else if (name == "multimeter") {
        out.push_back({"G's quantum outputs are 1-dimensional", all_dims(g.target(), 1)});
        out.push_back({"G's inputs carry only the memory P (H_out trivial)", all_dims(g.source(), r.p_dim)});
        out.push_back({"E feeds one memory-plus-system block per setting",
                       e.target().size() == r.a.size()});
    } else if (name == "povm-to-state") {
        out.push_back({"E has a trivial source (it prepares a state)",
                       e.source().size() == 1 && e.source().dim(0) == 1});
        out.push_back({"E prepares a bipartite state on P (x) H_in",
                       e.target().size() == 1 && e.target().dim(0) == r.p_dim * r.a.dim(0)});
        out.push_back({"the POVM acts on the H_in part; G sees (outcome, P) only",
                       all_dims(g.source(), r.p_dim) && g.source().size() == r.b.size()});
        out.push_back({"G prepares the output state on K_out", g.target().size() == 1 && g.target().dim(0) == 2});
    } else if (name == "state-to-povm") {
        out.push_back({"E stores the measured system in the memory P",
                       e.target().size() == 1 && e.target().dim(0) == r.p_dim});
        out.push_back({"G performs a bipartite POVM on P (x) H_out",
                       g.source().size() == 1 && g.source().dim(0) == r.p_dim * r.b.dim(0) &&
                           all_dims(g.target(), 1)});
    } else if (name == "classical-to-quantum") {
        out.push_back({"E outputs classical data i with memory P",
                       e.target().size() == r.a.size() && all_dims(e.target(), r.p_dim)});
        out.push_back({"G reads (i, j, P) and prepares on K_out",
                       all_dims(g.source(), r.p_dim) && g.target().size() == 1});
    } else if (name == "quantum-to-classical") {
        out.push_back({"E encodes the classical input k into P (x) H_in",
                       e.source().size() == r.c.size() && e.target().size() == 1});
        out.push_back({"G's outputs are classical", all_dims(g.target(), 1)});
    }
    return out;
}

std::string algebra_line(const Algebra& a) { return a.describe(); }

} // namespace

bool DemoResult::ok() const {
    return check.passed && std::all_of(assertions.begin(), assertions.end(),
                                       [](const DemoAssertion& a) { return a.holds; });
}

const std::vector<std::string>& demo_names() {
    static const std::vector<std::string> names{"cdp08",         "multimeter",          "povm-to-state",
                                                "state-to-povm", "classical-to-quantum", "quantum-to-classical"};
    return names;
}

DemoResult run_demo(const std::string& name, double tol, std::uint64_t seed) {
    const Shape sh = shape_of(name);
    const auto s = random_supermap_from_circuit(sh.a, sh.b, sh.c, sh.d, 2, seed).verified(tol);
    auto r = realize(s, tol);
    auto check = check_realisation(r, s, 4, 1e-6, split_seed(seed, 99));
    auto assertions = assertions_for(name, r);
    assertions.push_back({"p_dim <= max_{i,k} dim(H_in,i) dim(K_in,k)", r.p_dim <= r.p_bound});
    return DemoResult{name, sh.summary, s, std::move(r), check, std::move(assertions)};
}

void print_demo(std::ostream& os, const DemoResult& r) {
    const auto& c = r.realisation;
    os << "demo " << r.name << ": " << r.summary << "\n";
    os << "  A = " << algebra_line(c.a) << "   B = " << algebra_line(c.b) << "\n";
    os << "  C = " << algebra_line(c.c) << "   D = " << algebra_line(c.d) << "\n";
    os << "  memory P: dim " << c.p_dim << " (bound " << c.p_bound << ")\n";
    os << "  E: " << algebra_line(c.e_channel.source()) << "  ->  " << algebra_line(c.e_channel.target())
       << "\n";
    os << "  G: " << algebra_line(c.g_channel.source()) << "  ->  " << algebra_line(c.g_channel.target())
       << "\n";
    os << "  W residual " << c.w_residual << ", W isometry defect " << c.w_isometry_defect << "\n";
    os << "  round trip: max deviation " << r.check.max_deviation() << " over " << r.check.trials
       << " channels + " << r.check.spanning_elements << " matrix units\n";
    for (const auto& a : r.assertions) os << "  [" << (a.holds ? "ok" : "FAILED") << "] " << a.description << "\n";
    os << (r.ok() ? "demo passed" : "demo FAILED") << "\n";
}

} // namespace smf
