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

// Regenerates tests/fixtures. Usage: make-fixtures <dir>

#include <fstream>
#include <iostream>

#include "supermap_forge/gen.hpp"
#include "supermap_forge/io.hpp"

using namespace smf;

namespace {

void put(const std::string& dir, const std::string& name, const Supermap& s) {
    io::write_document(dir + "/" + name, io::make_document("supermap", io::supermap_payload(s)));
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make-fixtures <dir>\n";
        return 2;
    }
    const std::string dir = argv[1];
    const auto q2 = Algebra::from_dims({2});
    const auto bit = Algebra::from_dims({1, 1});

    put(dir, "identity_supermap.json", Supermap::identity(q2, q2));
    put(dir, "cdp08_supermap.json", random_supermap_from_circuit(q2, q2, q2, q2, 2, 11));
    const auto hybrid = random_supermap_from_circuit(Algebra::from_dims({1, 2}), Algebra::from_dims({2, 1}),
                                                     Algebra::from_dims({2, 1}), Algebra::from_dims({1, 2}), 2, 12);
    put(dir, "hybrid_supermap.json", hybrid);
    put(dir, "tp_broken_supermap.json", perturb_supermap(hybrid, 1e-2, PerturbMode::TpBreaking, 13));
    // H_in dims (2,3), K_in dims (2,2): bound 6
    put(dir, "bound6_supermap.json",
        random_supermap_from_circuit(Algebra::from_dims({2, 3}), bit, Algebra::from_dims({2, 2}), bit, 2, 14));

    // Cut mid-document.
    const auto text = io::dump(io::make_document("supermap", io::supermap_payload(Supermap::identity(q2, q2))));
    std::ofstream(dir + "/truncated_supermap.json") << text.substr(0, text.size() / 2);
    return 0;
}
