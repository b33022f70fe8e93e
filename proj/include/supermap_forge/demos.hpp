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

/**
 * @file demos.hpp
 * Bundled examples: a sample supermap between two channel types, its
 * realisation, and structural assertions about the resulting circuit.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "supermap_forge/realize.hpp"
#include "supermap_forge/supermap.hpp"

namespace smf {

struct DemoAssertion {
    std::string description;
    bool holds = false;
};

struct DemoResult {
    std::string name;
    std::string summary;
    Supermap supermap;
    CircuitRealisation realisation;
    RealisationCheck check;
    std::vector<DemoAssertion> assertions;

    bool ok() const;
};

/// cdp08, multimeter, povm-to-state, state-to-povm, classical-to-quantum,
/// quantum-to-classical
const std::vector<std::string>& demo_names();

/// Throws InvalidArgument for an unknown name.
DemoResult run_demo(const std::string& name, double tol = 1e-8, std::uint64_t seed = 7);

void print_demo(std::ostream& os, const DemoResult& r);

} // namespace smf
