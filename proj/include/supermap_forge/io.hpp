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
 * @file io.hpp
 * JSON documents: {"format_version": "1", "kind": ..., "payload": ...}.
 *
 * Complex matrices are nested row arrays of ["re", "im"] decimal strings with
 * 17 significant digits, which round-trips doubles exactly. Choi families are
 * flat lists in CpMap::index order (target-major).
 */
#pragma once

#include <string>

#include <json.hpp>

#include "supermap_forge/algebra.hpp"
#include "supermap_forge/cpmaps.hpp"
#include "supermap_forge/realize.hpp"
#include "supermap_forge/supermap.hpp"

namespace smf::io {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const Json& j);

Json cpmap_payload(const CpMap& m);
/// No positivity check; shapes are validated.
CpMap cpmap_from_payload(const Json& p);

Json supermap_payload(const Supermap& s);
/// The supermap is returned unflagged.
Supermap supermap_from_payload(const Json& p);

Json realisation_payload(const CircuitRealisation& r);
/// Channels are re-checked for trace preservation at `tol`.
CircuitRealisation realisation_from_payload(const Json& p, double tol = 1e-8);

Json report_payload(const VerificationReport& r);
Json report_payload(const RealisationCheck& r);

Json make_document(const std::string& kind, Json payload);

/// Validates the envelope; throws Parse on a missing field, a wrong version
/// or a kind other than `expected_kind` (when non-empty).
const Json& document_payload(const Json& doc, const std::string& expected_kind);

/// Throws Parse on unreadable or malformed files.
Json read_document(const std::string& path);
void write_document(const std::string& path, const Json& doc);

std::string dump(const Json& doc);

} // namespace smf::io
