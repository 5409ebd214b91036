// SPDX-License-Identifier: Apache-2.0
//
// JSON (de)serialization. Conventions shared by every type: complex numbers
// are two-element arrays [re, im]; matrices are row-major arrays of rows;
// object keys render in sorted order and floating-point numbers with 12
// significant digits, so rendering is canonical: parse(render(x)) renders
// back to identical bytes.

#pragma once

#include <string>

#include "json.hpp"
#include "meanking/isomap.hpp"
#include "meanking/qecc.hpp"
#include "meanking/simulator.hpp"
#include "meanking/solutions.hpp"

namespace meanking {

using json = nlohmann::json;

json to_json(const StateVector& v);
json to_json(const Operator& m);

/// { "eta": [...], "basisA": [[...]], "basisK": [[...]] }
json to_json(const SchmidtState& s);

/// { "schmidt", "code_basis", "measurements" {"J": [matrix]},
///   "error_ops", "index_family" {"J,i": [a]} }
json to_json(const Setup& setup);

json to_json(const KLReport& report);
json to_json(const C3Report& report);
json to_json(const SyndromePVM& pvm);
json to_json(const SolutionCertificate& cert);
json to_json(const DerivedSolution& derived);

/// { "joint" {"J/i/a": count}, "success_rate", "entropy_bits",
///   "seed", "rounds" }
json to_json(const ExperimentStats& stats);

/// Inverses. All throw std::invalid_argument naming the offending field.
StateVector state_from_json(const json& j, const std::string& field = "state");
Operator operator_from_json(const json& j, const std::string& field = "operator");

/// Omitted bases default to the computational basis; omitted eta defaults
/// to uniform weights (the maximally entangled state).
SchmidtState schmidt_from_json(const json& j);

/// Omitted code_basis defaults to the span of the Schmidt vector.
Setup setup_from_json(const json& j);

/// Canonical text: sorted keys, no insignificant whitespace, numbers at 12
/// significant digits with negative zero normalized to "0".
std::string canonical_dump(const json& j);

}  // namespace meanking
