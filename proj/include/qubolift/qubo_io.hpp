// Copyright 2026 The qubolift authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <optional>
#include <string>

#include "qubolift/polynomial.hpp"

namespace qubolift {

/// Instance metadata embedded next to a QUBO so solutions can be decoded
/// back to the source problem.
struct QuboMeta {
    std::string problem;            // mis | lop | cdp | max2sat
    std::string form;               // compact | augmented
    std::string sense = "min";      // original objective sense
    std::string instance;           // serialized instance (dimacs / json)
};

/// QUBO JSON: {"n":..,"terms":[{"i":..,"j":..,"coef":..}],"constant":..,
/// "decode":[...], optional "meta":{...}}. Coefficients are numbers when
/// integral, "p/q" strings otherwise.
std::string serialize_qubo_json(const QuboModel& q, const std::optional<QuboMeta>& meta = {});
QuboModel parse_qubo_json(const std::string& text, std::optional<QuboMeta>* meta = nullptr);

/// Coordinate text: "c ..." comments, "p qubo <n> <nterms> <constant>",
/// then "<i> <j> <coef>" lines with 0-based i <= j (diagonal = linear).
std::string serialize_qubo_coord(const QuboModel& q);
QuboModel parse_qubo_coord(const std::string& text);

/// Polynomial JSON for standalone VIP checks:
/// {"terms":[{"vars":["x1","x2"],"coef":..}],"constant":..}.
std::string serialize_polynomial_json(const Polynomial& p, const VariableRegistry& vars);
Polynomial parse_polynomial_json(const std::string& text, VariableRegistry& vars);

/// Constraint JSON ({"name","terms","lo","hi"}) against a registry that
/// grows as new variable names appear.
std::string serialize_constraint_json(const struct TwoSidedConstraint& c,
                                      const VariableRegistry& vars);
struct TwoSidedConstraint parse_constraint_json(const std::string& text, VariableRegistry& vars);

}  // namespace qubolift
