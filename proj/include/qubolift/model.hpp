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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qubolift/polynomial.hpp"
#include "qubolift/rational.hpp"
#include "qubolift/var.hpp"

namespace qubolift {

/// a^T x with no explicitly stored zero coefficients.
class LinearExpression {
 public:
    LinearExpression() = default;

    void set(VarId v, const Rational& coefficient);
    void add(VarId v, const Rational& coefficient);
    Rational coefficient(VarId v) const;

    const std::map<VarId, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    bool all_integer() const;
    Rational evaluate(const Assignment& a) const;
    Polynomial to_polynomial() const;

 private:
    std::map<VarId, Rational> terms_;
};

/// lo <= a^T x <= hi; equality when lo == hi; a missing bound is infinite
/// on that side (at least one bound is always finite).
struct TwoSidedConstraint {
    LinearExpression expr;
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    std::string name;

    bool is_equality() const { return lo && hi && *lo == *hi; }
};

enum class Sense { Minimize, Maximize };

struct Objective {
    LinearExpression expr;
    Rational constant = 0;
    Sense sense = Sense::Minimize;
};

/// Binary linear program over named binary variables. The internal
/// canonical sense is minimization: min_form() negates a maximization
/// objective; reported optima are un-negated by the callers that know
/// the original sense.
struct BlpModel {
    VariableRegistry variables;
    Objective objective;
    std::vector<TwoSidedConstraint> constraints;

    /// Objective in minimization form (negated when sense is Maximize).
    LinearExpression min_objective() const;
    Rational min_constant() const;

    /// Brute-force feasibility of one point over the original variables.
    bool feasible(const Assignment& a) const;
};

struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // 0-based, u < v, deduped
    int duplicate_edges_dropped = 0;

    std::size_t m() const { return edges.size(); }
};

struct CnfFormula {
    int num_variables = 0;
    std::vector<std::array<int, 2>> clauses;  // signed 1-based literals
};

struct WeightMatrix {
    int n = 0;
    std::vector<std::vector<Rational>> w;  // n x n
};

/// Model JSON:
/// {"variables":[...], "objective":{"sense":"min|max","terms":[{"var":..,
///  "coef":..}],"constant":..}, "constraints":[{"name":..,"terms":[...],
///  "lo":number|string|null,"hi":...}]}
/// Coefficients are JSON numbers when integral, "p/q" strings otherwise;
/// a null bound is infinite on that side.
BlpModel parse_model_json(const std::string& text);
std::string serialize_model_json(const BlpModel& m);

/// DIMACS "p edge n m" graphs; vertices are 1-based in the file and
/// 0-based internally. Duplicate edges collapse with a counted warning.
Graph parse_dimacs_graph(const std::string& text);
std::string serialize_dimacs_graph(const Graph& g);

/// DIMACS "p cnf n m"; every clause must have exactly two literals.
CnfFormula parse_dimacs_cnf(const std::string& text);
std::string serialize_dimacs_cnf(const CnfFormula& f);

/// Weight matrix JSON: {"n":..,"w":[[..],..]}.
WeightMatrix parse_weights_json(const std::string& text);
std::string serialize_weights_json(const WeightMatrix& w);

}  // namespace qubolift
