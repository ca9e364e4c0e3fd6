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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qubolift/model.hpp"
#include "qubolift/pipeline.hpp"

namespace qubolift {

/// Compact = the paper's QUBO2 family (original decision space);
/// Augmented = QUBO1 (lifted space).
enum class QuboForm { Compact, Augmented };

struct DecodedSolution {
    bool feasible = false;
    Rational objective = 0;  // domain objective, recomputed from scratch
    std::string kind;        // assignment | ordering | partition | vertex-set
    std::vector<int> items;  // meaning depends on kind
    std::string description;
};

struct ProblemEncoding {
    std::string problem;  // max2sat | lop | cdp | mis
    BlpModel blp;
    std::optional<CompiledQubo> qubo_compact;
    std::optional<CompiledQubo> qubo_augmented;

    const CompiledQubo& qubo(QuboForm form) const;
};

// --- Max2SAT ---------------------------------------------------------

/// BLP over x and clause variables C with l1 + l2 >= C_i, l <= C_i.
BlpModel max2sat_blp1(const CnfFormula& f);
/// Refined BLP: C_i <= l1 + l2 <= C_i + 1 plus l <= C_i (all 2-level).
BlpModel max2sat_blp2(const CnfFormula& f);

/// Compact: sum of per-clause falsification penalties over n variables
/// (no penalty parameters). Augmented: the refined BLP pushed through
/// the pipeline over n + m variables.
ProblemEncoding encode_max2sat(const CnfFormula& f, QuboForm form);
DecodedSolution decode_max2sat(const CnfFormula& f, const std::vector<std::uint8_t>& x);

// --- Linear Ordering --------------------------------------------------

ProblemEncoding encode_lop(const WeightMatrix& w);
DecodedSolution decode_lop(const WeightMatrix& w, const std::vector<std::uint8_t>& x);

// --- Community Detection ----------------------------------------------

/// x_uv = 1 means u and v sit in different clusters; one ancilla y per
/// vertex triple quadratizes the three transitivity cubics. The compact
/// (parameter-free) form fixes the weights at (1, 4); the augmented form
/// scales them against the objective.
ProblemEncoding encode_cdp(const Graph& g, QuboForm form);
DecodedSolution decode_cdp(const Graph& g, const std::vector<std::uint8_t>& x);

/// The per-triple transitivity penalty (sum over the three middle-vertex
/// orientations) and its quadratized augmented form, exposed for tests.
Polynomial cdp_triple_cubic(VarId x_uv, VarId x_vw, VarId x_uw);
Polynomial cdp_triple_augmented(VarId x_uv, VarId x_vw, VarId x_uw, VarId y,
                                const Rational& lambda1, const Rational& lambda2);

// --- Maximum Independent Set -------------------------------------------

/// Compact: -sum x_v + lambda * sum_{edges} x_v x_u (default lambda 2).
/// Augmented: the conventional slack form over n + m variables.
ProblemEncoding encode_mis(const Graph& g, QuboForm form,
                           const std::optional<Rational>& lambda = std::nullopt);
DecodedSolution decode_mis(const Graph& g, const std::vector<std::uint8_t>& x);

/// Original-variable prefix of a solver point (ancillas stripped); the
/// input to the problem-specific decoders above.
std::vector<std::uint8_t> original_point(const CompiledQubo& compiled,
                                         const std::vector<std::uint8_t>& point);

// --- Instance generators ------------------------------------------------

/// Erdos-Renyi G(n, p); deterministic under seed.
Graph gnp_graph(int n, double p, std::uint64_t seed);
/// m clauses over n variables, two distinct variables per clause.
CnfFormula random_2cnf(int n, int m, std::uint64_t seed);
/// Uniform integer weights in [0, range], zero diagonal.
WeightMatrix random_weights(int n, int range, std::uint64_t seed);

}  // namespace qubolift
