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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qubolift/levelness.hpp"
#include "qubolift/model.hpp"
#include "qubolift/penalties.hpp"
#include "qubolift/polynomial.hpp"
#include "qubolift/reduction.hpp"

namespace qubolift {

/// How a degree >= 3 penalty is brought down to quadratic: TR4 gadgets
/// (Option 1) or re-transforming the constraint with TR0 + TR6 + TR5
/// (Option 2). Cts is the conventional slack-and-square baseline.
enum class Variant { MlctsTr41, MlctsTr42, MlctsTr01Tr61, MlctsTr02nTr62, Cts };

std::string to_string(Variant v);
std::optional<Variant> variant_from_string(std::string_view name);

enum class PenaltyMode { Auto, Fixed, Search };

struct PipelineConfig {
    Variant variant = Variant::MlctsTr02nTr62;
    PenaltyMode penalty_mode = PenaltyMode::Auto;
    std::map<std::string, Rational> fixed_lambdas;  // by penalty source name
    std::optional<int> lemma3_root;                 // explicit H-index for Lemma 3
    bool use_table1 = true;
    ValueSetOptions value_set;
};

/// Audit record for one source constraint.
struct ConstraintTrace {
    std::string constraint;
    std::optional<LevelnessReport> levelness;  // absent for equalities
    std::string rule;
    int rule_param = -1;
    Rational factored_r = 1;
    std::string penalty_text;
    std::vector<ReductionStep> reductions;
    Rational lambda = 0;
    int ancillas = 0;
};

struct TransformTrace {
    std::string variant;
    std::vector<ConstraintTrace> constraints;
    std::vector<std::pair<std::string, Rational>> penalty_parameters;
    std::vector<std::string> warnings;
};

std::string trace_to_json(const TransformTrace& trace, const VariableRegistry& variables);

struct CompiledQubo {
    QuboModel qubo;
    TransformTrace trace;
    CompactCertificate certificate;
    int ancillary_count = 0;
    bool is_compact = true;
    std::vector<VarId> order;      // QUBO index -> variable
    VariableRegistry variables;    // originals plus created ancillas
    Sense original_sense = Sense::Minimize;
};

/// Multilevel scheme: TR1 on equalities; refine/classify each
/// inequality, dispatch to the cheapest VIP rule, TR3-reduce, and push
/// any remaining degree >= 3 penalty through the configured reduction.
CompiledQubo mlcts(const BlpModel& m, const PipelineConfig& cfg = {});

/// Conventional scheme: every inequality becomes a slack equality
/// (binary expansion when exact, discrete slack with a conflict penalty
/// otherwise), then everything is squared via TR1. Integer data only.
CompiledQubo cts(const BlpModel& m, const PipelineConfig& cfg = {});

/// Penalty weights per source constraint. Auto mode returns
/// 1 + sum |objective coefficients| + |objective constant| for every
/// entry: one violated penalty always costs more than any achievable
/// objective swing. Search mode delegates to verify::minimal_lambda.
std::map<std::string, Rational> choose_penalties(const BlpModel& m, const PipelineConfig& cfg);

}  // namespace qubolift
