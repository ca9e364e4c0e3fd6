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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qubolift/model.hpp"
#include "qubolift/polynomial.hpp"

namespace qubolift {

struct PipelineConfig;
struct CompiledQubo;

inline constexpr int kExhaustiveCap = 24;

struct Counterexample {
    Assignment assignment;
    Rational penalty_value = 0;
    Rational constraint_value = 0;  // h(x) at the point
    bool constraint_satisfied = false;
};

struct Verdict {
    bool ok = false;
    std::optional<Counterexample> counterexample;
    std::uint64_t checked = 0;
    std::string note;
};

/// Exhaustively checks both VIP conditions over the joint support of P
/// and c: P(x) = 0 iff c holds at x, P(x) > 0 otherwise. Enumeration is
/// lexicographic by VarId so counterexamples are stable.
Verdict check_vip(const Polynomial& P, const TwoSidedConstraint& c);

/// Minimizes P over the listed ancillary variables at every point of the
/// remaining variables, then applies the VIP conditions to the projected
/// function.
Verdict check_augmented_vip(const Polynomial& P, const TwoSidedConstraint& c,
                            const std::vector<VarId>& ancillaries);

struct BruteForceResult {
    bool feasible = false;
    Rational optimum = 0;  // minimization form
    std::vector<Assignment> argmins;
    std::uint64_t checked = 0;
};

/// Reference optimum of a BLP by full enumeration of the original cube.
BruteForceResult blp_brute_force(const BlpModel& m);

enum class EquivalenceStatus { Ok, InfeasibleBlp, OptimumMismatch, InfeasibleArgmin, TooLarge };

struct EquivalenceReport {
    EquivalenceStatus status = EquivalenceStatus::Ok;
    bool ok = false;
    Rational blp_optimum = 0;   // minimization form
    Rational qubo_optimum = 0;  // includes all constant bookkeeping
    std::uint64_t checked = 0;
    std::size_t argmin_count = 0;
    std::string note;
};

/// Brute-force check that the QUBO's minimum equals the BLP optimum and
/// that every QUBO argmin projects onto a feasible BLP optimizer.
/// `order` maps QUBO index -> VarId (originals identify BLP variables).
EquivalenceReport check_equivalence(const BlpModel& m, const QuboModel& qubo,
                                    const std::vector<VarId>& order);
EquivalenceReport check_equivalence(const BlpModel& m, const CompiledQubo& compiled);

/// Smallest uniform integer penalty weight for which check_equivalence
/// passes under the given pipeline configuration, found by doubling then
/// bisection. Returns the weight per constraint; throws when nothing
/// below 2^16 works (that signals a non-VIP penalty, i.e. a bug).
std::map<std::string, std::int64_t> minimal_lambda(const BlpModel& m, const PipelineConfig& cfg);

}  // namespace qubolift
