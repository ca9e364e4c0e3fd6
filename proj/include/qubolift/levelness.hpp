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
#include <vector>

#include "qubolift/model.hpp"

namespace qubolift {

enum class Sidedness { Equality, LowerOneSided, UpperOneSided, TwoSided, Vacuous };

std::string to_string(Sidedness s);

/// Everything the penalty rules need to know about one constraint: the
/// achievable value set H of its linear form over the full cube, the
/// refined bounds, the levelness k, the 1-based window start i into H,
/// sidedness and the signed support sets.
struct LevelnessReport {
    std::string name;
    LinearExpression expr;
    std::vector<Rational> H;  // sorted ascending, deduplicated
    int K = 0;                // |H|
    int k = 0;                // levelness: values of H inside [lo, hi]
    int i = 0;                // 1-based index of refined lo in H
    Rational lo = 0, hi = 0;  // refined: lo = h_i, hi = h_{i+k-1}
    Sidedness sidedness = Sidedness::TwoSided;
    std::vector<VarId> support;      // I
    std::vector<VarId> support_pos;  // I+
    std::vector<VarId> support_neg;  // I-
    bool regular = false;            // all coefficients in {-1, 0, +1}
    bool integral = false;           // integer coefficients and bounds

    const Rational& h_at(int index_1based) const;  // h_1 .. h_K
    bool vacuous() const { return sidedness == Sidedness::Vacuous; }
};

/// Per Theorem 1: KN = max over inequality constraints of min(kappa_i,
/// |I_i|); KN <= 2 guarantees that a compact QUBO exists. The condition
/// is sufficient, not necessary.
struct CompactCertificate {
    struct Entry {
        std::string constraint;
        int k = 0;
        int kappa = 0;
        int support_size = 0;
    };
    std::vector<Entry> entries;  // inequality constraints only
    std::optional<int> KN;       // unset when there are no inequalities
    bool compact_guaranteed = true;
};

/// Options for value_set enumeration. Supports up to `cap` variables are
/// enumerated by subset-sum over reachable values; larger supports are
/// rejected unless the coefficients are integral (dense DP path).
struct ValueSetOptions {
    int cap = 30;
};

/// All values a^T x attains over the full binary cube, sorted ascending.
std::vector<Rational> value_set(const LinearExpression& expr, const ValueSetOptions& options = {});

/// Snaps bounds into H (Remark-1 refinement), computes k, i and the
/// classification. Throws Error when the window contains no achievable
/// value ("constraint infeasible over the cube").
LevelnessReport refine_and_classify(const TwoSidedConstraint& c,
                                    const ValueSetOptions& options = {});

/// Whether the Lemma-3 (two-sided odd) case applies, raising kappa to k+1.
bool lemma3_case(const LevelnessReport& r);

CompactCertificate compact_certificate(const BlpModel& m, const ValueSetOptions& options = {});

}  // namespace qubolift
