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
#include <utility>
#include <vector>

#include "qubolift/levelness.hpp"
#include "qubolift/polynomial.hpp"

namespace qubolift {

enum class ReductionKind {
    TR0_1,      // discrete expansion with a one-hot constraint
    TR0_1Slack, // integer-window slack expansion with a conflict constraint
    TR0_2,      // binary expansion of an integer slack
    TR0_2n,     // exact-range binary expansion (Proposition 2)
    TR4_1,      // Rosenberg substitution
    TR4_2Neg,   // min-selection, negative monomial
    TR4_2Pos,   // min-selection, positive monomial
    TR6_1,      // level reduction after TR0.1 (two eliminated ancillas)
    TR6_2,      // level reduction after TR0.2n (one eliminated ancilla)
    Normalize,  // h -> h0 rescale
};

std::string to_string(ReductionKind kind);

/// Audit record for one transformation step: which ancillas it created,
/// which penalty/equality polynomials it emitted, and its parameters.
struct ReductionStep {
    ReductionKind kind;
    std::vector<VarId> created;
    std::vector<Polynomial> emitted;
    std::map<std::string, std::string> params;
};

/// Output of the slack expansions: equality constraints over x and fresh
/// ancillas whose joint feasible set projects onto the source window.
struct SlackExpansion {
    std::vector<TwoSidedConstraint> constraints;
    std::vector<VarId> created;
    ReductionStep step;
};

/// TR0.1 discrete expansion: h(x) = sum h_i s_i over the window values
/// plus the one-hot constraint sum s_i = 1; k fresh ancillas.
SlackExpansion tr0_1(const LevelnessReport& r, VariableRegistry& registry);

/// Integer-window slack variant used by the conventional scheme for
/// windows whose width is not a power of two: h + sum_{i=1..w-1} i*s_i =
/// hi plus the conflict constraint sum s_i <= 1; w-1 fresh ancillas.
SlackExpansion tr0_1_slack(const LevelnessReport& r, VariableRegistry& registry);

/// TR0.2 binary expansion: h + sum 2^i s_i = hi with n' = ceil(log2 w)
/// ancillas. Exact when w is a power of two or the constraint is
/// one-sided; otherwise the window widens and `over_wide` is set.
SlackExpansion tr0_2(const LevelnessReport& r, VariableRegistry& registry);

/// TR0.2n (Proposition 2): slack = sum_{j<n'-1} 2^j s_j + a s_{n'-1}
/// with a = w-1 - (2^{n'-1}-1); the slack range is exactly {0..w-1}.
SlackExpansion tr0_2n(const LevelnessReport& r, VariableRegistry& registry);

/// R(x,y,z) = xy - 2xz - 2yz + 3z; zero exactly when z = xy.
Polynomial rosenberg_penalty(VarId x, VarId y, VarId z);

struct Tr41Result {
    Polynomial quadratic;  // the substituted polynomial
    std::vector<std::pair<std::pair<VarId, VarId>, VarId>> substitutions;  // (x,y) -> z
    std::vector<Polynomial> rosenbergs;  // one per substitution
    Rational weight;                     // suggested lambda for the Rosenberg sum
    std::vector<VarId> created;
    std::vector<ReductionStep> steps;    // one per substitution

    /// quadratic + weight * sum(rosenbergs): the augmented penalty whose
    /// minimum over the created ancillas equals the input pointwise.
    Polynomial combined() const;
};

/// TR4.1: iterated z = xy substitution on monomials of degree >= 3 until
/// the polynomial is quadratic. Pairs are chosen greedily by frequency
/// across the remaining high-degree monomials (ties: lowest VarId pair)
/// unless an explicit pair list is supplied. The default weight is
/// 1 + sum |coefficients of degree >= 3 monomials|, which dominates any
/// gain a wrong ancilla setting could produce.
Tr41Result tr4_1_rosenberg(const Polynomial& p, VariableRegistry& registry,
                           std::optional<Rational> weight = std::nullopt,
                           const std::vector<std::pair<VarId, VarId>>* pairs_override = nullptr);

struct Tr42Result {
    Polynomial quadratic;  // min over created ancillas equals p pointwise
    std::vector<VarId> created;
    std::vector<ReductionStep> steps;  // one per replaced monomial
};

/// TR4.2 min-selection: each monomial of degree >= 3 is replaced by the
/// sign-matched gadget (one ancilla when negative, floor((|I|-1)/2) when
/// positive).
Tr42Result tr4_2_min_selection(const Polynomial& p, VariableRegistry& registry);

struct NormalizedWindow {
    Polynomial h0;               // affine rescale of h with h0_1 = 0, h0_2 = 1
    std::vector<Rational> H0;    // normalized window values
    Rational gap;                // h_{i+1} - h_i, the scaling denominator
};

/// Affine rescale of the window values so the two smallest become 0, 1.
NormalizedWindow normalize_h0(const LevelnessReport& r);

struct Tr6Result {
    Polynomial penalty;          // augmented QVIP over x and the ancillas
    std::vector<VarId> created;
    Rational factored_r;         // TR3 factor taken out of the combined form
    ReductionStep step;
};

/// TR6.1: P^1 + P^2 built from phi_1, phi_2 over k-2 fresh ancillas
/// (unit weights), multilinearized and TR3-reduced. Requires k >= 3.
Tr6Result tr6_1(const LevelnessReport& r, VariableRegistry& registry);

/// TR6.2: P_3 = (phi_3 - w + 1)(phi_3 - w + 2) over n'-1 fresh ancillas
/// where w is the integer window width. Requires k >= 3 and integer data.
Tr6Result tr6_2(const LevelnessReport& r, VariableRegistry& registry);

}  // namespace qubolift
