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

#include "qubolift/levelness.hpp"
#include "qubolift/polynomial.hpp"

namespace qubolift {

enum class PenaltyRule {
    Lemma1,    // two-sided, even k: product over the window
    Lemma2,    // one-sided upper: product over H^{1,k}
    Cor2,      // one-sided lower: (-1)^k product over H^{K-k+1,K}
    Lemma3,    // two-sided, odd k: duplicated-root product
    Cor3TR1,   // equality squaring
    Thm2,      // regular 2-level closed form
    Conflict,  // sum x <= 1
    Forcing,   // sum x >= |I|-1
    Table1,    // catalog row matched structurally
    Vacuous,   // k = K, penalty is identically zero
};

std::string to_string(PenaltyRule rule);

/// One penalty polynomial for one constraint. The poly is multilinear
/// and reduced (TR3): its values are zero exactly on the constraint's
/// feasible binary points and strictly positive elsewhere; factored_r
/// records the common factor divided out.
struct PenaltyTerm {
    Polynomial poly;
    std::string source;
    PenaltyRule rule = PenaltyRule::Vacuous;
    int rule_param = -1;  // j for Lemma3/Thm2, Table 1 row number
    Rational factored_r = 1;
    std::vector<VarId> ancillaries;  // filled by the reduction module
};

/// Lemma 1: k even, two-sided. poly = TR3(prod over H^{i,k} of (h - h')).
PenaltyTerm vip_product_even(const LevelnessReport& r);

/// Lemma 2 (upper) / Corollary 2 (lower).
PenaltyTerm vip_one_sided_upper(const LevelnessReport& r);
PenaltyTerm vip_one_sided_lower(const LevelnessReport& r);

/// Lemma 3: k odd, two-sided; `j` is the 1-based H-index of the
/// duplicated root, which must lie inside the window [i, i+k-1].
/// Defaults to the window median.
PenaltyTerm vip_product_odd(const LevelnessReport& r, std::optional<int> j = std::nullopt);

/// Corollary 3 / TR1: squared residual of an equality.
PenaltyTerm vip_equality(const TwoSidedConstraint& c);
PenaltyTerm vip_equality(const LinearExpression& expr, const Rational& rhs,
                         const std::string& name);

/// Theorem 2 closed form for the regular constraint
/// j <= sum_{I+} x - sum_{I-} x <= j+1 with j in [-|I-|, |I+|-1].
PenaltyTerm vip_regular_2level(int j, const std::vector<VarId>& support_pos,
                               const std::vector<VarId>& support_neg,
                               const std::string& name = "");

/// Corollary 5 / Corollary 4 at j = |I|-1; both need |I| >= 2.
PenaltyTerm vip_conflict(const std::vector<VarId>& support, const std::string& name = "");
PenaltyTerm vip_forcing(const std::vector<VarId>& support, const std::string& name = "");

/// Structural match against the Table 1 catalog; nullopt falls through
/// to the general machinery.
std::optional<PenaltyTerm> table1_lookup(const LevelnessReport& r);

struct SynthesisOptions {
    bool use_table1 = true;
    std::optional<int> lemma3_root;  // explicit H-index; default median
};

/// Dispatches one classified constraint to the cheapest applicable rule:
/// Table 1 -> regular 2-level closed form -> even-k product -> one-sided
/// product -> odd-k product. Equality windows square the residual;
/// vacuous windows yield the zero penalty.
PenaltyTerm synthesize_vip(const LevelnessReport& r, const SynthesisOptions& options = {});

}  // namespace qubolift
