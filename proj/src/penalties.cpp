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

#include "qubolift/penalties.hpp"

#include <algorithm>

namespace qubolift {

std::string to_string(PenaltyRule rule) {
    switch (rule) {
        case PenaltyRule::Lemma1: return "Lemma1";
        case PenaltyRule::Lemma2: return "Lemma2";
        case PenaltyRule::Cor2: return "Cor2";
        case PenaltyRule::Lemma3: return "Lemma3";
        case PenaltyRule::Cor3TR1: return "Cor3/TR1";
        case PenaltyRule::Thm2: return "Thm2";
        case PenaltyRule::Conflict: return "Conflict";
        case PenaltyRule::Forcing: return "Forcing";
        case PenaltyRule::Table1: return "Table1";
        case PenaltyRule::Vacuous: return "Vacuous";
    }
    return "?";
}

namespace {

/// prod over H-indices [first, last] of (h(x) - h_index).
Polynomial window_product(const LevelnessReport& r, int first, int last) {
    Polynomial h = r.expr.to_polynomial();
    Polynomial prod{Rational(1)};
    for (int idx = first; idx <= last; ++idx) {
        Polynomial factor = h;
        factor.add_constant(-r.h_at(idx));
        prod = prod * factor;
    }
    return prod;
}

PenaltyTerm finalize(Polynomial raw, const LevelnessReport& r, PenaltyRule rule, int param = -1) {
    PenaltyTerm term;
    auto [reduced, factor] = multilinear_reduce(raw, true);
    term.poly = std::move(reduced);
    term.factored_r = factor;
    term.source = r.name;
    term.rule = rule;
    term.rule_param = param;
    return term;
}

PenaltyTerm vacuous_term(const LevelnessReport& r) {
    PenaltyTerm term;
    term.source = r.name;
    term.rule = PenaltyRule::Vacuous;
    return term;
}

}  // namespace

PenaltyTerm vip_product_even(const LevelnessReport& r) {
    if (r.vacuous()) return vacuous_term(r);
    if (r.k % 2 != 0) {
        throw Error("vip_product_even: constraint " + r.name + " has odd levelness " +
                    std::to_string(r.k) + "; use vip_product_odd");
    }
    if (r.sidedness != Sidedness::TwoSided) {
        throw Error("vip_product_even: constraint " + r.name + " is not two-sided");
    }
    return finalize(window_product(r, r.i, r.i + r.k - 1), r, PenaltyRule::Lemma1);
}

PenaltyTerm vip_one_sided_upper(const LevelnessReport& r) {
    if (r.vacuous()) return vacuous_term(r);
    if (r.sidedness != Sidedness::UpperOneSided) {
        throw Error("vip_one_sided_upper: constraint " + r.name + " is " +
                    to_string(r.sidedness));
    }
    return finalize(window_product(r, 1, r.k), r, PenaltyRule::Lemma2);
}

PenaltyTerm vip_one_sided_lower(const LevelnessReport& r) {
    if (r.vacuous()) return vacuous_term(r);
    if (r.sidedness != Sidedness::LowerOneSided) {
        throw Error("vip_one_sided_lower: constraint " + r.name + " is " +
                    to_string(r.sidedness));
    }
    Polynomial raw = window_product(r, r.K - r.k + 1, r.K);
    if (r.k % 2 != 0) raw = raw.scaled(-1);
    return finalize(std::move(raw), r, PenaltyRule::Cor2);
}

PenaltyTerm vip_product_odd(const LevelnessReport& r, std::optional<int> j) {
    if (r.vacuous()) return vacuous_term(r);
    if (r.k % 2 != 1) {
        throw Error("vip_product_odd: constraint " + r.name + " has even levelness");
    }
    int root = j.value_or(r.i + (r.k - 1) / 2);  // window median
    if (root < r.i || root > r.i + r.k - 1) {
        throw Error("vip_product_odd: duplicate-root index " + std::to_string(root) +
                    " outside window [" + std::to_string(r.i) + ", " +
                    std::to_string(r.i + r.k - 1) + "]");
    }
    Polynomial dup = r.expr.to_polynomial();
    dup.add_constant(-r.h_at(root));
    return finalize(dup * window_product(r, r.i, r.i + r.k - 1), r, PenaltyRule::Lemma3, root);
}

PenaltyTerm vip_equality(const LinearExpression& expr, const Rational& rhs,
                         const std::string& name) {
    Polynomial residual = expr.to_polynomial();
    residual.add_constant(-rhs);
    Polynomial raw = residual * residual;
    PenaltyTerm term;
    auto [reduced, factor] = multilinear_reduce(raw, true);
    term.poly = std::move(reduced);
    term.factored_r = factor;
    term.source = name;
    term.rule = PenaltyRule::Cor3TR1;
    return term;
}

PenaltyTerm vip_equality(const TwoSidedConstraint& c) {
    if (!c.is_equality()) throw Error("vip_equality: constraint " + c.name + " is not lo == hi");
    return vip_equality(c.expr, *c.lo, c.name);
}

PenaltyTerm vip_regular_2level(int j, const std::vector<VarId>& support_pos,
                               const std::vector<VarId>& support_neg, const std::string& name) {
    int npos = static_cast<int>(support_pos.size());
    int nneg = static_cast<int>(support_neg.size());
    if (j < -nneg || j > npos - 1) {
        throw Error("vip_regular_2level: j = " + std::to_string(j) + " outside [-|I-|, |I+|-1]");
    }
    Polynomial p;
    for (int a = 0; a < npos; ++a) {
        for (int b = a + 1; b < npos; ++b) p.add_term({support_pos[a], support_pos[b]}, 1);
    }
    for (int a = 0; a < nneg; ++a) {
        for (int b = a + 1; b < nneg; ++b) p.add_term({support_neg[a], support_neg[b]}, 1);
    }
    for (VarId u : support_pos) {
        for (VarId v : support_neg) p.add_term({u, v}, -1);
    }
    for (VarId u : support_pos) p.add_term({u}, -j);
    for (VarId v : support_neg) p.add_term({v}, j + 1);
    p.add_constant(Rational(j) * (j + 1) / 2);

    PenaltyTerm term;
    term.poly = std::move(p);
    term.source = name;
    term.rule = PenaltyRule::Thm2;
    term.rule_param = j;
    return term;
}

PenaltyTerm vip_conflict(const std::vector<VarId>& support, const std::string& name) {
    if (support.size() < 2) throw Error("vip_conflict needs |I| >= 2");
    PenaltyTerm term = vip_regular_2level(0, support, {}, name);
    term.rule = PenaltyRule::Conflict;
    term.rule_param = -1;
    return term;
}

PenaltyTerm vip_forcing(const std::vector<VarId>& support, const std::string& name) {
    if (support.size() < 2) throw Error("vip_forcing needs |I| >= 2");
    int j = static_cast<int>(support.size()) - 1;
    PenaltyTerm term = vip_regular_2level(j, support, {}, name);
    term.rule = PenaltyRule::Forcing;
    term.rule_param = -1;
    return term;
}

std::optional<PenaltyTerm> table1_lookup(const LevelnessReport& r) {
    if (!r.regular || r.vacuous()) return std::nullopt;
    int npos = static_cast<int>(r.support_pos.size());
    int nneg = static_cast<int>(r.support_neg.size());

    auto tag = [&](PenaltyTerm term, int row) {
        term.rule = PenaltyRule::Table1;
        term.rule_param = row;
        term.source = r.name;
        return term;
    };

    // Row 1: x_i + x_j <= 1.
    if (npos == 2 && nneg == 0 && r.lo == 0 && r.hi == 1) {
        return tag(vip_conflict(r.support_pos, r.name), 1);
    }
    // Row 2: x_i + x_j >= 1.
    if (npos == 2 && nneg == 0 && r.lo == 1 && r.hi == 2) {
        return tag(vip_forcing(r.support_pos, r.name), 2);
    }
    // Row 3: x_i <= x_j, i.e. -1 <= x_i - x_j <= 0.
    if (npos == 1 && nneg == 1 && r.lo == -1 && r.hi == 0) {
        return tag(vip_regular_2level(-1, r.support_pos, r.support_neg, r.name), 3);
    }
    // Row 4: x_i + x_j + x_k <= 1.
    if (npos == 3 && nneg == 0 && r.lo == 0 && r.hi == 1) {
        return tag(vip_conflict(r.support_pos, r.name), 4);
    }
    return std::nullopt;
}

PenaltyTerm synthesize_vip(const LevelnessReport& r, const SynthesisOptions& options) {
    if (r.vacuous()) return vacuous_term(r);
    if (r.sidedness == Sidedness::Equality) {
        PenaltyTerm term = vip_equality(r.expr, r.lo, r.name);
        return term;
    }
    if (options.use_table1) {
        if (auto hit = table1_lookup(r)) return *hit;
    }
    if (r.regular && r.k == 2) {
        // h is integral for regular constraints, so the refined lo is j.
        int j = static_cast<int>(numerator(r.lo).convert_to<long long>());
        return vip_regular_2level(j, r.support_pos, r.support_neg, r.name);
    }
    if (r.sidedness == Sidedness::TwoSided && r.k % 2 == 0) return vip_product_even(r);
    if (r.sidedness == Sidedness::UpperOneSided) return vip_one_sided_upper(r);
    if (r.sidedness == Sidedness::LowerOneSided) return vip_one_sided_lower(r);
    return vip_product_odd(r, options.lemma3_root);
}

}  // namespace qubolift
