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

#include "qubolift/reduction.hpp"

#include <algorithm>
#include <map>

namespace qubolift {

std::string to_string(ReductionKind kind) {
    switch (kind) {
        case ReductionKind::TR0_1: return "TR0.1";
        case ReductionKind::TR0_1Slack: return "TR0.1-slack";
        case ReductionKind::TR0_2: return "TR0.2";
        case ReductionKind::TR0_2n: return "TR0.2n";
        case ReductionKind::TR4_1: return "TR4.1";
        case ReductionKind::TR4_2Neg: return "TR4.2-neg";
        case ReductionKind::TR4_2Pos: return "TR4.2-pos";
        case ReductionKind::TR6_1: return "TR6.1";
        case ReductionKind::TR6_2: return "TR6.2";
        case ReductionKind::Normalize: return "normalize";
    }
    return "?";
}

namespace {

int ceil_log2(std::int64_t w) {
    int n = 0;
    while ((std::int64_t(1) << n) < w) ++n;
    return n;
}

std::int64_t window_width(const LevelnessReport& r) {
    if (!r.integral) throw Error("constraint " + r.name + " needs integer data here");
    Rational width = r.hi - r.lo + 1;
    auto w = as_int64(width);
    if (!w) throw Error("constraint " + r.name + ": window width out of range");
    return *w;
}

std::string anc_name(VariableRegistry& registry, const std::string& base) {
    // registry rejects duplicates; suffix until free
    std::string name = base;
    int suffix = 0;
    while (registry.find(name)) name = base + "_" + std::to_string(++suffix);
    return name;
}

}  // namespace

SlackExpansion tr0_1(const LevelnessReport& r, VariableRegistry& registry) {
    if (r.k < 2) throw Error("tr0_1: constraint " + r.name + " needs k >= 2");
    SlackExpansion out;
    out.step.kind = ReductionKind::TR0_1;

    // h(x) - sum h_i s_i = 0 over the k window values, plus one-hot.
    LinearExpression eq = r.expr;
    LinearExpression onehot;
    for (int idx = 0; idx < r.k; ++idx) {
        VarId s = registry.add_ancilla(anc_name(registry, "s_" + r.name + "_" + std::to_string(idx + 1)),
                                       "TR0.1(" + r.name + ")");
        out.created.push_back(s);
        eq.set(s, -r.h_at(r.i + idx));
        onehot.set(s, 1);
    }
    out.constraints.push_back({eq, Rational(0), Rational(0), r.name + ".tr01"});
    out.constraints.push_back({onehot, Rational(1), Rational(1), r.name + ".onehot"});
    out.step.created = out.created;
    out.step.params["k"] = std::to_string(r.k);
    return out;
}

SlackExpansion tr0_1_slack(const LevelnessReport& r, VariableRegistry& registry) {
    std::int64_t w = window_width(r);
    if (w < 2) throw Error("tr0_1_slack: window width must be at least 2");
    SlackExpansion out;
    out.step.kind = ReductionKind::TR0_1Slack;

    // h + sum i*s_i = hi; slack value set {0..w-1} under sum s_i <= 1.
    LinearExpression eq = r.expr;
    LinearExpression conflict;
    for (std::int64_t i = 1; i < w; ++i) {
        VarId s = registry.add_ancilla(anc_name(registry, "s_" + r.name + "_" + std::to_string(i)),
                                       "TR0.1-slack(" + r.name + ")");
        out.created.push_back(s);
        eq.set(s, Rational(i));
        conflict.set(s, 1);
    }
    out.constraints.push_back({eq, r.hi, r.hi, r.name + ".slack"});
    if (out.created.size() >= 2) {
        out.constraints.push_back({conflict, std::nullopt, Rational(1), r.name + ".le1"});
    }
    out.step.created = out.created;
    out.step.params["width"] = std::to_string(w);
    return out;
}

SlackExpansion tr0_2(const LevelnessReport& r, VariableRegistry& registry) {
    std::int64_t w = window_width(r);
    int n_prime = ceil_log2(w);
    SlackExpansion out;
    out.step.kind = ReductionKind::TR0_2;

    // The slack hangs off the constrained bound: h + w' = hi normally,
    // h - w' = lo for a lower-one-sided window. The relaxation beyond the
    // window width then only covers h-values the cube cannot reach.
    bool anchor_low = r.sidedness == Sidedness::LowerOneSided;
    LinearExpression eq = r.expr;
    for (int j = 0; j < n_prime; ++j) {
        VarId s = registry.add_ancilla(anc_name(registry, "s_" + r.name + "_" + std::to_string(j)),
                                       "TR0.2(" + r.name + ")");
        out.created.push_back(s);
        Rational coef(std::int64_t(1) << j);
        eq.set(s, anchor_low ? -coef : coef);
    }
    const Rational& rhs = anchor_low ? r.lo : r.hi;
    out.constraints.push_back({eq, rhs, rhs, r.name + ".slack"});
    out.step.created = out.created;
    out.step.params["n'"] = std::to_string(n_prime);
    bool over_wide = (std::int64_t(1) << n_prime) != w;
    if (over_wide) {
        out.step.params["over_wide"] = "true";
        out.step.params["exact"] = r.sidedness == Sidedness::TwoSided ? "false" : "true";
    }
    return out;
}

SlackExpansion tr0_2n(const LevelnessReport& r, VariableRegistry& registry) {
    std::int64_t w = window_width(r);
    if (w < 2) throw Error("tr0_2n: window width must be at least 2");
    int n_prime = ceil_log2(w);
    std::int64_t a = w - 1 - ((std::int64_t(1) << (n_prime - 1)) - 1);

    SlackExpansion out;
    out.step.kind = ReductionKind::TR0_2n;
    LinearExpression eq = r.expr;
    for (int j = 0; j < n_prime; ++j) {
        VarId s = registry.add_ancilla(anc_name(registry, "s_" + r.name + "_" + std::to_string(j)),
                                       "TR0.2n(" + r.name + ")");
        out.created.push_back(s);
        std::int64_t coef = (j == n_prime - 1) ? a : (std::int64_t(1) << j);
        eq.set(s, Rational(coef));
    }
    out.constraints.push_back({eq, r.hi, r.hi, r.name + ".slack"});
    out.step.created = out.created;
    out.step.params["n'"] = std::to_string(n_prime);
    out.step.params["a"] = std::to_string(a);
    return out;
}

Polynomial rosenberg_penalty(VarId x, VarId y, VarId z) {
    Polynomial p;
    p.add_term({x, y}, 1);
    p.add_term({x, z}, -2);
    p.add_term({y, z}, -2);
    p.add_term({z}, 3);
    return p;
}

Polynomial Tr41Result::combined() const {
    Polynomial out = quadratic;
    for (const auto& r : rosenbergs) out += r.scaled(weight);
    return out;
}

Tr41Result tr4_1_rosenberg(const Polynomial& p, VariableRegistry& registry,
                           std::optional<Rational> weight,
                           const std::vector<std::pair<VarId, VarId>>* pairs_override) {
    if (!p.is_multilinear()) throw Error("tr4_1: polynomial must be multilinear");

    Tr41Result out;
    Rational high_degree_sum = 0;
    for (const auto& [support, coef] : p.terms()) {
        if (support.size() >= 3) high_degree_sum += abs(coef);
    }
    out.weight = weight.value_or(high_degree_sum + 1);

    Polynomial current = p;
    std::size_t override_cursor = 0;
    while (current.degree() >= 3) {
        std::pair<VarId, VarId> pick;
        if (pairs_override) {
            if (override_cursor >= pairs_override->size()) {
                throw Error("tr4_1: explicit pair list exhausted before the polynomial "
                            "became quadratic");
            }
            pick = (*pairs_override)[override_cursor++];
            if (pick.second < pick.first) std::swap(pick.first, pick.second);
        } else {
            // Most frequent pair across the remaining high-degree
            // monomials; map order gives the lowest-pair tie-break.
            std::map<std::pair<VarId, VarId>, int> freq;
            for (const auto& [support, coef] : current.terms()) {
                if (support.size() < 3) continue;
                for (std::size_t a = 0; a < support.size(); ++a) {
                    for (std::size_t b = a + 1; b < support.size(); ++b) {
                        ++freq[{support[a], support[b]}];
                    }
                }
            }
            int best = 0;
            for (const auto& [pair, count] : freq) {
                if (count > best) {
                    best = count;
                    pick = pair;
                }
            }
        }

        VarId z = registry.add_ancilla(
            anc_name(registry, "z" + std::to_string(out.substitutions.size() + 1)), "TR4.1");
        out.created.push_back(z);
        out.substitutions.push_back({pick, z});
        out.rosenbergs.push_back(rosenberg_penalty(pick.first, pick.second, z));
        ReductionStep step;
        step.kind = ReductionKind::TR4_1;
        step.created = {z};
        step.emitted = {out.rosenbergs.back()};
        out.steps.push_back(std::move(step));

        Polynomial next;
        next.add_constant(current.constant());
        for (const auto& [support, coef] : current.terms()) {
            if (support.size() >= 3 &&
                std::binary_search(support.begin(), support.end(), pick.first) &&
                std::binary_search(support.begin(), support.end(), pick.second)) {
                Polynomial::Support replaced;
                for (VarId v : support) {
                    if (v != pick.first && v != pick.second) replaced.push_back(v);
                }
                replaced.push_back(z);
                next.add_term(std::move(replaced), coef);
            } else {
                next.add_term(support, coef);
            }
        }
        current = std::move(next);
    }
    out.quadratic = std::move(current);
    for (auto& step : out.steps) step.params["lambda"] = to_string(out.weight);
    return out;
}

Tr42Result tr4_2_min_selection(const Polynomial& p, VariableRegistry& registry) {
    if (!p.is_multilinear()) throw Error("tr4_2: polynomial must be multilinear");

    Tr42Result out;
    out.quadratic.add_constant(p.constant());
    int gadget = 0;
    for (const auto& [support, coef] : p.terms()) {
        if (support.size() <= 2) {
            out.quadratic.add_term(support, coef);
            continue;
        }
        int d = static_cast<int>(support.size());
        Polynomial s1;
        for (VarId v : support) s1.add_term({v}, 1);
        if (coef < 0) {
            // -|a| * min_s s * (S1 - |I| + 1)
            VarId s = registry.add_ancilla(anc_name(registry, "m" + std::to_string(++gadget)),
                                           "TR4.2-neg");
            out.created.push_back(s);
            Polynomial inner = s1;
            inner.add_constant(Rational(-(d - 1)));
            out.quadratic += (Polynomial::variable(s) * inner).scaled(coef);
            ReductionStep step;
            step.kind = ReductionKind::TR4_2Neg;
            step.created = {s};
            step.params["degree"] = std::to_string(d);
            out.steps.push_back(std::move(step));
        } else {
            // |a| * ( sum_i s_i (c_{i,d}(-S1 + 2i) - 1) + S2 )
            int n_anc = (d - 1) / 2;
            Polynomial gadget_poly;
            ReductionStep step;
            step.kind = ReductionKind::TR4_2Pos;
            step.params["degree"] = std::to_string(d);
            for (int idx = 1; idx <= n_anc; ++idx) {
                VarId s = registry.add_ancilla(anc_name(registry, "m" + std::to_string(++gadget)),
                                               "TR4.2-pos");
                out.created.push_back(s);
                step.created.push_back(s);
                int c_i = (d % 2 == 1 && idx == n_anc) ? 1 : 2;
                Polynomial inner = s1.scaled(-c_i);
                inner.add_constant(Rational(2 * idx * c_i - 1));
                gadget_poly += Polynomial::variable(s) * inner;
            }
            for (std::size_t a = 0; a < support.size(); ++a) {
                for (std::size_t b = a + 1; b < support.size(); ++b) {
                    gadget_poly.add_term({support[a], support[b]}, 1);
                }
            }
            out.quadratic += gadget_poly.scaled(coef);
            out.steps.push_back(std::move(step));
        }
    }
    return out;
}

NormalizedWindow normalize_h0(const LevelnessReport& r) {
    if (r.k < 2) throw Error("normalize_h0: window must have at least two values");
    NormalizedWindow out;
    out.gap = r.h_at(r.i + 1) - r.h_at(r.i);
    Polynomial h = r.expr.to_polynomial();
    h.add_constant(-r.h_at(r.i));
    out.h0 = h.scaled(Rational(1) / out.gap);
    for (int idx = 0; idx < r.k; ++idx) {
        out.H0.push_back((r.h_at(r.i + idx) - r.h_at(r.i)) / out.gap);
    }
    return out;
}

Tr6Result tr6_1(const LevelnessReport& r, VariableRegistry& registry) {
    if (r.k < 3) throw Error("tr6_1: constraint " + r.name + " needs k >= 3");
    NormalizedWindow norm = normalize_h0(r);

    Tr6Result out;
    out.step.kind = ReductionKind::TR6_1;
    // phi1 = h0 - sum_{i>=3} h0_i s_i ; phi2 = h0 + sum_{i>=3} (1 - h0_i) s_i
    Polynomial phi1 = norm.h0;
    Polynomial phi2 = norm.h0;
    for (int idx = 2; idx < r.k; ++idx) {
        VarId s = registry.add_ancilla(anc_name(registry, "s_" + r.name + "_" + std::to_string(idx + 1)),
                                       "TR6.1(" + r.name + ")");
        out.created.push_back(s);
        phi1.add_term({s}, -norm.H0[idx]);
        phi2.add_term({s}, Rational(1) - norm.H0[idx]);
    }
    Polynomial one{Rational(1)};
    Polynomial sum = phi1 * (phi1 - one) + phi2 * (phi2 - one);
    auto [reduced, factor] = multilinear_reduce(sum, true);
    out.penalty = std::move(reduced);
    out.factored_r = factor;
    out.step.created = out.created;
    out.step.emitted = {out.penalty};
    out.step.params["k"] = std::to_string(r.k);
    out.step.params["r"] = to_string(out.factored_r);
    return out;
}

Tr6Result tr6_2(const LevelnessReport& r, VariableRegistry& registry) {
    if (r.k < 3) throw Error("tr6_2: constraint " + r.name + " needs k >= 3");
    std::int64_t w = window_width(r);
    int n_prime = ceil_log2(w);
    std::int64_t a = w - 1 - ((std::int64_t(1) << (n_prime - 1)) - 1);

    Tr6Result out;
    out.step.kind = ReductionKind::TR6_2;
    // phi3 = h0 + sum_{j=1..n'-2} 2^j s_j + a s_{n'-1}; s_0 is eliminated.
    Polynomial phi3 = r.expr.to_polynomial();
    phi3.add_constant(-r.lo);  // h0 = h - lo over an integer window
    for (int j = 1; j < n_prime; ++j) {
        VarId s = registry.add_ancilla(anc_name(registry, "s_" + r.name + "_" + std::to_string(j)),
                                       "TR6.2(" + r.name + ")");
        out.created.push_back(s);
        std::int64_t coef = (j == n_prime - 1) ? a : (std::int64_t(1) << j);
        phi3.add_term({s}, Rational(coef));
    }
    Polynomial f1 = phi3, f2 = phi3;
    f1.add_constant(Rational(-(w - 1)));
    f2.add_constant(Rational(-(w - 2)));
    auto [reduced, factor] = multilinear_reduce(f1 * f2, true);
    out.penalty = std::move(reduced);
    out.factored_r = factor;
    out.step.created = out.created;
    out.step.emitted = {out.penalty};
    out.step.params["n'"] = std::to_string(n_prime);
    out.step.params["a"] = std::to_string(a);
    out.step.params["r"] = to_string(out.factored_r);
    return out;
}

}  // namespace qubolift
