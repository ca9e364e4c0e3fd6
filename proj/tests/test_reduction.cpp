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

#include <random>
#include <set>

#include "doctest.h"
#include "qubolift/penalties.hpp"
#include "qubolift/reduction.hpp"
#include "support/oracles.hpp"

using namespace qubolift;
using qubolift::testing::for_each_assignment;
using qubolift::testing::naive_augmented_vip_ok;
using qubolift::testing::poly_of;
using qubolift::testing::project_min;

namespace {

VarId x(int i) { return VarId::original(static_cast<std::uint32_t>(i)); }

VariableRegistry registry_of(int n) {
    VariableRegistry reg;
    for (int i = 0; i < n; ++i) reg.add_original("x" + std::to_string(i + 1));
    return reg;
}

TwoSidedConstraint make(const std::vector<std::pair<std::int64_t, int>>& terms,
                        std::optional<std::int64_t> lo, std::optional<std::int64_t> hi,
                        const std::string& name = "c") {
    TwoSidedConstraint c;
    for (const auto& [coef, var] : terms) c.expr.set(x(var), Rational(coef));
    if (lo) c.lo = Rational(*lo);
    if (hi) c.hi = Rational(*hi);
    c.name = name;
    return c;
}

/// Appendix worked constraint -1 <= x1+x2-x3-2x4 <= 1 and its reduced
/// quartic VIP.
TwoSidedConstraint appendix_constraint() {
    return make({{1, 0}, {1, 1}, {-1, 2}, {-2, 3}}, -1, 1, "appB");
}

Polynomial appendix_quartic() {
    return poly_of({{4, {0, 1, 2, 3}}, {-1, {0, 1, 2}}, {-4, {0, 2, 3}}, {-4, {1, 2, 3}},
                    {1, {0, 1}}, {-1, {0, 3}}, {-1, {1, 3}}, {5, {2, 3}}, {1, {3}}});
}

/// The sixteen assignments of x1..x4 in the appendix tables' row order:
/// all weight-0, then weight-1 in index order, and so on.
std::vector<Assignment> appendix_rows() {
    const int rows[16][4] = {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0},
                             {1, 1, 0, 0}, {1, 0, 1, 0}, {0, 1, 1, 0}, {1, 1, 1, 0},
                             {0, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1},
                             {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 1}};
    std::vector<Assignment> out;
    for (const auto& row : rows) {
        Assignment a;
        for (int i = 0; i < 4; ++i) a.set(x(i), row[i]);
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("reduction");

TEST_CASE("tr0_1 discrete expansion lifts the window exactly") {
    TwoSidedConstraint c = make({{1, 0}, {2, 1}, {-1, 2}}, 0, 2, "c1");
    VariableRegistry reg = registry_of(3);
    LevelnessReport r = refine_and_classify(c);
    SlackExpansion slack = tr0_1(r, reg);
    CHECK(slack.created.size() == 3);  // one ancilla per window value
    REQUIRE(slack.constraints.size() == 2);

    // project the lifted feasible set back onto x
    std::vector<VarId> all = reg.all_ids();
    std::set<std::uint32_t> projected;
    for_each_assignment(all, [&](const Assignment& a) {
        for (const auto& lifted : slack.constraints) {
            if (!qubolift::testing::satisfies(lifted, a)) return;
        }
        std::uint32_t key = 0;
        for (int i = 0; i < 3; ++i) key |= a.get(x(i)) << i;
        projected.insert(key);
    });
    std::set<std::uint32_t> feasible;
    for_each_assignment({x(0), x(1), x(2)}, [&](const Assignment& a) {
        if (qubolift::testing::satisfies(c, a)) {
            std::uint32_t key = 0;
            for (int i = 0; i < 3; ++i) key |= a.get(x(i)) << i;
            feasible.insert(key);
        }
    });
    CHECK(projected == feasible);
}

TEST_CASE("tr0_1 on a five-level window creates five ancillas plus the one-hot") {
    TwoSidedConstraint c = make({{1, 0}, {1, 1}, {1, 2}, {1, 3}, {1, 4}}, 0, 4, "wide");
    VariableRegistry reg = registry_of(5);
    LevelnessReport r = refine_and_classify(c);
    CHECK(r.k == 5);
    SlackExpansion slack = tr0_1(r, reg);
    CHECK(slack.created.size() == 5);
    CHECK(slack.constraints[1].is_equality());  // one-hot: sum s = 1
}

TEST_CASE("tr0_1_slack reproduces the worked-example expansion") {
    // 0 <= x1+2x2-x3 <= 2 becomes x1+2x2-x3+s1+2s2 = 2 with s1+s2 <= 1
    TwoSidedConstraint c = make({{1, 0}, {2, 1}, {-1, 2}}, 0, 2, "c1");
    VariableRegistry reg = registry_of(3);
    SlackExpansion slack = tr0_1_slack(refine_and_classify(c), reg);
    REQUIRE(slack.created.size() == 2);
    REQUIRE(slack.constraints.size() == 2);
    const auto& eq = slack.constraints[0];
    CHECK(eq.is_equality());
    CHECK(*eq.lo == Rational(2));
    CHECK(eq.expr.coefficient(slack.created[0]) == Rational(1));
    CHECK(eq.expr.coefficient(slack.created[1]) == Rational(2));
    CHECK(*slack.constraints[1].hi == Rational(1));  // conflict over s1, s2

    // width-2 window degenerates to a single ancilla and no conflict
    TwoSidedConstraint c2 = make({{2, 0}, {2, 1}, {-1, 2}}, 1, 2, "c2");
    VariableRegistry reg2 = registry_of(3);
    SlackExpansion slack2 = tr0_1_slack(refine_and_classify(c2), reg2);
    CHECK(slack2.created.size() == 1);
    CHECK(slack2.constraints.size() == 1);
}

TEST_CASE("tr0_2 golden widths") {
    // width 4 -> exactly two ancillas
    TwoSidedConstraint c = make({{1, 0}, {1, 1}, {1, 2}}, 0, 3, "w4");
    VariableRegistry reg = registry_of(3);
    SlackExpansion slack = tr0_2(refine_and_classify(c), reg);
    CHECK(slack.created.size() == 2);
    CHECK(slack.step.params.count("over_wide") == 0);

    // worked-example constraint three: 3x1-2x3 <= 1, window [-2,1], width 4
    TwoSidedConstraint c3 = make({{3, 0}, {-2, 2}}, std::nullopt, 1, "c3");
    VariableRegistry reg3 = registry_of(3);
    SlackExpansion s3 = tr0_2(refine_and_classify(c3), reg3);
    REQUIRE(s3.created.size() == 2);
    const auto& eq = s3.constraints[0];
    CHECK(*eq.lo == Rational(1));
    CHECK(eq.expr.coefficient(s3.created[0]) == Rational(1));
    CHECK(eq.expr.coefficient(s3.created[1]) == Rational(2));

    // width 3 -> two ancillas with the over-wide relaxation flagged
    TwoSidedConstraint w3 = make({{1, 0}, {1, 1}}, std::nullopt, 1, "w3");
    VariableRegistry regw = registry_of(2);
    LevelnessReport rw = refine_and_classify(w3);
    SlackExpansion sw = tr0_2(rw, regw);
    CHECK(sw.created.size() == 2);
    CHECK(sw.step.params.at("over_wide") == "true");
}

TEST_CASE("tr0_2n parameters and exact slack range") {
    auto slack_range = [](int width) {
        // build a constraint whose refined window has the given width
        std::vector<std::pair<std::int64_t, int>> terms;
        for (int i = 0; i < width; ++i) terms.push_back({1, i});
        TwoSidedConstraint c = make(terms, 0, width - 1, "w");
        VariableRegistry reg = registry_of(width);
        LevelnessReport r = refine_and_classify(c);
        SlackExpansion slack = tr0_2n(r, reg);
        // enumerate the ancilla cube; the slack is rhs - h with h = 0
        std::set<Rational> values;
        for_each_assignment(slack.created, [&](const Assignment& a) {
            Rational total = 0;
            for (VarId s : slack.created) {
                if (a.get(s)) total += slack.constraints[0].expr.coefficient(s);
            }
            values.insert(total);
        });
        return std::pair{slack, values};
    };

    auto [s3, v3] = slack_range(3);
    CHECK(s3.step.params.at("n'") == "2");
    CHECK(s3.step.params.at("a") == "1");
    CHECK(v3 == std::set<Rational>{0, 1, 2});

    auto [s4, v4] = slack_range(4);
    CHECK(s4.step.params.at("a") == "2");  // coincides with plain binary expansion
    CHECK(v4 == std::set<Rational>{0, 1, 2, 3});

    auto [s6, v6] = slack_range(6);
    CHECK(s6.step.params.at("n'") == "3");
    CHECK(s6.step.params.at("a") == "2");
    CHECK(v6 == std::set<Rational>{0, 1, 2, 3, 4, 5});

    for (int width = 2; width <= 9; ++width) {
        auto [s, values] = slack_range(width);
        std::set<Rational> expected;
        for (int v = 0; v < width; ++v) expected.insert(Rational(v));
        CHECK(values == expected);  // exactly {0..k-1}, never a superset
    }
}

TEST_CASE("rosenberg penalty values") {
    Polynomial R = rosenberg_penalty(x(0), x(1), x(2));
    auto at = [&](bool a, bool b, bool c) {
        Assignment point;
        point.set(x(0), a);
        point.set(x(1), b);
        point.set(x(2), c);
        return R.evaluate(point);
    };
    CHECK(at(1, 1, 0) == Rational(1));
    CHECK(at(1, 1, 1) == Rational(0));
    CHECK(at(0, 0, 1) == Rational(3));
    // zero exactly when z = xy
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                CHECK((at(a, b, c) == 0) == (c == (a & b)));
                CHECK(at(a, b, c) >= 0);
            }
        }
    }
}

TEST_CASE("tr4_1 with the appendix substitutions reproduces the lifted quartic") {
    VariableRegistry reg = registry_of(4);
    std::vector<std::pair<VarId, VarId>> pairs = {{x(0), x(1)}, {x(2), x(3)}};
    Tr41Result red = tr4_1_rosenberg(appendix_quartic(), reg, Rational(4), &pairs);
    REQUIRE(red.created.size() == 2);
    VarId y12 = red.created[0], y34 = red.created[1];

    Polynomial expected_phi;
    expected_phi.add_term({x(0), x(1)}, 1);
    expected_phi.add_term({x(0), x(3)}, -1);
    expected_phi.add_term({x(0), y34}, -4);
    expected_phi.add_term({x(1), x(3)}, -1);
    expected_phi.add_term({x(1), y34}, -4);
    expected_phi.add_term({x(2), x(3)}, 5);
    expected_phi.add_term({x(2), y12}, -1);
    expected_phi.add_term({y12, y34}, 4);
    expected_phi.add_term({x(3)}, 1);
    CHECK(red.quadratic == expected_phi);

    // combined form is phi + 4(R12 + R34); its ancilla minimum recovers
    // the quartic at every point of the original cube
    Polynomial combined = red.combined();
    Polynomial quartic = appendix_quartic();
    for (const Assignment& a : appendix_rows()) {
        CHECK(project_min(combined, a, red.created) == quartic.evaluate(a));
    }
    CHECK(naive_augmented_vip_ok(combined, appendix_constraint(), red.created));
}

TEST_CASE("tr4_1 on the transitivity cubic matches the worked substitution") {
    // x_uv x_vw x_uw - x_uv x_uw - x_vw x_uw + x_uw with y = x_uv x_vw
    Polynomial cubic = poly_of({{1, {0, 1, 2}}, {-1, {0, 2}}, {-1, {1, 2}}, {1, {2}}});
    VariableRegistry reg = registry_of(3);
    std::vector<std::pair<VarId, VarId>> pairs = {{x(0), x(1)}};
    Tr41Result red = tr4_1_rosenberg(cubic, reg, std::nullopt, &pairs);
    REQUIRE(red.created.size() == 1);
    VarId y = red.created[0];
    Polynomial expected;
    expected.add_term({y, x(2)}, 1);
    expected.add_term({x(0), x(2)}, -1);
    expected.add_term({x(1), x(2)}, -1);
    expected.add_term({x(2)}, 1);
    CHECK(red.quadratic == expected);
}

TEST_CASE("tr4_1 greedy default fully quadratizes and stays sound") {
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 25; ++trial) {
        Polynomial p;
        int n = 4 + static_cast<int>(rng() % 2);
        for (int t = 0; t < 5; ++t) {
            Polynomial::Support support;
            for (int v = 0; v < n; ++v) {
                if (rng() % 2) support.push_back(x(v));
            }
            if (support.size() < 3) continue;
            int c = coef(rng);
            if (c) p.add_term(support, Rational(c));
        }
        p.add_term({x(0), x(1)}, 1);
        VariableRegistry reg = registry_of(n);
        Tr41Result red = tr4_1_rosenberg(p, reg);
        CHECK(red.quadratic.degree() <= 2);
        Polynomial combined = red.combined();
        std::vector<VarId> xs;
        for (int v = 0; v < n; ++v) xs.push_back(x(v));
        for_each_assignment(xs, [&](const Assignment& a) {
            CHECK(project_min(combined, a, red.created) == p.evaluate(a));
        });
    }
}

TEST_CASE("tr4_2 golden gadgets") {
    VariableRegistry reg = registry_of(4);

    // -x1x2x3 -> -min_s s(x1+x2+x3-2)
    Polynomial neg = poly_of({{-1, {0, 1, 2}}});
    Tr42Result red_neg = tr4_2_min_selection(neg, reg);
    REQUIRE(red_neg.created.size() == 1);
    VarId s = red_neg.created[0];
    Polynomial expected_neg;
    expected_neg.add_term({x(0), s}, -1);
    expected_neg.add_term({x(1), s}, -1);
    expected_neg.add_term({x(2), s}, -1);
    expected_neg.add_term({s}, 2);
    CHECK(red_neg.quadratic == expected_neg);
    CHECK(red_neg.steps[0].kind == ReductionKind::TR4_2Neg);

    // +x1x2x3x4 -> min_s0 s0(-2 sum x + 3) + sum of pairs
    VariableRegistry reg2 = registry_of(4);
    Polynomial pos = poly_of({{1, {0, 1, 2, 3}}});
    Tr42Result red_pos = tr4_2_min_selection(pos, reg2);
    REQUIRE(red_pos.created.size() == 1);
    VarId s0 = red_pos.created[0];
    Polynomial expected_pos;
    for (int i = 0; i < 4; ++i) expected_pos.add_term({x(i), s0}, -2);
    expected_pos.add_term({s0}, 3);
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) expected_pos.add_term({x(i), x(j)}, 1);
    }
    CHECK(red_pos.quadratic == expected_pos);
    CHECK(red_pos.steps[0].kind == ReductionKind::TR4_2Pos);

    // +x1x2x3 -> min_s s(1*(-S1+2)-1) + S2; equal at all eight points
    VariableRegistry reg3 = registry_of(3);
    Polynomial cubic = poly_of({{1, {0, 1, 2}}});
    Tr42Result red3 = tr4_2_min_selection(cubic, reg3);
    REQUIRE(red3.created.size() == 1);
    for_each_assignment({x(0), x(1), x(2)}, [&](const Assignment& a) {
        CHECK(project_min(red3.quadratic, a, red3.created) == cubic.evaluate(a));
    });
}

TEST_CASE("tr4_2 projects back to the polynomial on random inputs") {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 25; ++trial) {
        Polynomial p;
        int n = 4;
        for (int t = 0; t < 4; ++t) {
            Polynomial::Support support;
            for (int v = 0; v < n; ++v) {
                if (rng() % 2) support.push_back(x(v));
            }
            int c = coef(rng);
            if (!support.empty() && c) p.add_term(support, Rational(c));
        }
        VariableRegistry reg = registry_of(n);
        Tr42Result red = tr4_2_min_selection(p, reg);
        CHECK(red.quadratic.degree() <= 2);
        std::vector<VarId> xs;
        for (int v = 0; v < n; ++v) xs.push_back(x(v));
        for_each_assignment(xs, [&](const Assignment& a) {
            CHECK(project_min(red.quadratic, a, red.created) == p.evaluate(a));
        });
    }
}

TEST_CASE("tr4_1 and tr4_2 agree through their ancilla minima") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 15; ++trial) {
        Polynomial p;
        for (int t = 0; t < 3; ++t) {
            Polynomial::Support support;
            for (int v = 0; v < 4; ++v) {
                if (rng() % 2) support.push_back(x(v));
            }
            int c = coef(rng);
            if (support.size() >= 2 && c) p.add_term(support, Rational(c));
        }
        VariableRegistry reg_a = registry_of(4), reg_b = registry_of(4);
        Tr41Result a = tr4_1_rosenberg(p, reg_a);
        Tr42Result b = tr4_2_min_selection(p, reg_b);
        Polynomial combined = a.combined();
        for_each_assignment({x(0), x(1), x(2), x(3)}, [&](const Assignment& point) {
            CHECK(project_min(combined, point, a.created) ==
                  project_min(b.quadratic, point, b.created));
        });
    }
}

TEST_CASE("normalization rescales the window onto 0, 1") {
    LevelnessReport r = refine_and_classify(appendix_constraint());
    NormalizedWindow norm = normalize_h0(r);
    CHECK(norm.gap == Rational(1));
    CHECK(norm.H0 == std::vector<Rational>{0, 1, 2});
    Polynomial expected = poly_of({{1, {0}}, {1, {1}}, {-1, {2}}, {-2, {3}}}, 1);
    CHECK(norm.h0 == expected);

    // already-normalized window is the identity
    TwoSidedConstraint c2 = make({{1, 0}, {1, 1}}, 0, 1, "id");
    NormalizedWindow norm2 = normalize_h0(refine_and_classify(c2));
    CHECK(norm2.h0 == poly_of({{1, {0}}, {1, {1}}}));
    CHECK(norm2.H0 == std::vector<Rational>{0, 1});

    // H window {3, 5}: h0 = (h-3)/2 with image {0, 1}
    TwoSidedConstraint c3 = make({{3, 0}, {2, 1}}, 3, 5, "gap");
    LevelnessReport r3 = refine_and_classify(c3);
    NormalizedWindow norm3 = normalize_h0(r3);
    CHECK(norm3.gap == Rational(2));
    for_each_assignment({x(0), x(1)}, [&](const Assignment& a) {
        Rational h = c3.expr.evaluate(a);
        CHECK(norm3.h0.evaluate(a) == (h - 3) / 2);
    });
}

TEST_CASE("tr6_1 reproduces the k = 3 closed form") {
    LevelnessReport r = refine_and_classify(appendix_constraint());
    VariableRegistry reg = registry_of(4);
    Tr6Result red = tr6_1(r, reg);
    REQUIRE(red.created.size() == 1);  // ancillas s3..sk only
    CHECK(red.factored_r == Rational(2));
    VarId s3 = red.created[0];

    // closed form: h0^2 + h0 (s - 2 h03 s - 1) + h03^2 s with h03 = 2
    Polynomial h0 = poly_of({{1, {0}}, {1, {1}}, {-1, {2}}, {-2, {3}}}, 1);
    Polynomial inner = Polynomial::variable(s3).scaled(-3);
    inner.add_constant(-1);
    Polynomial closed = h0 * h0 + h0 * inner + Polynomial::variable(s3).scaled(4);
    auto [closed_ml, r_ignore] = multilinear_reduce(closed, false);
    CHECK(red.penalty == closed_ml);
    CHECK(naive_augmented_vip_ok(red.penalty, appendix_constraint(), red.created));
}

TEST_CASE("tr6_1 appendix table: both slices and the projected range") {
    LevelnessReport r = refine_and_classify(appendix_constraint());
    VariableRegistry reg = registry_of(4);
    Tr6Result red = tr6_1(r, reg);
    VarId s3 = red.created[0];

    const std::int64_t col0[16] = {0, 2, 2, 0, 6, 0, 0, 2, 2, 0, 0, 6, 0, 2, 2, 0};
    const std::int64_t col1[16] = {1, 0, 0, 4, 1, 1, 1, 0, 9, 4, 4, 16, 1, 9, 9, 4};
    const std::int64_t mins[16] = {0, 0, 0, 0, 1, 0, 0, 0, 2, 0, 0, 6, 0, 2, 2, 0};
    std::vector<Assignment> rows = appendix_rows();
    std::set<Rational> range;
    for (int row = 0; row < 16; ++row) {
        Assignment a0 = rows[row], a1 = rows[row];
        a0.set(s3, false);
        a1.set(s3, true);
        CHECK(red.penalty.evaluate(a0) == Rational(col0[row]));
        CHECK(red.penalty.evaluate(a1) == Rational(col1[row]));
        Rational m = std::min(red.penalty.evaluate(a0), red.penalty.evaluate(a1));
        CHECK(m == Rational(mins[row]));
        range.insert(m);
    }
    CHECK(range == std::set<Rational>{0, 1, 2, 6});
}

TEST_CASE("tr6_2 reproduces the k = 3 closed form and its table") {
    LevelnessReport r = refine_and_classify(appendix_constraint());
    VariableRegistry reg = registry_of(4);
    Tr6Result red = tr6_2(r, reg);
    REQUIRE(red.created.size() == 1);  // n' - 1 ancillas
    CHECK(red.factored_r == Rational(2));
    CHECK(red.step.params.at("a") == "1");
    VarId s1 = red.created[0];

    // twice the reduced penalty equals (h0 + s - 2)(h0 + s - 1)
    Polynomial h0 = poly_of({{1, {0}}, {1, {1}}, {-1, {2}}, {-2, {3}}}, 1);
    Polynomial f1 = h0 + Polynomial::variable(s1);
    Polynomial f2 = f1;
    f1.add_constant(-2);
    f2.add_constant(-1);
    auto [product, rp] = multilinear_reduce(f1 * f2, false);
    CHECK(red.penalty.scaled(2) == product);

    const std::int64_t col0[16] = {0, 0, 0, 1, 1, 0, 0, 0, 3, 1, 1, 6, 0, 3, 3, 1};
    const std::int64_t col1[16] = {0, 1, 1, 0, 3, 0, 0, 1, 1, 0, 0, 3, 0, 1, 1, 0};
    const std::int64_t mins[16] = {0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 3, 0, 1, 1, 0};
    std::vector<Assignment> rows = appendix_rows();
    std::set<Rational> range;
    for (int row = 0; row < 16; ++row) {
        Assignment a0 = rows[row], a1 = rows[row];
        a0.set(s1, false);
        a1.set(s1, true);
        CHECK(red.penalty.evaluate(a0) == Rational(col0[row]));
        CHECK(red.penalty.evaluate(a1) == Rational(col1[row]));
        range.insert(std::min(red.penalty.evaluate(a0), red.penalty.evaluate(a1)));
        CHECK(std::min(red.penalty.evaluate(a0), red.penalty.evaluate(a1)) ==
              Rational(mins[row]));
    }
    CHECK(range == std::set<Rational>{0, 1, 3});
    CHECK(naive_augmented_vip_ok(red.penalty, appendix_constraint(), red.created));
}

TEST_CASE("tr6 emits sound augmented penalties on random windows") {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> coef(-4, 4);
    int checked = 0;
    for (int trial = 0; trial < 120 && checked < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 4);
        TwoSidedConstraint c;
        c.name = "t";
        for (int i = 0; i < n; ++i) {
            int value = coef(rng);
            if (value) c.expr.set(x(i), Rational(value));
        }
        if (c.expr.empty()) continue;
        std::vector<Rational> H = value_set(c.expr);
        if (H.size() < 4) continue;
        std::size_t a = rng() % H.size(), b = rng() % H.size();
        c.lo = std::min(H[a], H[b]);
        c.hi = std::max(H[a], H[b]);
        LevelnessReport r = refine_and_classify(c);
        if (r.k < 3 || r.vacuous()) continue;
        ++checked;
        VariableRegistry reg1 = registry_of(n), reg2 = registry_of(n);
        Tr6Result red1 = tr6_1(r, reg1);
        CHECK(static_cast<int>(red1.created.size()) == r.k - 2);
        CHECK(naive_augmented_vip_ok(red1.penalty, c, red1.created));
        Tr6Result red2 = tr6_2(r, reg2);
        CHECK(naive_augmented_vip_ok(red2.penalty, c, red2.created));
    }
    CHECK(checked == 40);
}

TEST_CASE("tr6_1 handles fractional window gaps") {
    TwoSidedConstraint c;
    c.name = "frac";
    c.expr.set(x(0), Rational(1, 2));
    c.expr.set(x(1), Rational(3, 2));
    c.expr.set(x(2), Rational(-1));
    c.lo = Rational(-1);
    c.hi = Rational(3, 2);
    LevelnessReport r = refine_and_classify(c);
    REQUIRE(r.k >= 3);
    VariableRegistry reg = registry_of(3);
    Tr6Result red = tr6_1(r, reg);
    CHECK(naive_augmented_vip_ok(red.penalty, c, red.created));
    // reduced coefficients are integral, so violations cost at least one
    for (const auto& [support, coefficient] : red.penalty.terms()) {
        CHECK(is_integer(coefficient));
    }
}

TEST_SUITE_END();
