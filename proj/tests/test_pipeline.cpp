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

#include "doctest.h"
#include "qubolift/pipeline.hpp"
#include "qubolift/verify.hpp"
#include "support/oracles.hpp"

using namespace qubolift;
using qubolift::testing::naive_blp_optimum;
using qubolift::testing::naive_qubo_minimum;
using qubolift::testing::poly_of;

namespace {

VarId x(int i) { return VarId::original(static_cast<std::uint32_t>(i)); }

BlpModel worked_example() {
    BlpModel m;
    for (int i = 1; i <= 3; ++i) m.variables.add_original("x" + std::to_string(i));
    m.objective.expr.set(x(0), 1);
    m.objective.expr.set(x(1), 1);
    m.objective.expr.set(x(2), 2);
    TwoSidedConstraint c1;
    c1.name = "c1";
    c1.expr.set(x(0), 1);
    c1.expr.set(x(1), 2);
    c1.expr.set(x(2), -1);
    c1.lo = Rational(0);
    c1.hi = Rational(2);
    TwoSidedConstraint c2;
    c2.name = "c2";
    c2.expr.set(x(0), 2);
    c2.expr.set(x(1), 2);
    c2.expr.set(x(2), -1);
    c2.lo = Rational(1);
    c2.hi = Rational(2);
    TwoSidedConstraint c3;
    c3.name = "c3";
    c3.expr.set(x(0), 3);
    c3.expr.set(x(2), -2);
    c3.hi = Rational(1);
    m.constraints.push_back(c1);
    m.constraints.push_back(c2);
    m.constraints.push_back(c3);
    return m;
}

BlpModel appendix_model() {
    BlpModel m;
    for (int i = 1; i <= 4; ++i) m.variables.add_original("x" + std::to_string(i));
    m.objective.expr.set(x(3), 1);
    TwoSidedConstraint c;
    c.name = "appB";
    c.expr.set(x(0), 1);
    c.expr.set(x(1), 1);
    c.expr.set(x(2), -1);
    c.expr.set(x(3), -2);
    c.lo = Rational(-1);
    c.hi = Rational(1);
    m.constraints.push_back(c);
    return m;
}

BlpModel triangle_mis() {
    BlpModel m;
    for (int i = 1; i <= 3; ++i) m.variables.add_original("x" + std::to_string(i));
    m.objective.sense = Sense::Maximize;
    for (int i = 0; i < 3; ++i) m.objective.expr.set(x(i), 1);
    const int edges[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& e : edges) {
        TwoSidedConstraint c;
        c.name = "e" + std::to_string(e[0] + 1) + "_" + std::to_string(e[1] + 1);
        c.expr.set(x(e[0]), 1);
        c.expr.set(x(e[1]), 1);
        c.hi = Rational(1);
        m.constraints.push_back(std::move(c));
    }
    return m;
}

const Variant kMlctsVariants[] = {Variant::MlctsTr41, Variant::MlctsTr42,
                                  Variant::MlctsTr01Tr61, Variant::MlctsTr02nTr62};

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("worked example compiles compactly under every variant") {
    BlpModel m = worked_example();
    for (Variant variant : kMlctsVariants) {
        PipelineConfig cfg;
        cfg.variant = variant;
        CompiledQubo compiled = mlcts(m, cfg);
        CHECK(compiled.qubo.dimension == 3);  // all penalties quadratic before reduction
        CHECK(compiled.ancillary_count == 0);
        CHECK(compiled.is_compact);
        CHECK(check_equivalence(m, compiled).ok);
    }
}

TEST_CASE("worked example trace records the three reduced penalties") {
    CompiledQubo compiled = mlcts(worked_example(), {});
    REQUIRE(compiled.trace.constraints.size() == 3);
    const auto& t1 = compiled.trace.constraints[0];
    const auto& t2 = compiled.trace.constraints[1];
    const auto& t3 = compiled.trace.constraints[2];

    CHECK(t1.rule == "Lemma3");
    CHECK(t1.factored_r == Rational(12));
    CHECK(t1.penalty_text ==
          poly_of({{1, {0, 1}}, {-1, {0, 2}}, {-1, {1, 2}}, {1, {2}}}).text());

    CHECK(t2.rule == "Lemma1");
    CHECK(t2.factored_r == Rational(2));
    CHECK(t2.penalty_text ==
          poly_of({{4, {0, 1}}, {-2, {0, 2}}, {-2, {1, 2}}, {-1, {0}}, {-1, {1}}, {2, {2}}}, 1)
              .text());

    CHECK(t3.rule == "Lemma2");
    CHECK(t3.factored_r == Rational(30));
    CHECK(t3.penalty_text == poly_of({{1, {0}}, {-1, {0, 2}}}).text());
}

TEST_CASE("conventional scheme on the worked example has dimension eight") {
    BlpModel m = worked_example();
    PipelineConfig cfg;
    cfg.variant = Variant::Cts;
    CompiledQubo compiled = cts(m, cfg);
    CHECK(compiled.qubo.dimension == 8);
    CHECK(compiled.ancillary_count == 5);
    CHECK(!compiled.is_compact);
    CHECK(check_equivalence(m, compiled).ok);
    // both schemes share the model optimum (1 at x = (0,1,0))
    CHECK(naive_qubo_minimum(compiled.qubo) == Rational(1));
    CHECK(naive_qubo_minimum(mlcts(m, {}).qubo) == Rational(1));
}

TEST_CASE("triangle independent-set model becomes the known compact qubo") {
    BlpModel m = triangle_mis();
    PipelineConfig cfg;
    cfg.penalty_mode = PenaltyMode::Fixed;
    for (const auto& c : m.constraints) cfg.fixed_lambdas[c.name] = Rational(2);
    CompiledQubo compiled = mlcts(m, cfg);
    CHECK(compiled.qubo.dimension == 3);
    // -sum x_v + 2 sum over edges x_v x_u
    for (int i = 0; i < 3; ++i) CHECK(compiled.qubo.coefficients.at({i, i}) == Rational(-1));
    CHECK(compiled.qubo.coefficients.at({0, 1}) == Rational(2));
    CHECK(compiled.qubo.coefficients.at({0, 2}) == Rational(2));
    CHECK(compiled.qubo.coefficients.at({1, 2}) == Rational(2));
    CHECK(naive_qubo_minimum(compiled.qubo) == Rational(-1));
}

TEST_CASE("conventional scheme on the triangle uses one slack per edge") {
    BlpModel m = triangle_mis();
    PipelineConfig cfg;
    cfg.variant = Variant::Cts;
    CompiledQubo compiled = cts(m, cfg);
    CHECK(compiled.qubo.dimension == 6);  // n + m
    CHECK(check_equivalence(m, compiled).ok);
}

TEST_CASE("appendix constraint produces 2/4/1/1 ancillas across the variants") {
    BlpModel m = appendix_model();
    int expected[] = {2, 4, 1, 1};
    for (int i = 0; i < 4; ++i) {
        PipelineConfig cfg;
        cfg.variant = kMlctsVariants[i];
        CompiledQubo compiled = mlcts(m, cfg);
        CHECK(compiled.ancillary_count == expected[i]);
        CHECK(compiled.qubo.dimension == 4 + expected[i]);
        CHECK(check_equivalence(m, compiled).ok);
    }
}

TEST_CASE("certificate is false for the worked example yet the qubo is compact") {
    CompiledQubo compiled = mlcts(worked_example(), {});
    REQUIRE(compiled.certificate.KN.has_value());
    CHECK(*compiled.certificate.KN == 3);
    CHECK(!compiled.certificate.compact_guaranteed);
    CHECK(compiled.is_compact);  // the condition is sufficient, not necessary
}

TEST_CASE("certificate guarantee: certified models compile with zero ancillas") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 30; ++trial) {
        BlpModel m;
        int n = 3 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i) m.variables.add_original("v" + std::to_string(i));
        m.objective.expr.set(x(static_cast<int>(rng() % n)), 1);
        int nc = 1 + static_cast<int>(rng() % 4);
        for (int ci = 0; ci < nc; ++ci) {
            // regular two-variable windows are always certificate-friendly
            TwoSidedConstraint c;
            c.name = "c" + std::to_string(ci);
            int a = static_cast<int>(rng() % n);
            int b = (a + 1 + static_cast<int>(rng() % (n - 1))) % n;
            c.expr.set(x(a), 1);
            c.expr.set(x(b), rng() % 2 ? 1 : -1);
            c.hi = Rational(static_cast<std::int64_t>(rng() % 2));
            m.constraints.push_back(std::move(c));
        }
        CompiledQubo compiled = mlcts(m, {});
        if (compiled.certificate.compact_guaranteed) {
            CHECK(compiled.ancillary_count == 0);
        }
    }
}

TEST_CASE("default variant never uses more ancillas than the conventional scheme") {
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        BlpModel m;
        int n = 2 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i) m.variables.add_original("v" + std::to_string(i));
        m.objective.expr.set(x(0), 1);
        int nc = 1 + static_cast<int>(rng() % 3);
        for (int ci = 0; ci < nc; ++ci) {
            TwoSidedConstraint c;
            c.name = "c" + std::to_string(ci);
            for (int i = 0; i < n; ++i) {
                int value = coef(rng);
                if (value) c.expr.set(x(i), Rational(value));
            }
            if (c.expr.empty()) c.expr.set(x(0), 1);
            std::vector<Rational> H = value_set(c.expr);
            std::size_t a = rng() % H.size(), b = rng() % H.size();
            c.lo = std::min(H[a], H[b]);
            c.hi = std::max(H[a], H[b]);
            m.constraints.push_back(std::move(c));
        }
        PipelineConfig cts_cfg;
        cts_cfg.variant = Variant::Cts;
        CHECK(mlcts(m, {}).ancillary_count <= cts(m, cts_cfg).ancillary_count);
    }
}

TEST_CASE("penalty weights: auto bound, fixed map, and the empty model") {
    BlpModel mis = triangle_mis();
    auto weights = choose_penalties(mis, {});
    REQUIRE(weights.size() == 3);
    for (const auto& [name, lambda] : weights) CHECK(lambda == Rational(4));  // 1 + sum|coef|

    PipelineConfig fixed;
    fixed.penalty_mode = PenaltyMode::Fixed;
    fixed.fixed_lambdas["e1_2"] = Rational(7);
    auto mixed = choose_penalties(mis, fixed);
    CHECK(mixed.at("e1_2") == Rational(7));
    CHECK(mixed.at("e1_3") == Rational(4));

    BlpModel empty;
    empty.variables.add_original("a");
    CHECK(choose_penalties(empty, {}).empty());

    PipelineConfig bad;
    bad.penalty_mode = PenaltyMode::Fixed;
    bad.fixed_lambdas["e1_2"] = Rational(0);
    CHECK_THROWS_WITH_AS(static_cast<void>(mlcts(mis, bad)), doctest::Contains("positive"),
                         Error);
}

TEST_CASE("vacuous constraints are dropped with a warning") {
    BlpModel m;
    m.variables.add_original("a");
    m.variables.add_original("b");
    m.objective.expr.set(x(0), 1);
    TwoSidedConstraint c;
    c.name = "slack";
    c.expr.set(x(0), 1);
    c.expr.set(x(1), 1);
    c.lo = Rational(0);
    c.hi = Rational(5);
    m.constraints.push_back(c);
    CompiledQubo compiled = mlcts(m, {});
    REQUIRE(compiled.trace.warnings.size() == 1);
    CHECK(compiled.trace.warnings[0].find("redundant") != std::string::npos);
    CHECK(compiled.trace.penalty_parameters.empty());
}

TEST_CASE("non-integer data: cts refuses, tr6.2 falls back to tr6.1") {
    BlpModel m;
    for (int i = 0; i < 3; ++i) m.variables.add_original("v" + std::to_string(i));
    m.objective.expr.set(x(0), 1);
    TwoSidedConstraint c;
    c.name = "frac";
    c.expr.set(x(0), Rational(1, 2));
    c.expr.set(x(1), Rational(3, 2));
    c.expr.set(x(2), Rational(-1));
    c.lo = Rational(-1);
    c.hi = Rational(3, 2);
    m.constraints.push_back(c);

    PipelineConfig cts_cfg;
    cts_cfg.variant = Variant::Cts;
    CHECK_THROWS_WITH_AS(static_cast<void>(cts(m, cts_cfg)), doctest::Contains("non-integer"),
                         Error);

    CompiledQubo compiled = mlcts(m, {});  // default variant is TR6.2
    REQUIRE(compiled.trace.warnings.size() == 1);
    CHECK(compiled.trace.warnings[0].find("fell back") != std::string::npos);
    CHECK(check_equivalence(m, compiled).ok);
}

TEST_CASE("trace serializes to JSON with rules and created ancillas") {
    PipelineConfig cfg;
    cfg.variant = Variant::MlctsTr02nTr62;
    BlpModel m = appendix_model();
    CompiledQubo compiled = mlcts(m, cfg);
    std::string json = trace_to_json(compiled.trace, compiled.variables);
    CHECK(json.find("\"variant\": \"tr6.2\"") != std::string::npos);
    CHECK(json.find("TR6.2") != std::string::npos);
    CHECK(json.find("\"lambda\"") != std::string::npos);
}

TEST_SUITE_END();
