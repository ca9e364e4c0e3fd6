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
#include "qubolift/polynomial.hpp"
#include "support/oracles.hpp"

using namespace qubolift;
using qubolift::testing::for_each_assignment;
using qubolift::testing::poly_of;

namespace {

VarId x(int i) { return VarId::original(static_cast<std::uint32_t>(i)); }

Polynomial linear_combo(const std::vector<std::pair<std::int64_t, int>>& terms,
                        std::int64_t constant = 0) {
    Polynomial p;
    for (const auto& [coef, var] : terms) p.add_term({x(var)}, Rational(coef));
    p.add_constant(Rational(constant));
    return p;
}

Polynomial random_multilinear(std::mt19937_64& rng, int nvars, int max_terms) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> in_support(0, 1);
    Polynomial p{Rational(coef(rng))};
    int count = nterms(rng);
    for (int t = 0; t < count; ++t) {
        Polynomial::Support support;
        for (int v = 0; v < nvars; ++v) {
            if (in_support(rng)) support.push_back(x(v));
        }
        if (support.empty()) continue;
        p.add_term(std::move(support), Rational(coef(rng)));
    }
    return p;
}

}  // namespace

TEST_SUITE_BEGIN("polynomial");

TEST_CASE("rational helpers") {
    CHECK(to_string(Rational(3, 2)) == "3/2");
    CHECK(to_string(Rational(-7)) == "-7");
    CHECK(rational_from_string("3/2") == Rational(3, 2));
    CHECK(rational_from_string("-4") == Rational(-4));
    CHECK_THROWS_AS(rational_from_string("1.5"), Error);
    CHECK_THROWS_AS(rational_from_string("3/0"), Error);
    CHECK(rational_gcd(Rational(4), Rational(6)) == Rational(2));
    CHECK(rational_gcd(Rational(1, 2), Rational(3, 4)) == Rational(1, 4));
    CHECK(rational_gcd(Rational(0), Rational(-6)) == Rational(6));
}

TEST_CASE("terms merge into canonical form") {
    Polynomial p;
    p.add_term({x(1), x(0)}, 2);
    p.add_term({x(0), x(1)}, -2);
    CHECK(p.is_zero());

    p.add_term({x(2)}, 3);
    p.add_term({x(2)}, -1);
    CHECK(p.terms().size() == 1);
    CHECK(p.terms().begin()->second == Rational(2));
}

TEST_CASE("multilinear_reduce collapses powers") {
    // x1^2 - x1 -> 0
    Polynomial p;
    p.add_term({x(1), x(1)}, 1);
    p.add_term({x(1)}, -1);
    auto [reduced, r] = multilinear_reduce(p, true);
    CHECK(reduced.is_zero());
    CHECK(r == Rational(1));
}

TEST_CASE("multilinear_reduce factors the worked-example products") {
    // (x1+2x2-x3)(x1+2x2-x3-1)^2(x1+2x2-x3-2) -> x1x2-x1x3-x2x3+x3, r=12
    Polynomial h = linear_combo({{1, 0}, {2, 1}, {-1, 2}});
    Polynomial f1 = h;
    Polynomial f2 = h; f2.add_constant(-1);
    Polynomial f3 = h; f3.add_constant(-2);
    auto [p1, r1] = multilinear_reduce(f1 * f2 * f2 * f3, true);
    CHECK(r1 == Rational(12));
    CHECK(p1 == poly_of({{1, {0, 1}}, {-1, {0, 2}}, {-1, {1, 2}}, {1, {2}}}));

    // (2x1+2x2-x3-1)(2x1+2x2-x3-2) -> 4x1x2-2x1x3-2x2x3-x1-x2+2x3+1, r=2
    Polynomial g = linear_combo({{2, 0}, {2, 1}, {-1, 2}});
    Polynomial g1 = g; g1.add_constant(-1);
    Polynomial g2 = g; g2.add_constant(-2);
    auto [p2, r2] = multilinear_reduce(g1 * g2, true);
    CHECK(r2 == Rational(2));
    CHECK(p2 == poly_of({{4, {0, 1}}, {-2, {0, 2}}, {-2, {1, 2}}, {-1, {0}}, {-1, {1}}, {2, {2}}},
                        1));
}

TEST_CASE("reduction preserves values up to the factor r") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        Polynomial h = linear_combo({{coef(rng), 0}, {coef(rng), 1}, {coef(rng), 2}}, coef(rng));
        Polynomial raw = h * h * h;  // powers galore
        auto [reduced, r] = multilinear_reduce(raw, true);
        for_each_assignment({x(0), x(1), x(2)}, [&](const Assignment& a) {
            CHECK(raw.evaluate(a) == r * reduced.evaluate(a));
        });
    }
}

TEST_CASE("evaluate matches direct substitution") {
    Polynomial p1 = poly_of({{1, {0, 1}}, {-1, {0, 2}}, {-1, {1, 2}}, {1, {2}}});
    Assignment a;
    a.set(x(0), false);
    a.set(x(1), false);
    a.set(x(2), true);
    CHECK(p1.evaluate(a) == Rational(1));  // must be positive: h = -1 is infeasible

    Polynomial p2 =
        poly_of({{4, {0, 1}}, {-2, {0, 2}}, {-2, {1, 2}}, {-1, {0}}, {-1, {1}}, {2, {2}}}, 1);
    Assignment b;
    b.set(x(0), true);
    b.set(x(1), true);
    b.set(x(2), false);
    CHECK(p2.evaluate(b) == Rational(3));  // h = 4 lies outside [1, 2]

    // any p at the all-zero assignment evaluates to its constant
    Assignment zero;
    for (int v = 0; v < 3; ++v) zero.set(x(v), false);
    Polynomial p3 = poly_of({{5, {0, 1, 2}}, {2, {1}}}, -7);
    CHECK(p3.evaluate(zero) == Rational(-7));
}

TEST_CASE("evaluate names the missing variable") {
    Polynomial p = poly_of({{1, {3}}});
    Assignment a;
    CHECK_THROWS_WITH_AS(static_cast<void>(p.evaluate(a)),
                         doctest::Contains("missing variable id 3"), Error);
}

TEST_CASE("compose: arithmetic identities") {
    Polynomial s = linear_combo({{1, 1}, {1, 2}});
    auto [sq, r] = multilinear_reduce(s * s, false);
    CHECK(sq == poly_of({{1, {1}}, {1, {2}}, {2, {1, 2}}}));
    CHECK(r == Rational(1));

    std::mt19937_64 rng(3);
    Polynomial p = random_multilinear(rng, 4, 6);
    CHECK((p + p.scaled(-1)).is_zero());

    // lambda = 4 scaling multiplies every coefficient
    Polynomial rosen = poly_of({{1, {0, 1}}, {-2, {0, 2}}, {-2, {1, 2}}, {3, {2}}});
    Polynomial scaled = rosen.scaled(4);
    CHECK(scaled == poly_of({{4, {0, 1}}, {-8, {0, 2}}, {-8, {1, 2}}, {12, {2}}}));
}

TEST_CASE("canonical uniqueness: zero difference iff pointwise equal") {
    std::mt19937_64 rng(11);
    int zero_cases = 0;
    for (int trial = 0; trial < 120; ++trial) {
        Polynomial p = random_multilinear(rng, 5, 6);
        Polynomial q = trial % 3 == 0 ? p : random_multilinear(rng, 5, 6);
        Polynomial diff = p - q;
        bool pointwise_equal = true;
        for_each_assignment({x(0), x(1), x(2), x(3), x(4)}, [&](const Assignment& a) {
            if (p.evaluate(a) != q.evaluate(a)) pointwise_equal = false;
        });
        CHECK(diff.is_zero() == pointwise_equal);
        if (diff.is_zero()) ++zero_cases;
    }
    CHECK(zero_cases >= 40);  // the p == q branch actually ran
}

TEST_CASE("to_qubo places linear terms on the diagonal") {
    Polynomial p = poly_of({{3, {0, 1}}, {-1, {0}}}, 5);
    QuboModel q = to_qubo(p);
    CHECK(q.dimension == 2);
    CHECK(q.coefficients.at({0, 1}) == Rational(3));
    CHECK(q.coefficients.at({0, 0}) == Rational(-1));
    CHECK(q.constant == Rational(5));
}

TEST_CASE("to_qubo rejects degree three and lists the monomial") {
    Polynomial p = poly_of({{1, {0, 1, 2}}});
    CHECK_THROWS_WITH_AS(static_cast<void>(to_qubo(p)), doctest::Contains("x0*x1*x2"), Error);
}

TEST_CASE("to_qubo of the empty polynomial") {
    QuboModel q = to_qubo(Polynomial{});
    CHECK(q.dimension == 0);
    CHECK(q.constant == Rational(0));
    CHECK(q.coefficients.empty());
}

TEST_CASE("to_qubo round-trips on random quadratics") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial p;
        int n = 2 + static_cast<int>(rng() % 7);
        for (int i = 0; i < n; ++i) {
            p.add_term({x(i)}, Rational(coef(rng)));
            for (int j = i + 1; j < n; ++j) p.add_term({x(i), x(j)}, Rational(coef(rng)));
        }
        p.add_constant(Rational(coef(rng)));

        std::vector<VarId> order;
        for (int i = 0; i < n; ++i) order.push_back(x(i));
        QuboModel q = to_qubo(p, order);
        std::vector<std::uint8_t> point(n);
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            Assignment a;
            for (int i = 0; i < n; ++i) {
                point[i] = (mask >> i) & 1;
                a.set(x(i), point[i]);
            }
            CHECK(q.evaluate(point) == p.evaluate(a));
        }
    }
}

TEST_CASE("text form is canonical and ends with the constant") {
    Polynomial p = poly_of({{1, {0, 1}}, {-1, {0, 2}}, {-1, {1, 2}}, {1, {2}}});
    CHECK(p.text() == "+1·x0*x1 -1·x0*x2 -1·x1*x2 +1·x2 +0");
    CHECK(Polynomial{}.text() == "+0");
    Polynomial halves = poly_of({{1, {0}}});
    CHECK(halves.scaled(Rational(3, 2)).text() == "+3/2·x0 +0");
}

TEST_SUITE_END();
