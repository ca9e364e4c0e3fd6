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
#include <string>
#include <utility>
#include <vector>

#include "qubolift/rational.hpp"
#include "qubolift/var.hpp"

namespace qubolift {

/// Assignment of binary values to variables. Evaluation errors name the
/// first variable that is missing.
class Assignment {
 public:
    Assignment() = default;

    void set(VarId v, bool value) { values_[v] = value; }
    bool contains(VarId v) const { return values_.count(v) != 0; }
    bool get(VarId v) const;

    const std::map<VarId, bool>& values() const { return values_; }

 private:
    std::map<VarId, bool> values_;
};

/// Pseudo-Boolean polynomial with exact rational coefficients.
///
/// The term map is canonical: supports are sorted, no zero coefficient is
/// stored and the constant lives outside the map. Supports may contain a
/// repeated variable (powers) until multilinear_reduce() is applied;
/// everything the transformation pipeline emits is multilinear.
/// Polynomials are immutable values once built: arithmetic returns new
/// objects, so they are safe to share across threads.
class Polynomial {
 public:
    /// Sorted list of variables; duplicates encode powers (x*x).
    using Support = std::vector<VarId>;

    Polynomial() = default;
    explicit Polynomial(Rational constant) : constant_(std::move(constant)) {}

    static Polynomial variable(VarId v);

    /// Adds coefficient*prod(support); merges with an existing term.
    void add_term(Support support, const Rational& coefficient);
    void add_constant(const Rational& c) { constant_ += c; }

    const std::map<Support, Rational>& terms() const { return terms_; }
    const Rational& constant() const { return constant_; }

    bool is_zero() const { return terms_.empty() && constant_ == 0; }
    bool is_multilinear() const;
    int degree() const;

    std::vector<VarId> support_variables() const;

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial scaled(const Rational& factor) const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);

    bool operator==(const Polynomial& other) const {
        return constant_ == other.constant_ && terms_ == other.terms_;
    }

    /// Exact value at a binary point; throws when a support variable is
    /// missing from the assignment.
    Rational evaluate(const Assignment& a) const;

    /// Debug/test form: "+c·v*v" terms in canonical order, constant last,
    /// e.g. "+1·x1*x2 -1·x1*x3 +1·x3 +0".
    std::string text(const VariableRegistry* names = nullptr) const;

 private:
    std::map<Support, Rational> terms_;
    Rational constant_ = 0;
};

/// Applies x^p = x on binary variables, merges the collapsed terms and,
/// when factor_out is set, divides out the positive gcd r of all
/// coefficients (constant included). Returns (reduced, r); the reduced
/// polynomial equals p/r pointwise on binary points.
std::pair<Polynomial, Rational> multilinear_reduce(const Polynomial& p, bool factor_out);

/// Minimize x^T Q x + c, linear terms on the diagonal.
struct QuboModel {
    std::int32_t dimension = 0;
    std::map<std::pair<std::int32_t, std::int32_t>, Rational> coefficients;  // i <= j
    Rational constant = 0;
    std::vector<std::string> decode;  // position -> source variable name

    Rational evaluate(const std::vector<std::uint8_t>& point) const;
};

/// Lowers a multilinear polynomial of degree <= 2 to QUBO form using the
/// given variable order (position in `order` becomes the QUBO index).
/// Degree > 2 throws an Error listing the offending monomials.
QuboModel to_qubo(const Polynomial& p, const std::vector<VarId>& order,
                  const VariableRegistry* names = nullptr);

/// Convenience overload: order = the polynomial's support sorted by VarId.
QuboModel to_qubo(const Polynomial& p, const VariableRegistry* names = nullptr);

}  // namespace qubolift
