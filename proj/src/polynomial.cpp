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

#include "qubolift/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qubolift {

bool Assignment::get(VarId v) const {
    auto it = values_.find(v);
    if (it == values_.end()) {
        throw Error("missing variable id " + std::to_string(v.index()) +
                    (v.is_ancilla() ? " (ancillary)" : "") + " in assignment");
    }
    return it->second;
}

Polynomial Polynomial::variable(VarId v) {
    Polynomial p;
    p.add_term({v}, 1);
    return p;
}

void Polynomial::add_term(Support support, const Rational& coefficient) {
    if (coefficient == 0) return;
    if (support.empty()) {
        constant_ += coefficient;
        return;
    }
    std::sort(support.begin(), support.end());
    auto it = terms_.find(support);
    if (it == terms_.end()) {
        terms_.emplace(std::move(support), coefficient);
    } else {
        it->second += coefficient;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Polynomial::is_multilinear() const {
    for (const auto& [support, coef] : terms_) {
        for (std::size_t i = 1; i < support.size(); ++i) {
            if (support[i] == support[i - 1]) return false;
        }
    }
    return true;
}

int Polynomial::degree() const {
    std::size_t d = 0;
    for (const auto& [support, coef] : terms_) d = std::max(d, support.size());
    return static_cast<int>(d);
}

std::vector<VarId> Polynomial::support_variables() const {
    std::set<VarId> vars;
    for (const auto& [support, coef] : terms_) vars.insert(support.begin(), support.end());
    return {vars.begin(), vars.end()};
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    Polynomial out = *this;
    out += other;
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    Polynomial out = *this;
    out -= other;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    constant_ += other.constant_;
    for (const auto& [support, coef] : other.terms_) add_term(support, coef);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    constant_ -= other.constant_;
    for (const auto& [support, coef] : other.terms_) add_term(support, -coef);
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    Polynomial out;
    out.constant_ = constant_ * other.constant_;
    for (const auto& [s, c] : terms_) {
        if (other.constant_ != 0) out.add_term(s, c * other.constant_);
    }
    for (const auto& [s, c] : other.terms_) {
        if (constant_ != 0) out.add_term(s, c * constant_);
    }
    for (const auto& [s1, c1] : terms_) {
        for (const auto& [s2, c2] : other.terms_) {
            Support merged;
            merged.reserve(s1.size() + s2.size());
            std::merge(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(merged));
            out.add_term(std::move(merged), c1 * c2);
        }
    }
    return out;
}

Polynomial Polynomial::scaled(const Rational& factor) const {
    Polynomial out;
    if (factor == 0) return out;
    out.constant_ = constant_ * factor;
    for (const auto& [s, c] : terms_) out.terms_.emplace(s, c * factor);
    return out;
}

Rational Polynomial::evaluate(const Assignment& a) const {
    Rational value = constant_;
    for (const auto& [support, coef] : terms_) {
        bool active = true;
        for (VarId v : support) {
            if (!a.get(v)) {
                active = false;
                break;
            }
        }
        if (active) value += coef;
    }
    return value;
}

std::string Polynomial::text(const VariableRegistry* names) const {
    std::ostringstream out;
    auto var_name = [&](VarId v) -> std::string {
        if (names) return names->name(v);
        return (v.is_ancilla() ? "s" : "x") + std::to_string(v.index());
    };
    auto coef_text = [](const Rational& c) {
        std::string s = to_string(c);
        if (s[0] != '-') s = "+" + s;
        return s;
    };
    bool first = true;
    for (const auto& [support, coef] : terms_) {
        if (!first) out << ' ';
        first = false;
        out << coef_text(coef) << "·";
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (i) out << '*';
            out << var_name(support[i]);
        }
    }
    if (!first) out << ' ';
    out << coef_text(constant_);
    return out.str();
}

std::pair<Polynomial, Rational> multilinear_reduce(const Polynomial& p, bool factor_out) {
    Polynomial reduced;
    reduced.add_constant(p.constant());
    for (const auto& [support, coef] : p.terms()) {
        Polynomial::Support unique = support;
        unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
        reduced.add_term(std::move(unique), coef);
    }
    Rational r = 1;
    if (factor_out && !reduced.is_zero()) {
        Rational g = abs(reduced.constant());
        for (const auto& [support, coef] : reduced.terms()) g = rational_gcd(g, coef);
        if (g != 0 && g != 1) {
            reduced = reduced.scaled(Rational(1) / g);
            r = g;
        }
    }
    return {std::move(reduced), r};
}

Rational QuboModel::evaluate(const std::vector<std::uint8_t>& point) const {
    if (static_cast<std::int32_t>(point.size()) != dimension) {
        throw Error("qubo point dimension mismatch");
    }
    Rational value = constant;
    for (const auto& [key, coef] : coefficients) {
        if (point[key.first] && point[key.second]) value += coef;
    }
    return value;
}

QuboModel to_qubo(const Polynomial& p, const std::vector<VarId>& order,
                  const VariableRegistry* names) {
    if (!p.is_multilinear()) throw Error("to_qubo requires a multilinear polynomial");
    if (p.degree() > 2) {
        std::string offenders;
        for (const auto& [support, coef] : p.terms()) {
            if (support.size() > 2) {
                if (!offenders.empty()) offenders += ", ";
                Polynomial mono;
                mono.add_term(support, coef);
                offenders += mono.text(names);
            }
        }
        throw Error("polynomial has degree > 2; offending monomials: {" + offenders + "}");
    }

    std::map<VarId, std::int32_t> position;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (!position.emplace(order[i], static_cast<std::int32_t>(i)).second) {
            throw Error("duplicate variable in qubo order");
        }
    }

    QuboModel q;
    q.dimension = static_cast<std::int32_t>(order.size());
    q.constant = p.constant();
    q.decode.reserve(order.size());
    for (VarId v : order) {
        if (names) {
            q.decode.push_back(names->name(v));
        } else {
            q.decode.push_back((v.is_ancilla() ? "s" : "x") + std::to_string(v.index()));
        }
    }
    for (const auto& [support, coef] : p.terms()) {
        std::int32_t i, j;
        auto pos = [&](VarId v) {
            auto it = position.find(v);
            if (it == position.end()) throw Error("qubo order is missing a support variable");
            return it->second;
        };
        if (support.size() == 1) {
            i = j = pos(support[0]);
        } else {
            i = pos(support[0]);
            j = pos(support[1]);
            if (i > j) std::swap(i, j);
        }
        q.coefficients[{i, j}] += coef;
    }
    return q;
}

QuboModel to_qubo(const Polynomial& p, const VariableRegistry* names) {
    return to_qubo(p, p.support_variables(), names);
}

}  // namespace qubolift
