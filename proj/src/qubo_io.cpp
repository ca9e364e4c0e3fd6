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

#include "qubolift/qubo_io.hpp"

#include <sstream>

#include "json.hpp"
#include "qubolift/model.hpp"

namespace qubolift {

using nlohmann::json;

namespace {

json coef_json(const Rational& r) {
    if (auto i = as_int64(r)) return json(*i);
    return json(to_string(r));
}

Rational coef_from(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    throw Error(where + ": expected an integer or \"p/q\" string coefficient");
}

}  // namespace

std::string serialize_qubo_json(const QuboModel& q, const std::optional<QuboMeta>& meta) {
    json j;
    j["n"] = q.dimension;
    j["terms"] = json::array();
    for (const auto& [key, coef] : q.coefficients) {
        j["terms"].push_back({{"i", key.first}, {"j", key.second}, {"coef", coef_json(coef)}});
    }
    j["constant"] = coef_json(q.constant);
    j["decode"] = q.decode;
    if (meta) {
        j["meta"] = {{"problem", meta->problem},
                     {"form", meta->form},
                     {"sense", meta->sense},
                     {"instance", meta->instance}};
    }
    return j.dump(2);
}

QuboModel parse_qubo_json(const std::string& text, std::optional<QuboMeta>* meta) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("qubo JSON parse error: ") + e.what());
    }
    QuboModel q;
    q.dimension = j.at("n").get<std::int32_t>();
    for (const auto& t : j.at("terms")) {
        std::int32_t i = t.at("i").get<std::int32_t>();
        std::int32_t k = t.at("j").get<std::int32_t>();
        if (i > k) std::swap(i, k);
        if (i < 0 || k >= q.dimension) throw Error("qubo term index out of range");
        q.coefficients[{i, k}] += coef_from(t.at("coef"), "qubo term");
    }
    if (j.contains("constant")) q.constant = coef_from(j.at("constant"), "qubo constant");
    if (j.contains("decode")) {
        q.decode = j.at("decode").get<std::vector<std::string>>();
        if (static_cast<std::int32_t>(q.decode.size()) != q.dimension) {
            throw Error("qubo decode list length does not match n");
        }
    }
    if (meta) {
        meta->reset();
        if (j.contains("meta")) {
            QuboMeta m;
            const json& jm = j.at("meta");
            m.problem = jm.value("problem", "");
            m.form = jm.value("form", "");
            m.sense = jm.value("sense", "min");
            m.instance = jm.value("instance", "");
            *meta = std::move(m);
        }
    }
    return q;
}

std::string serialize_qubo_coord(const QuboModel& q) {
    std::ostringstream out;
    out << "c qubo in coordinate form; diagonal entries are linear terms\n";
    out << "p qubo " << q.dimension << ' ' << q.coefficients.size() << ' ' << to_string(q.constant)
        << '\n';
    for (const auto& [key, coef] : q.coefficients) {
        out << key.first << ' ' << key.second << ' ' << to_string(coef) << '\n';
    }
    return out.str();
}

QuboModel parse_qubo_coord(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    QuboModel q;
    bool have_header = false;
    std::size_t declared_terms = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c") continue;
        if (tok == "p") {
            std::string kind, constant;
            if (!(ls >> kind >> q.dimension >> declared_terms >> constant) || kind != "qubo") {
                throw Error("qubo coord: malformed header, expected 'p qubo <n> <terms> <c>'");
            }
            q.constant = rational_from_string(constant);
            have_header = true;
            continue;
        }
        if (!have_header) throw Error("qubo coord: term line before header");
        std::int32_t i = std::stoi(tok), jj;
        std::string coef;
        if (!(ls >> jj >> coef)) throw Error("qubo coord: malformed term line");
        if (i > jj) std::swap(i, jj);
        if (i < 0 || jj >= q.dimension) throw Error("qubo coord: index out of range");
        q.coefficients[{i, jj}] += rational_from_string(coef);
    }
    if (!have_header) throw Error("qubo coord: missing header");
    if (q.coefficients.size() != declared_terms) {
        throw Error("qubo coord: header declares " + std::to_string(declared_terms) +
                    " terms but " + std::to_string(q.coefficients.size()) + " were read");
    }
    for (std::int32_t i = 0; i < q.dimension; ++i) q.decode.push_back("x" + std::to_string(i));
    return q;
}

std::string serialize_polynomial_json(const Polynomial& p, const VariableRegistry& vars) {
    json j;
    j["terms"] = json::array();
    for (const auto& [support, coef] : p.terms()) {
        json names = json::array();
        for (VarId v : support) names.push_back(vars.name(v));
        j["terms"].push_back({{"vars", std::move(names)}, {"coef", coef_json(coef)}});
    }
    j["constant"] = coef_json(p.constant());
    return j.dump(2);
}

Polynomial parse_polynomial_json(const std::string& text, VariableRegistry& vars) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("polynomial JSON parse error: ") + e.what());
    }
    Polynomial p;
    for (const auto& t : j.at("terms")) {
        Polynomial::Support support;
        for (const auto& name : t.at("vars")) {
            std::string n = name.get<std::string>();
            auto id = vars.find(n);
            support.push_back(id ? *id : vars.add_original(n));
        }
        p.add_term(std::move(support), coef_from(t.at("coef"), "polynomial term"));
    }
    if (j.contains("constant")) p.add_constant(coef_from(j.at("constant"), "polynomial constant"));
    return p;
}

std::string serialize_constraint_json(const TwoSidedConstraint& c, const VariableRegistry& vars) {
    json j;
    j["name"] = c.name;
    j["terms"] = json::array();
    for (const auto& [v, coef] : c.expr.terms()) {
        j["terms"].push_back({{"var", vars.name(v)}, {"coef", coef_json(coef)}});
    }
    j["lo"] = c.lo ? coef_json(*c.lo) : json();
    j["hi"] = c.hi ? coef_json(*c.hi) : json();
    return j.dump(2);
}

TwoSidedConstraint parse_constraint_json(const std::string& text, VariableRegistry& vars) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("constraint JSON parse error: ") + e.what());
    }
    TwoSidedConstraint c;
    c.name = j.value("name", "c");
    for (const auto& t : j.at("terms")) {
        std::string n = t.at("var").get<std::string>();
        auto id = vars.find(n);
        VarId v = id ? *id : vars.add_original(n);
        c.expr.add(v, coef_from(t.at("coef"), "constraint term"));
    }
    if (j.contains("lo") && !j.at("lo").is_null()) c.lo = coef_from(j.at("lo"), "lo");
    if (j.contains("hi") && !j.at("hi").is_null()) c.hi = coef_from(j.at("hi"), "hi");
    if (!c.lo && !c.hi) throw Error("constraint: both bounds are infinite");
    return c;
}

}  // namespace qubolift
