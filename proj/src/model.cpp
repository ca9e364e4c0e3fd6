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

#include "qubolift/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qubolift {

using nlohmann::json;

void LinearExpression::set(VarId v, const Rational& coefficient) {
    if (coefficient == 0) {
        terms_.erase(v);
    } else {
        terms_[v] = coefficient;
    }
}

void LinearExpression::add(VarId v, const Rational& coefficient) {
    set(v, this->coefficient(v) + coefficient);
}

Rational LinearExpression::coefficient(VarId v) const {
    auto it = terms_.find(v);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool LinearExpression::all_integer() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return is_integer(t.second); });
}

Rational LinearExpression::evaluate(const Assignment& a) const {
    Rational value = 0;
    for (const auto& [v, c] : terms_) {
        if (a.get(v)) value += c;
    }
    return value;
}

Polynomial LinearExpression::to_polynomial() const {
    Polynomial p;
    for (const auto& [v, c] : terms_) p.add_term({v}, c);
    return p;
}

LinearExpression BlpModel::min_objective() const {
    if (objective.sense == Sense::Minimize) return objective.expr;
    LinearExpression neg;
    for (const auto& [v, c] : objective.expr.terms()) neg.set(v, -c);
    return neg;
}

Rational BlpModel::min_constant() const {
    return objective.sense == Sense::Minimize ? objective.constant : -objective.constant;
}

bool BlpModel::feasible(const Assignment& a) const {
    for (const auto& c : constraints) {
        Rational h = c.expr.evaluate(a);
        if (c.lo && h < *c.lo) return false;
        if (c.hi && h > *c.hi) return false;
    }
    return true;
}

namespace {

Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    if (j.is_number_float()) {
        double d = j.get<double>();
        if (d == static_cast<std::int64_t>(d)) return Rational(static_cast<std::int64_t>(d));
        throw Error(where + ": non-integral float coefficients are not accepted; "
                            "use a \"p/q\" string for exact rationals");
    }
    throw Error(where + ": expected a number or \"p/q\" string");
}

json rational_to_json(const Rational& r) {
    if (auto i = as_int64(r)) return json(*i);
    return json(to_string(r));
}

LinearExpression parse_terms(const json& jterms, const VariableRegistry& vars,
                             const std::string& where) {
    if (!jterms.is_array()) throw Error(where + ": \"terms\" must be an array");
    LinearExpression expr;
    for (const auto& t : jterms) {
        if (!t.contains("var") || !t.contains("coef")) {
            throw Error(where + ": each term needs \"var\" and \"coef\"");
        }
        std::string name = t.at("var").get<std::string>();
        auto id = vars.find(name);
        if (!id) throw Error(where + ": unknown variable " + name);
        if (expr.coefficient(*id) != 0) {
            throw Error(where + ": variable " + name + " appears twice");
        }
        expr.set(*id, rational_from_json(t.at("coef"), where));
    }
    return expr;
}

json terms_to_json(const LinearExpression& expr, const VariableRegistry& vars) {
    json out = json::array();
    for (const auto& [v, c] : expr.terms()) {
        out.push_back({{"var", vars.name(v)}, {"coef", rational_to_json(c)}});
    }
    return out;
}

}  // namespace

BlpModel parse_model_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("model JSON parse error: ") + e.what());
    }

    BlpModel m;
    if (!j.contains("variables") || !j.at("variables").is_array()) {
        throw Error("model: missing \"variables\" array");
    }
    for (const auto& v : j.at("variables")) {
        m.variables.add_original(v.get<std::string>());
    }

    if (j.contains("objective")) {
        const json& jo = j.at("objective");
        std::string sense = jo.value("sense", "min");
        if (sense == "min") {
            m.objective.sense = Sense::Minimize;
        } else if (sense == "max") {
            m.objective.sense = Sense::Maximize;
        } else {
            throw Error("objective: sense must be \"min\" or \"max\", got \"" + sense + "\"");
        }
        if (jo.contains("terms")) {
            m.objective.expr = parse_terms(jo.at("terms"), m.variables, "objective");
        }
        if (jo.contains("constant")) {
            m.objective.constant = rational_from_json(jo.at("constant"), "objective constant");
        }
    }

    std::set<std::string> constraint_names;
    if (j.contains("constraints")) {
        for (const auto& jc : j.at("constraints")) {
            TwoSidedConstraint c;
            c.name = jc.value("name", "c" + std::to_string(m.constraints.size() + 1));
            if (!constraint_names.insert(c.name).second) {
                throw Error("duplicate constraint name '" + c.name + "'");
            }
            c.expr = parse_terms(jc.at("terms"), m.variables, "constraint " + c.name);
            if (jc.contains("lo") && !jc.at("lo").is_null()) {
                c.lo = rational_from_json(jc.at("lo"), "constraint " + c.name + " lo");
            }
            if (jc.contains("hi") && !jc.at("hi").is_null()) {
                c.hi = rational_from_json(jc.at("hi"), "constraint " + c.name + " hi");
            }
            if (!c.lo && !c.hi) {
                throw Error("constraint " + c.name + ": both bounds are infinite");
            }
            if (c.lo && c.hi && *c.lo > *c.hi) {
                throw Error("constraint " + c.name + ": lo > hi");
            }
            m.constraints.push_back(std::move(c));
        }
    }
    return m;
}

std::string serialize_model_json(const BlpModel& m) {
    json j;
    j["variables"] = json::array();
    for (VarId v : m.variables.original_ids()) j["variables"].push_back(m.variables.name(v));
    j["objective"] = {
        {"sense", m.objective.sense == Sense::Minimize ? "min" : "max"},
        {"terms", terms_to_json(m.objective.expr, m.variables)},
        {"constant", rational_to_json(m.objective.constant)},
    };
    j["constraints"] = json::array();
    for (const auto& c : m.constraints) {
        json jc;
        jc["name"] = c.name;
        jc["terms"] = terms_to_json(c.expr, m.variables);
        jc["lo"] = c.lo ? rational_to_json(*c.lo) : json();
        jc["hi"] = c.hi ? rational_to_json(*c.hi) : json();
        j["constraints"].push_back(std::move(jc));
    }
    return j.dump(2);
}

namespace {

/// Splits DIMACS-style input into token streams per line, dropping
/// comment lines ("c ...") and blanks.
std::vector<std::vector<std::string>> dimacs_lines(const std::string& text) {
    std::vector<std::vector<std::string>> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty() || tokens[0] == "c") continue;
        lines.push_back(std::move(tokens));
    }
    return lines;
}

int parse_int_token(const std::string& tok, const std::string& where) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw Error(where + ": expected an integer, got '" + tok + "'");
    }
}

}  // namespace

Graph parse_dimacs_graph(const std::string& text) {
    auto lines = dimacs_lines(text);
    if (lines.empty() || lines[0][0] != "p" || lines[0].size() != 4 || lines[0][1] != "edge") {
        throw Error("dimacs graph: malformed header, expected 'p edge <n> <m>'");
    }
    Graph g;
    g.n = parse_int_token(lines[0][2], "dimacs header");
    int m_declared = parse_int_token(lines[0][3], "dimacs header");
    if (g.n < 0 || m_declared < 0) throw Error("dimacs graph: negative counts in header");

    std::set<std::pair<int, int>> seen;
    int read = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& tokens = lines[i];
        if (tokens[0] != "e" || tokens.size() != 3) {
            throw Error("dimacs graph: malformed edge line");
        }
        int u = parse_int_token(tokens[1], "edge");
        int v = parse_int_token(tokens[2], "edge");
        if (u < 1 || v < 1 || u > g.n || v > g.n) {
            throw Error("dimacs graph: vertex out of range on edge line");
        }
        if (u == v) throw Error("dimacs graph: self-loop on vertex " + std::to_string(u));
        ++read;
        int a = std::min(u, v) - 1, b = std::max(u, v) - 1;
        if (!seen.insert({a, b}).second) {
            ++g.duplicate_edges_dropped;
        }
    }
    if (read != m_declared) {
        throw Error("dimacs graph: header declares " + std::to_string(m_declared) +
                    " edges but " + std::to_string(read) + " were read");
    }
    g.edges.assign(seen.begin(), seen.end());
    return g;
}

std::string serialize_dimacs_graph(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.n << ' ' << g.edges.size() << '\n';
    for (const auto& [u, v] : g.edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

CnfFormula parse_dimacs_cnf(const std::string& text) {
    auto lines = dimacs_lines(text);
    if (lines.empty() || lines[0][0] != "p" || lines[0].size() != 4 || lines[0][1] != "cnf") {
        throw Error("dimacs cnf: malformed header, expected 'p cnf <n> <m>'");
    }
    CnfFormula f;
    f.num_variables = parse_int_token(lines[0][2], "cnf header");
    int m_declared = parse_int_token(lines[0][3], "cnf header");

    std::vector<int> literals;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        for (const auto& tok : lines[i]) literals.push_back(parse_int_token(tok, "clause"));
    }
    std::vector<int> clause;
    for (int lit : literals) {
        if (lit == 0) {
            if (clause.size() != 2) {
                throw Error("dimacs cnf: clause has " + std::to_string(clause.size()) +
                            " literals; Max2SAT requires exactly 2");
            }
            f.clauses.push_back({clause[0], clause[1]});
            clause.clear();
            continue;
        }
        if (std::abs(lit) > f.num_variables) {
            throw Error("dimacs cnf: literal " + std::to_string(lit) + " out of range");
        }
        clause.push_back(lit);
    }
    if (!clause.empty()) throw Error("dimacs cnf: last clause is not 0-terminated");
    if (static_cast<int>(f.clauses.size()) != m_declared) {
        throw Error("dimacs cnf: header declares " + std::to_string(m_declared) +
                    " clauses but " + std::to_string(f.clauses.size()) + " were read");
    }
    return f;
}

std::string serialize_dimacs_cnf(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_variables << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) out << c[0] << ' ' << c[1] << " 0\n";
    return out.str();
}

WeightMatrix parse_weights_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("weights JSON parse error: ") + e.what());
    }
    WeightMatrix wm;
    wm.n = j.at("n").get<int>();
    const json& rows = j.at("w");
    if (static_cast<int>(rows.size()) != wm.n) throw Error("weights: matrix is not square");
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != wm.n) throw Error("weights: matrix is not square");
        std::vector<Rational> r;
        for (const auto& cell : row) r.push_back(rational_from_json(cell, "weights"));
        wm.w.push_back(std::move(r));
    }
    return wm;
}

std::string serialize_weights_json(const WeightMatrix& wm) {
    json j;
    j["n"] = wm.n;
    json rows = json::array();
    for (const auto& row : wm.w) {
        json r = json::array();
        for (const auto& cell : row) r.push_back(rational_to_json(cell));
        rows.push_back(std::move(r));
    }
    j["w"] = std::move(rows);
    return j.dump();
}

}  // namespace qubolift
