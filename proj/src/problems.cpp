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

#include "qubolift/problems.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace qubolift {

const CompiledQubo& ProblemEncoding::qubo(QuboForm form) const {
    const auto& slot = form == QuboForm::Compact ? qubo_compact : qubo_augmented;
    if (!slot) throw Error("encoding does not carry the requested QUBO form");
    return *slot;
}

namespace {

std::string lit_name(int lit) { return "x" + std::to_string(std::abs(lit)); }

/// l as an affine expression over x: x for positive, 1 - x for negated.
void add_literal(LinearExpression& expr, Rational& constant, VarId var, bool positive,
                 const Rational& factor) {
    if (positive) {
        expr.add(var, factor);
    } else {
        expr.add(var, -factor);
        constant += factor;
    }
}

}  // namespace

BlpModel max2sat_blp1(const CnfFormula& f) {
    BlpModel m;
    std::vector<VarId> x;
    for (int i = 1; i <= f.num_variables; ++i) x.push_back(m.variables.add_original(lit_name(i)));
    std::vector<VarId> clause_vars;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        clause_vars.push_back(m.variables.add_original("C" + std::to_string(i + 1)));
    }

    // max sum C_i  (the paper minimizes m - sum C_i; senses normalize)
    m.objective.sense = Sense::Maximize;
    for (VarId c : clause_vars) m.objective.expr.add(c, 1);

    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        VarId c = clause_vars[i];
        int l1 = f.clauses[i][0], l2 = f.clauses[i][1];
        VarId v1 = x[std::abs(l1) - 1], v2 = x[std::abs(l2) - 1];

        // l1 + l2 - C_i >= 0
        TwoSidedConstraint big;
        big.name = "c" + std::to_string(i + 1) + ".cover";
        Rational shift = 0;
        add_literal(big.expr, shift, v1, l1 > 0, 1);
        add_literal(big.expr, shift, v2, l2 > 0, 1);
        big.expr.add(c, -1);
        big.lo = -shift;
        m.constraints.push_back(std::move(big));

        // l_j - C_i <= 0
        for (int which = 0; which < 2; ++which) {
            int lit = which == 0 ? l1 : l2;
            VarId v = which == 0 ? v1 : v2;
            TwoSidedConstraint le;
            le.name = "c" + std::to_string(i + 1) + (which == 0 ? ".l1" : ".l2");
            Rational s2 = 0;
            add_literal(le.expr, s2, v, lit > 0, 1);
            le.expr.add(c, -1);
            le.hi = -s2;
            m.constraints.push_back(std::move(le));
        }
    }
    return m;
}

BlpModel max2sat_blp2(const CnfFormula& f) {
    BlpModel m = max2sat_blp1(f);
    // Refine each cover constraint to C_i <= l1 + l2 <= C_i + 1.
    for (auto& c : m.constraints) {
        if (c.name.size() > 6 && c.name.substr(c.name.size() - 6) == ".cover") {
            c.hi = *c.lo + 1;
        }
    }
    return m;
}

ProblemEncoding encode_max2sat(const CnfFormula& f, QuboForm form) {
    for (const auto& clause : f.clauses) {
        if (std::abs(clause[0]) == std::abs(clause[1])) {
            throw Error("max2sat: clause with a repeated variable (" +
                        std::to_string(clause[0]) + ", " + std::to_string(clause[1]) +
                        "); normalize the formula first");
        }
    }
    ProblemEncoding enc;
    enc.problem = "max2sat";
    enc.blp = max2sat_blp2(f);

    if (form == QuboForm::Augmented) {
        PipelineConfig cfg;
        cfg.variant = Variant::MlctsTr02nTr62;  // all penalties are 2-level; no reduction fires
        enc.qubo_augmented = mlcts(enc.blp, cfg);
        return enc;
    }

    // Compact form: minimize the number of falsified clauses directly,
    // P++ = 1 - x - y + xy, P+- = y - xy, P-- = xy. No penalty weights.
    VariableRegistry registry;
    std::vector<VarId> x;
    for (int i = 1; i <= f.num_variables; ++i) x.push_back(registry.add_original(lit_name(i)));

    Polynomial objective;
    for (const auto& clause : f.clauses) {
        VarId a = x[std::abs(clause[0]) - 1];
        VarId b = x[std::abs(clause[1]) - 1];
        bool pa = clause[0] > 0, pb = clause[1] > 0;
        // not(l1 or l2) as a polynomial: (1 - l1)(1 - l2)
        Polynomial la = pa ? Polynomial::variable(a)
                           : Polynomial(Rational(1)) - Polynomial::variable(a);
        Polynomial lb = pb ? Polynomial::variable(b)
                           : Polynomial(Rational(1)) - Polynomial::variable(b);
        Polynomial one{Rational(1)};
        objective += (one - la) * (one - lb);
    }
    auto [reduced, factor] = multilinear_reduce(objective, false);

    CompiledQubo compiled;
    compiled.order = registry.all_ids();
    compiled.qubo = to_qubo(reduced, compiled.order, &registry);
    compiled.variables = registry;
    compiled.ancillary_count = 0;
    compiled.is_compact = true;
    compiled.original_sense = Sense::Minimize;
    compiled.trace.variant = "max2sat-compact";
    enc.qubo_compact = std::move(compiled);
    return enc;
}

DecodedSolution decode_max2sat(const CnfFormula& f, const std::vector<std::uint8_t>& x) {
    if (static_cast<int>(x.size()) < f.num_variables) {
        throw Error("decode_max2sat: assignment too short");
    }
    DecodedSolution out;
    out.kind = "assignment";
    int satisfied = 0;
    for (const auto& clause : f.clauses) {
        bool v1 = x[std::abs(clause[0]) - 1], v2 = x[std::abs(clause[1]) - 1];
        bool l1 = clause[0] > 0 ? v1 : !v1;
        bool l2 = clause[1] > 0 ? v2 : !v2;
        if (l1 || l2) ++satisfied;
    }
    out.feasible = true;  // every assignment is a valid Max2SAT solution
    out.objective = satisfied;
    for (int i = 0; i < f.num_variables; ++i) out.items.push_back(x[i]);
    out.description = std::to_string(satisfied) + "/" + std::to_string(f.clauses.size()) +
                      " clauses satisfied";
    return out;
}

namespace {

std::string pair_name(int u, int v) {
    return "x" + std::to_string(u + 1) + "_" + std::to_string(v + 1);
}

}  // namespace

ProblemEncoding encode_lop(const WeightMatrix& wm) {
    if (wm.n < 2) throw Error("lop: need n >= 2");
    ProblemEncoding enc;
    enc.problem = "lop";

    BlpModel m;
    std::vector<std::vector<VarId>> var(wm.n, std::vector<VarId>(wm.n));
    for (int i = 0; i < wm.n; ++i) {
        for (int j = i + 1; j < wm.n; ++j) var[i][j] = m.variables.add_original(pair_name(i, j));
    }
    // max sum_{i<j} w_ij x_ij + sum_{j<i} w_ij (1 - x_ji)
    m.objective.sense = Sense::Maximize;
    for (int i = 0; i < wm.n; ++i) {
        for (int j = 0; j < wm.n; ++j) {
            if (i < j) {
                m.objective.expr.add(var[i][j], wm.w[i][j]);
            } else if (j < i) {
                m.objective.expr.add(var[j][i], -wm.w[i][j]);
                m.objective.constant += wm.w[i][j];
            }
        }
    }
    for (int i = 0; i < wm.n; ++i) {
        for (int j = i + 1; j < wm.n; ++j) {
            for (int k = j + 1; k < wm.n; ++k) {
                TwoSidedConstraint c;
                c.name = "tri" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" +
                         std::to_string(k + 1);
                c.expr.add(var[i][j], 1);
                c.expr.add(var[j][k], 1);
                c.expr.add(var[i][k], -1);
                c.lo = 0;
                c.hi = 1;
                m.constraints.push_back(std::move(c));
            }
        }
    }
    enc.blp = std::move(m);
    enc.qubo_compact = mlcts(enc.blp, {});
    return enc;
}

DecodedSolution decode_lop(const WeightMatrix& wm, const std::vector<std::uint8_t>& x) {
    const int n = wm.n;
    auto idx = [&](int i, int j) {
        // upper-triangle position of (i, j), i < j, in row-major order
        return i * n - i * (i + 1) / 2 + (j - i - 1);
    };
    auto precedes = [&](int i, int j) {
        return i < j ? x[idx(i, j)] != 0 : x[idx(j, i)] == 0;
    };

    DecodedSolution out;
    out.kind = "ordering";
    std::vector<int> count(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && precedes(i, j)) ++count[i];
        }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return count[a] > count[b]; });

    // Feasible iff the sorted order reproduces x exactly (x transitive).
    std::vector<int> pos(n);
    for (int p = 0; p < n; ++p) pos[order[p]] = p;
    out.feasible = true;
    for (int i = 0; i < n && out.feasible; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && precedes(i, j) != (pos[i] < pos[j])) {
                out.feasible = false;
                break;
            }
        }
    }
    Rational objective = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && pos[i] < pos[j]) objective += wm.w[i][j];
        }
    }
    out.objective = objective;
    out.items = order;
    std::ostringstream desc;
    for (int p = 0; p < n; ++p) desc << (p ? " < " : "") << order[p] + 1;
    out.description = desc.str();
    return out;
}

Polynomial cdp_triple_cubic(VarId x_uv, VarId x_vw, VarId x_uw) {
    // Sum of the three middle-vertex transitivity VIPs; zero exactly when
    // the triple's same-cluster relation is consistent.
    Polynomial p;
    p.add_term({x_uv, x_vw, x_uw}, 3);
    p.add_term({x_uv, x_vw}, -2);
    p.add_term({x_uv, x_uw}, -2);
    p.add_term({x_vw, x_uw}, -2);
    p.add_term({x_uv}, 1);
    p.add_term({x_vw}, 1);
    p.add_term({x_uw}, 1);
    return p;
}

Polynomial cdp_triple_augmented(VarId x_uv, VarId x_vw, VarId x_uw, VarId y,
                                const Rational& lambda1, const Rational& lambda2) {
    Polynomial p;
    p.add_term({y, x_uw}, lambda1 * 3);
    p.add_term({x_uv, x_vw}, lambda1 * -2);
    p.add_term({x_uv, x_uw}, lambda1 * -2);
    p.add_term({x_vw, x_uw}, lambda1 * -2);
    p.add_term({x_uv}, lambda1);
    p.add_term({x_vw}, lambda1);
    p.add_term({x_uw}, lambda1);
    // Rosenberg penalty for y = x_uv * x_vw
    p.add_term({x_uv, x_vw}, lambda2);
    p.add_term({x_uv, y}, lambda2 * -2);
    p.add_term({x_vw, y}, lambda2 * -2);
    p.add_term({y}, lambda2 * 3);
    return p;
}

ProblemEncoding encode_cdp(const Graph& g, QuboForm form) {
    if (g.n < 3) throw Error("cdp: transitivity needs n >= 3");
    ProblemEncoding enc;
    enc.problem = "cdp";

    BlpModel m;
    std::vector<std::vector<VarId>> var(g.n, std::vector<VarId>(g.n));
    for (int u = 0; u < g.n; ++u) {
        for (int v = u + 1; v < g.n; ++v) var[u][v] = m.variables.add_original(pair_name(u, v));
    }
    // max sum over ordered pairs of a_uv (1 - x_uv): each edge twice.
    m.objective.sense = Sense::Maximize;
    for (const auto& [u, v] : g.edges) {
        m.objective.expr.add(var[u][v], -2);
        m.objective.constant += 2;
    }
    // x_uw <= x_uv + x_vw for every middle choice of each triple.
    for (int u = 0; u < g.n; ++u) {
        for (int v = u + 1; v < g.n; ++v) {
            for (int w = v + 1; w < g.n; ++w) {
                struct Orientation {
                    VarId lhs, a, b;
                    const char* tag;
                };
                Orientation orientations[3] = {
                    {var[u][w], var[u][v], var[v][w], "m2"},  // middle v
                    {var[v][w], var[u][v], var[u][w], "m1"},  // middle u
                    {var[u][v], var[u][w], var[v][w], "m3"},  // middle w
                };
                for (const auto& o : orientations) {
                    TwoSidedConstraint c;
                    c.name = "tri" + std::to_string(u + 1) + "_" + std::to_string(v + 1) + "_" +
                             std::to_string(w + 1) + "." + o.tag;
                    c.expr.add(o.a, 1);
                    c.expr.add(o.b, 1);
                    c.expr.add(o.lhs, -1);
                    c.lo = 0;
                    m.constraints.push_back(std::move(c));
                }
            }
        }
    }
    enc.blp = std::move(m);

    // One ancilla y per triple quadratizes all three orientation cubics
    // at once (they share the trilinear term). The Rosenberg weight must
    // dominate three stacked cubics, hence the 4:1 ratio; (1, 4) keeps
    // the compact form parameter-free.
    Rational lambda1, lambda2;
    if (form == QuboForm::Compact) {
        lambda1 = 1;
        lambda2 = 4;
    } else {
        lambda1 = 1;
        for (const auto& [v, c] : enc.blp.min_objective().terms()) lambda1 += abs(c);
        lambda2 = lambda1 * 4;
    }

    VariableRegistry registry = enc.blp.variables;
    Polynomial total = enc.blp.min_objective().to_polynomial();
    total.add_constant(enc.blp.min_constant());
    TransformTrace trace;
    trace.variant = form == QuboForm::Compact ? "cdp-qubo2" : "cdp-qubo1";
    for (int u = 0; u < g.n; ++u) {
        for (int v = u + 1; v < g.n; ++v) {
            for (int w = v + 1; w < g.n; ++w) {
                std::string triple = std::to_string(u + 1) + "_" + std::to_string(v + 1) + "_" +
                                     std::to_string(w + 1);
                VarId y = registry.add_ancilla("y" + triple, "TR4.1(tri" + triple + ")");
                total += cdp_triple_augmented(var[u][v], var[v][w], var[u][w], y, lambda1, lambda2);
                if (form == QuboForm::Augmented) {
                    trace.penalty_parameters.push_back({"tri" + triple, lambda1});
                    trace.penalty_parameters.push_back({"tri" + triple + ".rosenberg", lambda2});
                }
            }
        }
    }

    CompiledQubo compiled;
    compiled.order = registry.all_ids();
    compiled.qubo = to_qubo(total, compiled.order, &registry);
    compiled.ancillary_count = static_cast<int>(registry.num_ancilla());
    compiled.is_compact = false;  // lifted space either way
    compiled.original_sense = Sense::Maximize;
    compiled.trace = std::move(trace);
    compiled.certificate = compact_certificate(enc.blp);
    compiled.variables = std::move(registry);
    if (form == QuboForm::Compact) {
        enc.qubo_compact = std::move(compiled);
    } else {
        enc.qubo_augmented = std::move(compiled);
    }
    return enc;
}

DecodedSolution decode_cdp(const Graph& g, const std::vector<std::uint8_t>& x) {
    const int n = g.n;
    auto idx = [&](int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); };

    // Union-find over the x_uv = 0 (same cluster) relation.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (!x[idx(u, v)]) parent[find(u)] = find(v);
        }
    }

    DecodedSolution out;
    out.kind = "partition";
    out.feasible = true;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            // x = 0 pairs are merged by construction, so the only way the
            // relation fails to be an equivalence is same-cluster with x = 1
            if (find(u) == find(v) && x[idx(u, v)]) out.feasible = false;
        }
    }
    std::vector<int> label(n, -1);
    int clusters = 0;
    for (int u = 0; u < n; ++u) {
        int root = find(u);
        if (label[root] < 0) label[root] = clusters++;
        out.items.push_back(label[root]);
    }
    // Objective from the partition itself: ordered pairs, so each
    // within-cluster edge counts twice.
    Rational objective = 0;
    for (const auto& [u, v] : g.edges) {
        if (find(u) == find(v)) objective += 2;
    }
    out.objective = objective;
    out.description = std::to_string(clusters) + " clusters";
    return out;
}

ProblemEncoding encode_mis(const Graph& g, QuboForm form, const std::optional<Rational>& lambda) {
    ProblemEncoding enc;
    enc.problem = "mis";

    BlpModel m;
    std::vector<VarId> var;
    for (int v = 0; v < g.n; ++v) var.push_back(m.variables.add_original("x" + std::to_string(v + 1)));
    m.objective.sense = Sense::Maximize;
    for (VarId v : var) m.objective.expr.add(v, 1);
    for (const auto& [u, v] : g.edges) {
        TwoSidedConstraint c;
        c.name = "e" + std::to_string(u + 1) + "_" + std::to_string(v + 1);
        c.expr.add(var[u], 1);
        c.expr.add(var[v], 1);
        c.hi = 1;
        m.constraints.push_back(std::move(c));
    }
    enc.blp = std::move(m);

    PipelineConfig cfg;
    cfg.penalty_mode = PenaltyMode::Fixed;
    Rational weight = lambda.value_or(Rational(2));
    for (const auto& c : enc.blp.constraints) cfg.fixed_lambdas[c.name] = weight;
    if (form == QuboForm::Compact) {
        enc.qubo_compact = mlcts(enc.blp, cfg);
    } else {
        cfg.variant = Variant::Cts;
        enc.qubo_augmented = cts(enc.blp, cfg);
    }
    return enc;
}

DecodedSolution decode_mis(const Graph& g, const std::vector<std::uint8_t>& x) {
    DecodedSolution out;
    out.kind = "vertex-set";
    out.feasible = true;
    for (const auto& [u, v] : g.edges) {
        if (x[u] && x[v]) out.feasible = false;
    }
    for (int v = 0; v < g.n; ++v) {
        if (x[v]) out.items.push_back(v);
    }
    out.objective = static_cast<std::int64_t>(out.items.size());
    out.description = "independent set of size " + std::to_string(out.items.size());
    return out;
}

std::vector<std::uint8_t> original_point(const CompiledQubo& compiled,
                                          const std::vector<std::uint8_t>& point) {
    if (point.size() != compiled.order.size()) {
        throw Error("original_point: point size does not match the qubo order");
    }
    std::vector<std::uint8_t> x;
    for (std::size_t i = 0; i < compiled.order.size(); ++i) {
        if (!compiled.order[i].is_ancilla()) x.push_back(point[i]);
    }
    return x;
}

Graph gnp_graph(int n, double p, std::uint64_t seed) {
    if (n < 0) throw Error("gnp_graph: n must be non-negative");
    if (p < 0.0 || p > 1.0) throw Error("gnp_graph: p must lie in [0, 1]");
    Graph g;
    g.n = n;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (unit(rng) < p) g.edges.push_back({u, v});
        }
    }
    return g;
}

CnfFormula random_2cnf(int n, int m, std::uint64_t seed) {
    if (n < 2) throw Error("random_2cnf: need at least two variables");
    if (m < 0) throw Error("random_2cnf: m must be non-negative");
    CnfFormula f;
    f.num_variables = n;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(1, n);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < m; ++i) {
        int a = pick(rng), b = pick(rng);
        while (b == a) b = pick(rng);
        int l1 = coin(rng) ? a : -a;
        int l2 = coin(rng) ? b : -b;
        f.clauses.push_back({l1, l2});
    }
    return f;
}

WeightMatrix random_weights(int n, int range, std::uint64_t seed) {
    if (n < 1) throw Error("random_weights: need n >= 1");
    if (range < 0) throw Error("random_weights: range must be non-negative");
    WeightMatrix wm;
    wm.n = n;
    wm.w.assign(n, std::vector<Rational>(n, Rational(0)));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, range);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) wm.w[i][j] = pick(rng);
        }
    }
    return wm;
}

}  // namespace qubolift
