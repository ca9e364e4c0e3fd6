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

#include "qubolift/pipeline.hpp"

#include <algorithm>

#include "json.hpp"
#include "qubolift/verify.hpp"

namespace qubolift {

using nlohmann::json;

std::string to_string(Variant v) {
    switch (v) {
        case Variant::MlctsTr41: return "tr4.1";
        case Variant::MlctsTr42: return "tr4.2";
        case Variant::MlctsTr01Tr61: return "tr6.1";
        case Variant::MlctsTr02nTr62: return "tr6.2";
        case Variant::Cts: return "cts";
    }
    return "?";
}

std::optional<Variant> variant_from_string(std::string_view name) {
    if (name == "tr4.1") return Variant::MlctsTr41;
    if (name == "tr4.2") return Variant::MlctsTr42;
    if (name == "tr6.1") return Variant::MlctsTr01Tr61;
    if (name == "tr6.2") return Variant::MlctsTr02nTr62;
    if (name == "cts") return Variant::Cts;
    return std::nullopt;
}

namespace {

struct WeightedPenalty {
    std::string source;  // key into the lambda map
    Polynomial poly;
    ConstraintTrace trace;
};

Rational auto_lambda(const BlpModel& m) {
    Rational bound = 1;
    for (const auto& [v, c] : m.min_objective().terms()) bound += abs(c);
    bound += abs(m.min_constant());
    return bound;
}

/// Assigns weights, assembles objective + sum(lambda * penalty), lowers
/// to QUBO and snapshots the trace.
CompiledQubo assemble(const BlpModel& m, const PipelineConfig& cfg, VariableRegistry registry,
                      std::vector<WeightedPenalty> penalties, TransformTrace trace) {
    std::map<std::string, Rational> lambdas;
    if (cfg.penalty_mode == PenaltyMode::Search) {
        PipelineConfig search_cfg = cfg;
        for (const auto& [name, value] : minimal_lambda(m, search_cfg)) {
            lambdas[name] = Rational(value);
        }
    } else {
        Rational fallback = auto_lambda(m);
        for (const auto& p : penalties) {
            if (cfg.penalty_mode == PenaltyMode::Fixed) {
                auto it = cfg.fixed_lambdas.find(p.source);
                if (it != cfg.fixed_lambdas.end()) {
                    if (it->second <= 0) throw Error("penalty weight for " + p.source +
                                                     " must be positive");
                    lambdas[p.source] = it->second;
                    continue;
                }
            }
            lambdas[p.source] = fallback;
        }
    }

    Polynomial total = m.min_objective().to_polynomial();
    total.add_constant(m.min_constant());
    for (auto& p : penalties) {
        Rational lambda = lambdas.count(p.source) ? lambdas[p.source] : auto_lambda(m);
        if (!p.poly.is_zero()) {
            total += p.poly.scaled(lambda);
            trace.penalty_parameters.push_back({p.source, lambda});
        }
        p.trace.lambda = lambda;
        trace.constraints.push_back(std::move(p.trace));
    }

    CompiledQubo out;
    out.trace = std::move(trace);
    out.trace.variant = to_string(cfg.variant);
    out.certificate = compact_certificate(m, cfg.value_set);
    out.original_sense = m.objective.sense;
    out.order = registry.all_ids();
    try {
        out.qubo = to_qubo(total, out.order, &registry);
    } catch (const Error& e) {
        throw Error(std::string("internal invariant violation: a penalty left the pipeline "
                                "with degree > 2 (") + e.what() + ")");
    }
    out.ancillary_count = static_cast<int>(registry.num_ancilla());
    out.is_compact = out.ancillary_count == 0;
    out.variables = std::move(registry);
    return out;
}

ConstraintTrace trace_for(const std::string& name, const std::string& rule) {
    ConstraintTrace t;
    t.constraint = name;
    t.rule = rule;
    return t;
}

}  // namespace

CompiledQubo mlcts(const BlpModel& m, const PipelineConfig& cfg) {
    VariableRegistry registry = m.variables;
    std::vector<WeightedPenalty> penalties;
    TransformTrace trace;

    for (const auto& c : m.constraints) {
        if (c.is_equality()) {
            PenaltyTerm term = vip_equality(c);
            WeightedPenalty wp;
            wp.source = c.name;
            wp.poly = std::move(term.poly);
            wp.trace = trace_for(c.name, to_string(term.rule));
            wp.trace.factored_r = term.factored_r;
            wp.trace.penalty_text = wp.poly.text(&registry);
            penalties.push_back(std::move(wp));
            continue;
        }

        LevelnessReport report = refine_and_classify(c, cfg.value_set);
        if (report.vacuous()) {
            trace.warnings.push_back("constraint " + c.name +
                                     " is redundant over the cube and was dropped");
            continue;
        }

        SynthesisOptions options;
        options.use_table1 = cfg.use_table1;
        options.lemma3_root = cfg.lemma3_root;
        PenaltyTerm term = synthesize_vip(report, options);

        WeightedPenalty wp;
        wp.source = c.name;
        wp.trace = trace_for(c.name, to_string(term.rule));
        wp.trace.levelness = report;
        wp.trace.rule_param = term.rule_param;
        wp.trace.factored_r = term.factored_r;

        if (term.poly.degree() <= 2) {
            wp.poly = term.poly;
        } else {
            switch (cfg.variant) {
                case Variant::MlctsTr41: {
                    Tr41Result red = tr4_1_rosenberg(term.poly, registry);
                    wp.poly = red.combined();
                    wp.trace.reductions = std::move(red.steps);
                    wp.trace.ancillas = static_cast<int>(red.created.size());
                    break;
                }
                case Variant::MlctsTr42: {
                    Tr42Result red = tr4_2_min_selection(term.poly, registry);
                    wp.poly = std::move(red.quadratic);
                    wp.trace.reductions = std::move(red.steps);
                    wp.trace.ancillas = static_cast<int>(red.created.size());
                    break;
                }
                case Variant::MlctsTr01Tr61: {
                    Tr6Result red = tr6_1(report, registry);
                    wp.poly = std::move(red.penalty);
                    wp.trace.reductions = {std::move(red.step)};
                    wp.trace.ancillas = static_cast<int>(red.created.size());
                    wp.trace.rule = "Cor1/TR5+TR6.1";
                    wp.trace.factored_r = red.factored_r;
                    break;
                }
                case Variant::MlctsTr02nTr62: {
                    if (report.integral) {
                        Tr6Result red = tr6_2(report, registry);
                        wp.poly = std::move(red.penalty);
                        wp.trace.reductions = {std::move(red.step)};
                        wp.trace.ancillas = static_cast<int>(red.created.size());
                        wp.trace.rule = "Cor1/TR5+TR6.2";
                        wp.trace.factored_r = red.factored_r;
                    } else {
                        trace.warnings.push_back("constraint " + c.name +
                                                 " has non-integer data; TR6.2 fell back to TR6.1");
                        Tr6Result red = tr6_1(report, registry);
                        wp.poly = std::move(red.penalty);
                        wp.trace.reductions = {std::move(red.step)};
                        wp.trace.ancillas = static_cast<int>(red.created.size());
                        wp.trace.rule = "Cor1/TR5+TR6.1";
                        wp.trace.factored_r = red.factored_r;
                    }
                    break;
                }
                case Variant::Cts:
                    throw Error("mlcts called with the cts variant; use cts()");
            }
        }
        wp.trace.penalty_text = wp.poly.text(&registry);
        penalties.push_back(std::move(wp));
    }

    return assemble(m, cfg, std::move(registry), std::move(penalties), std::move(trace));
}

CompiledQubo cts(const BlpModel& m, const PipelineConfig& cfg) {
    VariableRegistry registry = m.variables;
    std::vector<WeightedPenalty> penalties;
    TransformTrace trace;

    auto push_equality_penalty = [&](const TwoSidedConstraint& eq, const std::string& source,
                                     ConstraintTrace t) {
        PenaltyTerm term = vip_equality(eq);
        WeightedPenalty wp;
        wp.source = source;
        wp.poly = std::move(term.poly);
        wp.trace = std::move(t);
        wp.trace.factored_r = term.factored_r;
        wp.trace.penalty_text = wp.poly.text(&registry);
        penalties.push_back(std::move(wp));
    };

    for (const auto& c : m.constraints) {
        if (c.is_equality()) {
            push_equality_penalty(c, c.name, trace_for(c.name, "TR1"));
            continue;
        }

        LevelnessReport report = refine_and_classify(c, cfg.value_set);
        if (report.vacuous()) {
            trace.warnings.push_back("constraint " + c.name +
                                     " is redundant over the cube and was dropped");
            continue;
        }
        if (report.sidedness == Sidedness::Equality) {
            TwoSidedConstraint eq{c.expr, report.lo, report.lo, c.name};
            push_equality_penalty(eq, c.name, trace_for(c.name, "TR1"));
            continue;
        }
        if (!report.integral) {
            throw Error("cts: constraint " + c.name +
                        " has non-integer data; the slack expansion needs integers "
                        "(TR0.1 inside mlcts handles rational windows)");
        }

        Rational width = report.hi - report.lo + 1;
        std::int64_t w = *as_int64(width);
        bool power_of_two = (w & (w - 1)) == 0;
        bool one_sided = report.sidedness != Sidedness::TwoSided;

        if (power_of_two || one_sided) {
            SlackExpansion slack = tr0_2(report, registry);
            ConstraintTrace t = trace_for(c.name, "TR0.2+TR1");
            t.levelness = report;
            t.reductions = {slack.step};
            t.ancillas = static_cast<int>(slack.created.size());
            push_equality_penalty(slack.constraints[0], c.name, std::move(t));
        } else {
            SlackExpansion slack = tr0_1_slack(report, registry);
            ConstraintTrace t = trace_for(c.name, "TR0.1+TR1");
            t.levelness = report;
            t.reductions = {slack.step};
            t.ancillas = static_cast<int>(slack.created.size());
            push_equality_penalty(slack.constraints[0], c.name, std::move(t));
            if (slack.constraints.size() > 1) {
                // sum s_i <= 1 over the slack ancillas: known conflict VIP
                PenaltyTerm conflict = vip_conflict(slack.created, c.name + ".le1");
                WeightedPenalty wp;
                wp.source = c.name + ".le1";
                wp.poly = conflict.poly;
                wp.trace = trace_for(c.name + ".le1", to_string(conflict.rule));
                wp.trace.penalty_text = wp.poly.text(&registry);
                penalties.push_back(std::move(wp));
            }
        }
    }

    return assemble(m, cfg, std::move(registry), std::move(penalties), std::move(trace));
}

std::map<std::string, Rational> choose_penalties(const BlpModel& m, const PipelineConfig& cfg) {
    std::map<std::string, Rational> out;
    if (m.constraints.empty()) return out;
    if (cfg.penalty_mode == PenaltyMode::Search) {
        for (const auto& [name, value] : minimal_lambda(m, cfg)) out[name] = Rational(value);
        return out;
    }
    Rational bound = auto_lambda(m);
    for (const auto& c : m.constraints) {
        if (cfg.penalty_mode == PenaltyMode::Fixed && cfg.fixed_lambdas.count(c.name)) {
            out[c.name] = cfg.fixed_lambdas.at(c.name);
        } else {
            out[c.name] = bound;
        }
    }
    return out;
}

std::string trace_to_json(const TransformTrace& trace, const VariableRegistry& variables) {
    json j;
    j["variant"] = trace.variant;
    j["constraints"] = json::array();
    for (const auto& ct : trace.constraints) {
        json jc;
        jc["constraint"] = ct.constraint;
        jc["rule"] = ct.rule;
        if (ct.rule_param >= 0) jc["rule_param"] = ct.rule_param;
        jc["r"] = to_string(ct.factored_r);
        jc["lambda"] = to_string(ct.lambda);
        jc["penalty"] = ct.penalty_text;
        jc["ancillas"] = ct.ancillas;
        if (ct.levelness) {
            const auto& r = *ct.levelness;
            json jl;
            jl["K"] = r.K;
            jl["k"] = r.k;
            jl["i"] = r.i;
            jl["sidedness"] = to_string(r.sidedness);
            jl["regular"] = r.regular;
            json H = json::array();
            for (const auto& h : r.H) H.push_back(to_string(h));
            jl["H"] = std::move(H);
            jc["levelness"] = std::move(jl);
        }
        if (!ct.reductions.empty()) {
            json steps = json::array();
            for (const auto& step : ct.reductions) {
                json js;
                js["kind"] = to_string(step.kind);
                json created = json::array();
                for (VarId v : step.created) created.push_back(variables.name(v));
                js["created"] = std::move(created);
                for (const auto& [key, value] : step.params) js["params"][key] = value;
                steps.push_back(std::move(js));
            }
            jc["reductions"] = std::move(steps);
        }
        j["constraints"].push_back(std::move(jc));
    }
    j["penalty_parameters"] = json::array();
    for (const auto& [name, lambda] : trace.penalty_parameters) {
        j["penalty_parameters"].push_back({{"penalty", name}, {"lambda", to_string(lambda)}});
    }
    j["warnings"] = trace.warnings;
    return j.dump(2);
}

}  // namespace qubolift
