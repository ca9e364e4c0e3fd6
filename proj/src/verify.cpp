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

#include "qubolift/verify.hpp"

#include <algorithm>
#include <set>

#include "qubolift/pipeline.hpp"

namespace qubolift {

namespace {

using Wide = __int128;

BigInt to_bigint(Wide v) { return BigInt(static_cast<boost::multiprecision::int128_t>(v)); }

/// One multilinear function compiled to bitmask terms over a fixed
/// variable order, with coefficients scaled to a common integer grid so
/// the exhaustive walk runs on integer arithmetic.
struct CompiledFunction {
    std::vector<std::uint32_t> masks;
    std::vector<Wide> coefs;
    Wide constant = 0;
    BigInt scale = 1;  // scaled value = scale * exact value

    static CompiledFunction build(const Polynomial& p, const std::vector<VarId>& order) {
        CompiledFunction f;
        std::map<VarId, int> pos;
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);

        BigInt den = denominator(p.constant());
        for (const auto& [support, coef] : p.terms()) den = lcm(den, denominator(coef));
        f.scale = den;

        auto to_wide = [&](const Rational& r) {
            BigInt v = numerator(r) * (den / denominator(r));
            if (abs(v) > BigInt(1) << 120) throw Error("verify: coefficient too large for exact scan");
            return static_cast<Wide>(v.convert_to<boost::multiprecision::int128_t>());
        };
        f.constant = to_wide(p.constant());
        for (const auto& [support, coef] : p.terms()) {
            std::uint32_t mask = 0;
            for (VarId v : support) {
                auto it = pos.find(v);
                if (it == pos.end()) throw Error("verify: variable outside enumeration order");
                mask |= 1u << it->second;
            }
            f.masks.push_back(mask);
            f.coefs.push_back(to_wide(coef));
        }
        return f;
    }

    Wide value_at(std::uint32_t point) const {
        Wide v = constant;
        for (std::size_t t = 0; t < masks.size(); ++t) {
            if ((point & masks[t]) == masks[t]) v += coefs[t];
        }
        return v;
    }
};

/// Walks all 2^n assignments in lexicographic order (order[0] is the
/// most significant position) with incremental function updates. The
/// visitor receives the point bitmask (bit i = variable order[i]) and
/// the scaled values of every registered function.
class ExhaustiveWalk {
 public:
    ExhaustiveWalk(std::vector<VarId> order, std::vector<const Polynomial*> functions)
        : order_(std::move(order)) {
        n_ = static_cast<int>(order_.size());
        if (n_ > kExhaustiveCap) {
            throw Error("exhaustive scan over " + std::to_string(n_) +
                        " variables exceeds the cap of " + std::to_string(kExhaustiveCap));
        }
        for (const Polynomial* p : functions) {
            compiled_.push_back(CompiledFunction::build(*p, order_));
        }
        // terms_by_var[i] lists (function, term) pairs touching variable i.
        terms_by_var_.resize(n_);
        for (std::size_t f = 0; f < compiled_.size(); ++f) {
            for (std::size_t t = 0; t < compiled_[f].masks.size(); ++t) {
                for (int i = 0; i < n_; ++i) {
                    if (compiled_[f].masks[t] & (1u << i)) terms_by_var_[i].push_back({f, t});
                }
            }
        }
    }

    const std::vector<VarId>& order() const { return order_; }
    const BigInt& scale(std::size_t f) const { return compiled_[f].scale; }

    /// visit(point, values) is called 2^n times; returning false stops.
    template <typename Visitor>
    void run(Visitor&& visit) {
        std::vector<Wide> values(compiled_.size());
        for (std::size_t f = 0; f < compiled_.size(); ++f) values[f] = compiled_[f].constant;
        std::uint32_t point = 0;

        const std::uint64_t total = std::uint64_t(1) << n_;
        if (!visit(point, values)) return;
        for (std::uint64_t counter = 1; counter < total; ++counter) {
            // Lexicographic step: counter bit b corresponds to variable
            // order[n-1-b], so trailing-bit flips touch the fast-moving
            // low-significance variables.
            std::uint64_t changed = counter ^ (counter - 1);
            while (changed) {
                int b = std::countr_zero(changed);
                changed &= changed - 1;
                int i = n_ - 1 - b;
                std::uint32_t bit = 1u << i;
                bool now_set = (counter >> b) & 1;
                std::uint32_t before = point;
                point = now_set ? (point | bit) : (point & ~bit);
                for (auto [f, t] : terms_by_var_[i]) {
                    const std::uint32_t mask = compiled_[f].masks[t];
                    bool was = (before & mask) == mask;
                    bool is = (point & mask) == mask;
                    if (was != is) values[f] += is ? compiled_[f].coefs[t] : -compiled_[f].coefs[t];
                }
            }
            if (!visit(point, values)) return;
        }
    }

 private:
    int n_ = 0;
    std::vector<VarId> order_;
    std::vector<CompiledFunction> compiled_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> terms_by_var_;
};

std::vector<VarId> joint_support(const Polynomial& P, const TwoSidedConstraint& c) {
    std::set<VarId> vars;
    for (VarId v : P.support_variables()) vars.insert(v);
    for (const auto& [v, coef] : c.expr.terms()) vars.insert(v);
    return {vars.begin(), vars.end()};
}

Assignment assignment_from_point(std::uint32_t point, const std::vector<VarId>& order) {
    Assignment a;
    for (std::size_t i = 0; i < order.size(); ++i) a.set(order[i], (point >> i) & 1);
    return a;
}

}  // namespace

Verdict check_vip(const Polynomial& P, const TwoSidedConstraint& c) {
    std::vector<VarId> order = joint_support(P, c);
    Polynomial h = c.expr.to_polynomial();
    ExhaustiveWalk walk(order, {&P, &h});

    // h lives on the 1/scale(1) grid; rational bounds off that grid are
    // snapped here so the comparison stays integral.
    Rational lo = c.lo.value_or(0), hi = c.hi.value_or(0);
    BigInt hscale = walk.scale(1);
    auto scaled_floor = [&](const Rational& r) {
        BigInt num = numerator(r * Rational(hscale)), den = denominator(r * Rational(hscale));
        BigInt q = num / den;
        if (num < 0 && num % den != 0) --q;
        return static_cast<Wide>(q.convert_to<boost::multiprecision::int128_t>());
    };
    auto scaled_ceil = [&](const Rational& r) {
        BigInt num = numerator(r * Rational(hscale)), den = denominator(r * Rational(hscale));
        BigInt q = num / den;
        if (num > 0 && num % den != 0) ++q;
        return static_cast<Wide>(q.convert_to<boost::multiprecision::int128_t>());
    };
    bool has_lo = c.lo.has_value(), has_hi = c.hi.has_value();
    Wide wlo = has_lo ? scaled_ceil(lo) : 0;
    Wide whi = has_hi ? scaled_floor(hi) : 0;

    Verdict verdict;
    verdict.ok = true;
    walk.run([&](std::uint32_t point, const std::vector<Wide>& values) {
        ++verdict.checked;
        bool satisfied = (!has_lo || values[1] >= wlo) && (!has_hi || values[1] <= whi);
        bool point_ok = satisfied ? values[0] == 0 : values[0] > 0;
        if (!point_ok) {
            verdict.ok = false;
            Counterexample ce;
            ce.assignment = assignment_from_point(point, order);
            ce.penalty_value = P.evaluate(ce.assignment);
            ce.constraint_value = c.expr.evaluate(ce.assignment);
            ce.constraint_satisfied = satisfied;
            verdict.counterexample = std::move(ce);
            return false;
        }
        return true;
    });
    return verdict;
}

Verdict check_augmented_vip(const Polynomial& P, const TwoSidedConstraint& c,
                            const std::vector<VarId>& ancillaries) {
    if (ancillaries.empty()) return check_vip(P, c);

    std::set<VarId> anc(ancillaries.begin(), ancillaries.end());
    for (const auto& [v, coef] : c.expr.terms()) {
        if (anc.count(v)) {
            throw Error("check_augmented_vip: ancillary variable appears in the constraint");
        }
    }
    std::vector<VarId> xs, order;
    for (VarId v : joint_support(P, c)) {
        if (!anc.count(v)) xs.push_back(v);
    }
    order = xs;
    order.insert(order.end(), anc.begin(), anc.end());
    int n_anc = static_cast<int>(anc.size());

    Polynomial h = c.expr.to_polynomial();
    ExhaustiveWalk walk(order, {&P, &h});

    bool has_lo = c.lo.has_value(), has_hi = c.hi.has_value();
    Rational wlo_r = (c.lo.value_or(0)) * Rational(walk.scale(1));
    Rational whi_r = (c.hi.value_or(0)) * Rational(walk.scale(1));

    // Ancillas occupy the low-significance (fastest) positions, so each
    // aligned block of 2^n_anc points shares one x-prefix; the projected
    // function value is the block minimum.
    const std::uint64_t block = std::uint64_t(1) << n_anc;
    std::uint64_t in_block = 0;
    Wide block_min = 0;
    Wide h_value = 0;
    std::uint32_t x_point = 0;

    Verdict verdict;
    verdict.ok = true;
    walk.run([&](std::uint32_t point, const std::vector<Wide>& values) {
        if (in_block == 0) {
            block_min = values[0];
            h_value = values[1];
            x_point = point;
        } else {
            block_min = std::min(block_min, values[0]);
        }
        ++in_block;
        if (in_block < block) return true;
        in_block = 0;
        ++verdict.checked;

        bool satisfied = true;
        if (has_lo && Rational(to_bigint(h_value)) < wlo_r) {
            satisfied = false;
        }
        if (has_hi && Rational(to_bigint(h_value)) > whi_r) {
            satisfied = false;
        }
        bool point_ok = satisfied ? block_min == 0 : block_min > 0;
        if (!point_ok) {
            verdict.ok = false;
            Counterexample ce;
            std::uint32_t x_mask = (1u << xs.size()) - 1;
            ce.assignment = assignment_from_point(x_point & x_mask, xs);
            ce.penalty_value =
                Rational(to_bigint(block_min)) / Rational(walk.scale(0));
            ce.constraint_value = c.expr.evaluate(ce.assignment);
            ce.constraint_satisfied = satisfied;
            verdict.counterexample = std::move(ce);
            return false;
        }
        return true;
    });
    return verdict;
}

BruteForceResult blp_brute_force(const BlpModel& m) {
    std::vector<VarId> order = m.variables.original_ids();
    if (order.size() > kExhaustiveCap) {
        throw Error("blp_brute_force: model has more than 24 variables");
    }
    Polynomial objective = m.min_objective().to_polynomial();
    objective.add_constant(m.min_constant());

    std::vector<const Polynomial*> funcs = {&objective};
    std::vector<Polynomial> hs;
    hs.reserve(m.constraints.size());
    for (const auto& c : m.constraints) hs.push_back(c.expr.to_polynomial());
    for (const auto& h : hs) funcs.push_back(&h);

    ExhaustiveWalk walk(order, funcs);

    struct ScaledWindow {
        bool has_lo, has_hi;
        Rational lo, hi;
    };
    std::vector<ScaledWindow> windows;
    for (std::size_t ci = 0; ci < m.constraints.size(); ++ci) {
        const auto& c = m.constraints[ci];
        Rational s(walk.scale(ci + 1));
        windows.push_back({c.lo.has_value(), c.hi.has_value(), c.lo.value_or(0) * s,
                           c.hi.value_or(0) * s});
    }

    BruteForceResult result;
    bool have_best = false;
    Wide best = 0;
    std::vector<std::uint32_t> argmins;
    walk.run([&](std::uint32_t point, const std::vector<Wide>& values) {
        ++result.checked;
        for (std::size_t ci = 0; ci < windows.size(); ++ci) {
            Rational hv = Rational(to_bigint(values[ci + 1]));
            if (windows[ci].has_lo && hv < windows[ci].lo) return true;
            if (windows[ci].has_hi && hv > windows[ci].hi) return true;
        }
        if (!have_best || values[0] < best) {
            have_best = true;
            best = values[0];
            argmins.assign(1, point);
        } else if (values[0] == best) {
            argmins.push_back(point);
        }
        return true;
    });
    result.feasible = have_best;
    if (have_best) {
        result.optimum = Rational(to_bigint(best)) / Rational(walk.scale(0));
        for (std::uint32_t p : argmins) result.argmins.push_back(assignment_from_point(p, order));
    }
    return result;
}

EquivalenceReport check_equivalence(const BlpModel& m, const QuboModel& qubo,
                                    const std::vector<VarId>& order) {
    EquivalenceReport report;
    if (qubo.dimension > kExhaustiveCap || m.variables.num_original() > kExhaustiveCap) {
        report.status = EquivalenceStatus::TooLarge;
        report.note = "dimension exceeds the 24-variable exhaustive cap";
        return report;
    }
    if (static_cast<std::size_t>(qubo.dimension) != order.size()) {
        throw Error("check_equivalence: order size does not match qubo dimension");
    }

    BruteForceResult blp = blp_brute_force(m);
    report.checked = blp.checked;
    if (!blp.feasible) {
        report.status = EquivalenceStatus::InfeasibleBlp;
        report.note = "BLP is infeasible over the cube";
        return report;
    }
    report.blp_optimum = blp.optimum;

    // QUBO as a polynomial over `order`, walked exhaustively.
    Polynomial qp;
    qp.add_constant(qubo.constant);
    for (const auto& [key, coef] : qubo.coefficients) {
        if (key.first == key.second) {
            qp.add_term({order[key.first]}, coef);
        } else {
            qp.add_term({order[key.first], order[key.second]}, coef);
        }
    }
    ExhaustiveWalk walk(order, {&qp});
    bool have_best = false;
    Wide best = 0;
    std::vector<std::uint32_t> argmins;
    walk.run([&](std::uint32_t point, const std::vector<Wide>& values) {
        if (!have_best || values[0] < best) {
            have_best = true;
            best = values[0];
            argmins.assign(1, point);
        } else if (values[0] == best) {
            if (argmins.size() < (1u << 20)) argmins.push_back(point);
        }
        return true;
    });
    report.checked += std::uint64_t(1) << order.size();
    report.qubo_optimum = Rational(to_bigint(best)) / Rational(walk.scale(0));
    report.argmin_count = argmins.size();

    if (report.qubo_optimum != report.blp_optimum) {
        report.status = EquivalenceStatus::OptimumMismatch;
        report.note = "QUBO optimum " + to_string(report.qubo_optimum) + " != BLP optimum " +
                      to_string(report.blp_optimum);
        return report;
    }

    for (std::uint32_t point : argmins) {
        Assignment a;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (!order[i].is_ancilla()) a.set(order[i], (point >> i) & 1);
        }
        if (!m.feasible(a)) {
            report.status = EquivalenceStatus::InfeasibleArgmin;
            report.note = "a QUBO argmin decodes to an infeasible BLP point";
            return report;
        }
        Rational obj = m.min_objective().evaluate(a) + m.min_constant();
        if (obj != report.blp_optimum) {
            report.status = EquivalenceStatus::InfeasibleArgmin;
            report.note = "a QUBO argmin decodes to a suboptimal BLP point";
            return report;
        }
    }
    report.status = EquivalenceStatus::Ok;
    report.ok = true;
    return report;
}

EquivalenceReport check_equivalence(const BlpModel& m, const CompiledQubo& compiled) {
    return check_equivalence(m, compiled.qubo, compiled.order);
}

std::map<std::string, std::int64_t> minimal_lambda(const BlpModel& m, const PipelineConfig& cfg) {
    if (m.variables.num_original() > 20) {
        throw Error("minimal_lambda: refusing models with more than 20 variables");
    }
    auto passes = [&](std::int64_t lambda) {
        PipelineConfig fixed = cfg;
        fixed.penalty_mode = PenaltyMode::Fixed;
        fixed.fixed_lambdas.clear();
        for (const auto& c : m.constraints) fixed.fixed_lambdas[c.name] = Rational(lambda);
        CompiledQubo compiled =
            cfg.variant == Variant::Cts ? cts(m, fixed) : mlcts(m, fixed);
        if (compiled.qubo.dimension > kExhaustiveCap) {
            throw Error("minimal_lambda: compiled dimension exceeds the exhaustive cap");
        }
        return check_equivalence(m, compiled).ok;
    };

    constexpr std::int64_t kCap = 1 << 16;
    std::int64_t hi = 1;
    while (!passes(hi)) {
        hi *= 2;
        if (hi > kCap) {
            throw Error("minimal_lambda: no weight below 2^16 preserves the optimum; "
                        "a penalty term is not a VIP");
        }
    }
    std::int64_t lo = hi / 2;  // passes(lo) failed (or lo == 0)
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (passes(mid)) hi = mid; else lo = mid;
    }
    std::map<std::string, std::int64_t> out;
    for (const auto& c : m.constraints) out[c.name] = hi;
    return out;
}

}  // namespace qubolift
