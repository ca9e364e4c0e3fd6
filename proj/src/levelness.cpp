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

#include "qubolift/levelness.hpp"

#include <algorithm>
#include <set>

namespace qubolift {

std::string to_string(Sidedness s) {
    switch (s) {
        case Sidedness::Equality: return "equality";
        case Sidedness::LowerOneSided: return "lower-one-sided";
        case Sidedness::UpperOneSided: return "upper-one-sided";
        case Sidedness::TwoSided: return "two-sided";
        case Sidedness::Vacuous: return "vacuous";
    }
    return "?";
}

const Rational& LevelnessReport::h_at(int index_1based) const {
    if (index_1based < 1 || index_1based > K) {
        throw Error("H index " + std::to_string(index_1based) + " out of range 1.." +
                    std::to_string(K));
    }
    return H[static_cast<std::size_t>(index_1based) - 1];
}

std::vector<Rational> value_set(const LinearExpression& expr, const ValueSetOptions& options) {
    const auto& terms = expr.terms();
    if (static_cast<int>(terms.size()) <= options.cap) {
        // Reachable-sum DP: one pass per variable over the current set.
        std::set<Rational> sums = {Rational(0)};
        for (const auto& [v, c] : terms) {
            std::set<Rational> next = sums;
            for (const auto& s : sums) next.insert(s + c);
            sums.swap(next);
        }
        return {sums.begin(), sums.end()};
    }
    if (!expr.all_integer()) {
        throw Error("value_set: support of " + std::to_string(terms.size()) +
                    " variables exceeds the enumeration cap of " + std::to_string(options.cap) +
                    " and the coefficients are not integers; raise the cap (--value-set-cap)");
    }
    // Dense boolean DP over the integer range [sum of negatives, sum of
    // positives]; cheap even for very large sparse constraints.
    BigInt neg = 0, pos = 0;
    for (const auto& [v, c] : terms) {
        BigInt n = numerator(c);
        if (n < 0) neg += n; else pos += n;
    }
    std::size_t width = (pos - neg + 1).convert_to<std::size_t>();
    std::vector<char> reachable(width, 0);
    std::size_t zero_offset = (-neg).convert_to<std::size_t>();
    reachable[zero_offset] = 1;
    for (const auto& [v, c] : terms) {
        std::int64_t step = numerator(c).convert_to<std::int64_t>();
        if (step > 0) {
            for (std::size_t s = width; s-- > 0;) {
                if (reachable[s] && s + static_cast<std::size_t>(step) < width) {
                    reachable[s + static_cast<std::size_t>(step)] = 1;
                }
            }
        } else {
            // scan ascending: s - d lies strictly below the read cursor
            std::size_t d = static_cast<std::size_t>(-step);
            for (std::size_t s = d; s < width; ++s) {
                if (reachable[s]) reachable[s - d] = 1;
            }
        }
    }
    std::vector<Rational> values;
    for (std::size_t s = 0; s < width; ++s) {
        if (reachable[s]) values.emplace_back(BigInt(s) + neg);
    }
    return values;
}

LevelnessReport refine_and_classify(const TwoSidedConstraint& c, const ValueSetOptions& options) {
    LevelnessReport r;
    r.name = c.name;
    r.expr = c.expr;
    r.H = value_set(c.expr, options);
    r.K = static_cast<int>(r.H.size());

    r.regular = true;
    r.integral = c.expr.all_integer() && (!c.lo || is_integer(*c.lo)) &&
                 (!c.hi || is_integer(*c.hi));
    for (const auto& [v, coef] : c.expr.terms()) {
        r.support.push_back(v);
        if (coef > 0) r.support_pos.push_back(v); else r.support_neg.push_back(v);
        if (coef != 1 && coef != -1) r.regular = false;
    }

    // Remark 1: snap lo up and hi down to members of H.
    auto lo_it = c.lo ? std::lower_bound(r.H.begin(), r.H.end(), *c.lo) : r.H.begin();
    auto hi_it = c.hi ? std::upper_bound(r.H.begin(), r.H.end(), *c.hi) : r.H.end();
    if (lo_it >= hi_it) {
        throw Error("constraint " + c.name + " infeasible over the cube: no achievable value in [" +
                    (c.lo ? to_string(*c.lo) : std::string("-inf")) + ", " +
                    (c.hi ? to_string(*c.hi) : std::string("+inf")) + "]");
    }
    r.i = static_cast<int>(lo_it - r.H.begin()) + 1;
    r.k = static_cast<int>(hi_it - lo_it);
    r.lo = *lo_it;
    r.hi = *(hi_it - 1);

    if (r.k == r.K) {
        r.sidedness = Sidedness::Vacuous;
    } else if (r.k == 1) {
        r.sidedness = Sidedness::Equality;
    } else if (r.lo == r.H.front()) {
        r.sidedness = Sidedness::UpperOneSided;
    } else if (r.hi == r.H.back()) {
        r.sidedness = Sidedness::LowerOneSided;
    } else {
        r.sidedness = Sidedness::TwoSided;
    }
    return r;
}

bool lemma3_case(const LevelnessReport& r) {
    return r.sidedness == Sidedness::TwoSided && r.k % 2 == 1;
}

CompactCertificate compact_certificate(const BlpModel& m, const ValueSetOptions& options) {
    CompactCertificate cert;
    for (const auto& c : m.constraints) {
        if (c.is_equality()) continue;  // TR1 quadratizes equalities directly
        LevelnessReport r = refine_and_classify(c, options);
        if (r.vacuous()) continue;
        if (r.sidedness == Sidedness::Equality) continue;  // refined to a single level
        CompactCertificate::Entry e;
        e.constraint = c.name;
        e.k = r.k;
        e.kappa = lemma3_case(r) ? r.k + 1 : r.k;
        e.support_size = static_cast<int>(r.support.size());
        cert.entries.push_back(e);
    }
    if (!cert.entries.empty()) {
        int kn = 0;
        for (const auto& e : cert.entries) kn = std::max(kn, std::min(e.kappa, e.support_size));
        cert.KN = kn;
        cert.compact_guaranteed = kn <= 2;
    }
    return cert;
}

}  // namespace qubolift
