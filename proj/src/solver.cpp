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

#include "qubolift/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

namespace qubolift {

namespace {

using Clock = std::chrono::steady_clock;
using Wide = __int128;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

SolveResult solve_exhaustive(const QuboModel& q) {
    if (q.dimension > 26) {
        throw Error("solve_exhaustive: dimension " + std::to_string(q.dimension) +
                    " exceeds the cap of 26");
    }
    auto start = Clock::now();
    const int n = q.dimension;

    // Exact integer grid: scale by the lcm of the denominators.
    BigInt den = denominator(q.constant);
    for (const auto& [key, coef] : q.coefficients) den = lcm(den, denominator(coef));
    auto scaled = [&](const Rational& r) {
        BigInt v = numerator(r) * (den / denominator(r));
        return static_cast<Wide>(v.convert_to<boost::multiprecision::int128_t>());
    };

    std::vector<Wide> linear(n, 0);
    std::vector<std::vector<std::pair<int, Wide>>> adjacency(n);
    for (const auto& [key, coef] : q.coefficients) {
        Wide c = scaled(coef);
        if (key.first == key.second) {
            linear[key.first] += c;
        } else {
            adjacency[key.first].push_back({key.second, c});
            adjacency[key.second].push_back({key.first, c});
        }
    }

    std::vector<std::uint8_t> point(n, 0);
    Wide energy = scaled(q.constant);
    Wide best = energy;
    std::vector<std::uint8_t> best_point = point;

    // Counter walk in lexicographic order: counter bit b drives variable
    // n-1-b, and strict improvement keeps the first (smallest) argmin.
    const std::uint64_t total = n == 0 ? 1 : (std::uint64_t(1) << n);
    for (std::uint64_t counter = 1; counter < total; ++counter) {
        std::uint64_t changed = counter ^ (counter - 1);
        while (changed) {
            int b = std::countr_zero(changed);
            changed &= changed - 1;
            int v = n - 1 - b;
            std::uint8_t now = (counter >> b) & 1;
            Wide delta = linear[v];
            for (const auto& [u, c] : adjacency[v]) {
                if (point[u]) delta += c;
            }
            energy += now ? delta : -delta;
            point[v] = now;
        }
        if (energy < best) {
            best = energy;
            best_point = point;
        }
    }

    SolveResult result;
    result.method = "exhaustive";
    result.iterations = total;
    result.best_assignment = std::move(best_point);
    result.best_energy =
        Rational(BigInt(static_cast<boost::multiprecision::int128_t>(best))) / Rational(den);
    result.elapsed_seconds = seconds_since(start);
    return result;
}

IncrementalEvaluator::IncrementalEvaluator(const QuboModel& q)
    : n_(q.dimension), linear_(q.dimension, 0.0), adjacency_(q.dimension),
      constant_(to_double(q.constant)) {
    for (const auto& [key, coef] : q.coefficients) {
        double c = to_double(coef);
        max_abs_ = std::max(max_abs_, std::abs(c));
        if (key.first == key.second) {
            linear_[key.first] += c;
        } else {
            adjacency_[key.first].push_back({key.second, c});
            adjacency_[key.second].push_back({key.first, c});
        }
    }
    point_.assign(n_, 0);
    energy_ = constant_;
}

void IncrementalEvaluator::reset(const std::vector<std::uint8_t>& point) {
    if (static_cast<int>(point.size()) != n_) throw Error("evaluator point size mismatch");
    point_ = point;
    energy_ = constant_;
    for (int v = 0; v < n_; ++v) {
        if (!point_[v]) continue;
        energy_ += linear_[v];
        for (const auto& [u, c] : adjacency_[v]) {
            if (u < v && point_[u]) energy_ += c;
        }
    }
}

double IncrementalEvaluator::flip_delta(int v) const {
    double delta = linear_[v];
    for (const auto& [u, c] : adjacency_[v]) {
        if (point_[u]) delta += c;
    }
    return point_[v] ? -delta : delta;
}

void IncrementalEvaluator::flip(int v) {
    energy_ += flip_delta(v);
    point_[v] ^= 1;
}

namespace {

struct RestartOutcome {
    std::vector<std::uint8_t> best_point;
    double best_energy = 0;
    std::uint64_t iterations = 0;
    std::vector<HistorySample> history;
};

RestartOutcome run_restart(const QuboModel& q, const SaOptions& options, int restart_index,
                           Clock::time_point start) {
    IncrementalEvaluator eval(q);
    const int n = q.dimension;
    std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(restart_index));
    std::uniform_int_distribution<int> pick(0, std::max(0, n - 1));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<std::uint8_t> point(n);
    for (int v = 0; v < n; ++v) point[v] = static_cast<std::uint8_t>(rng() & 1);
    eval.reset(point);

    RestartOutcome out;
    out.best_point = eval.point();
    out.best_energy = eval.energy();
    if (options.record_history) out.history.push_back({0, seconds_since(start), out.best_energy});

    double t0 = eval.max_abs_coefficient();
    if (t0 <= 0) t0 = 1.0;
    const double t_end = t0 / 1000.0;
    const double cooling = options.iterations > 1
                               ? std::pow(t_end / t0, 1.0 / static_cast<double>(options.iterations - 1))
                               : 1.0;

    double temperature = t0;
    const std::uint64_t time_check_mask = 0x3ff;
    for (std::uint64_t it = 0; it < options.iterations && n > 0; ++it) {
        int v = pick(rng);
        double delta = eval.flip_delta(v);
        if (delta <= 0 || unit(rng) < std::exp(-delta / temperature)) {
            eval.flip(v);
            if (eval.energy() < out.best_energy) {
                out.best_energy = eval.energy();
                out.best_point = eval.point();
                if (options.record_history) {
                    out.history.push_back({it + 1, seconds_since(start), out.best_energy});
                }
            }
        }
        temperature *= cooling;
        out.iterations = it + 1;
        if (options.time_limit_seconds && (it & time_check_mask) == 0 &&
            seconds_since(start) > *options.time_limit_seconds) {
            break;
        }
    }
    return out;
}

}  // namespace

SolveResult solve_sa(const QuboModel& q, const SaOptions& options) {
    if (q.dimension < 1) throw Error("solve_sa: empty model");
    auto start = Clock::now();
    const int restarts = std::max(1, options.restarts);

    std::vector<RestartOutcome> outcomes(restarts);
    if (restarts == 1) {
        outcomes[0] = run_restart(q, options, 0, start);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(restarts);
        for (int r = 0; r < restarts; ++r) {
            workers.emplace_back([&, r] { outcomes[r] = run_restart(q, options, r, start); });
        }
        for (auto& w : workers) w.join();
    }

    int best_index = 0;
    for (int r = 1; r < restarts; ++r) {
        if (outcomes[r].best_energy < outcomes[best_index].best_energy) best_index = r;
    }

    SolveResult result;
    result.method = "sa";
    result.seed = options.seed;
    result.restarts = restarts;
    result.best_assignment = outcomes[best_index].best_point;
    result.best_energy = q.evaluate(result.best_assignment);  // exact, corrects float drift
    result.history = std::move(outcomes[best_index].history);
    for (const auto& o : outcomes) result.iterations += o.iterations;
    result.elapsed_seconds = seconds_since(start);
    return result;
}

std::optional<Rational> optimality_gap_percent(const Rational& z_star, const Rational& z_bar) {
    if (z_star == 0) return std::nullopt;
    return Rational(100) * (z_star - z_bar) / z_star;
}

}  // namespace qubolift
