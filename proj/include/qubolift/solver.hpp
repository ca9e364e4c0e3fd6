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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qubolift/polynomial.hpp"
#include "qubolift/rational.hpp"

namespace qubolift {

struct HistorySample {
    std::uint64_t iteration = 0;
    double elapsed_seconds = 0;
    double energy = 0;
};

struct SolveResult {
    std::vector<std::uint8_t> best_assignment;
    Rational best_energy = 0;  // exact re-evaluation of the incumbent
    std::string method;
    std::uint64_t iterations = 0;
    int restarts = 1;
    double elapsed_seconds = 0;
    std::uint64_t seed = 0;
    std::vector<HistorySample> history;  // incumbent improvements
};

/// Global minimum by exhaustive scan; the reported argmin is the
/// lexicographically smallest one (index 0 most significant). n <= 26.
SolveResult solve_exhaustive(const QuboModel& q);

struct SaOptions {
    std::uint64_t seed = 0;
    std::uint64_t iterations = 100000;
    std::optional<double> time_limit_seconds;  // optional early cut
    int restarts = 1;
    bool record_history = false;
};

/// Single-flip Metropolis annealing with a geometric temperature
/// schedule from T0 = max |Q entry| down to T0/1000. Deterministic for a
/// fixed (seed, iterations, restarts): restart r uses seed + r and the
/// best result wins ties by lowest restart index.
SolveResult solve_sa(const QuboModel& q, const SaOptions& options);

/// 100 * (z_star - z_bar) / z_star on domain objective values; nullopt
/// when z_star is zero (undefined).
std::optional<Rational> optimality_gap_percent(const Rational& z_star, const Rational& z_bar);

/// One-flip evaluator behind the annealer, exposed so tests can audit
/// the incremental energy against from-scratch evaluation.
class IncrementalEvaluator {
 public:
    explicit IncrementalEvaluator(const QuboModel& q);

    void reset(const std::vector<std::uint8_t>& point);
    double flip_delta(int v) const;  // energy change if v were flipped
    void flip(int v);

    double energy() const { return energy_; }
    const std::vector<std::uint8_t>& point() const { return point_; }
    double max_abs_coefficient() const { return max_abs_; }
    int dimension() const { return n_; }

 private:
    int n_ = 0;
    std::vector<double> linear_;
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    double constant_ = 0;
    double max_abs_ = 0;
    std::vector<std::uint8_t> point_;
    double energy_ = 0;
};

}  // namespace qubolift
