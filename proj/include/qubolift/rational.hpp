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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qubolift {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational used for every coefficient in the transformation
/// pipeline. Floating point appears only inside the annealing solver.
using Rational = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Renders "3", "-7" or "3/2"; exact and reparseable.
std::string to_string(const Rational& r);

/// Parses "3", "-7", "3/2", "-3/2". Throws Error on anything else.
Rational rational_from_string(std::string_view text);

/// gcd(p1/q1, p2/q2) = gcd(p1,p2)/lcm(q1,q2), always non-negative.
Rational rational_gcd(const Rational& a, const Rational& b);

/// Integer value when the rational is integral and fits, otherwise nullopt.
std::optional<std::int64_t> as_int64(const Rational& r);

}  // namespace qubolift
