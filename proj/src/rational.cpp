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

#include "qubolift/rational.hpp"

#include <boost/multiprecision/integer.hpp>

namespace qubolift {

std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/" + denominator(r).str();
    }
    return s;
}

Rational rational_from_string(std::string_view text) {
    auto parse_int = [](std::string_view part) -> BigInt {
        if (part.empty()) throw Error("empty number in rational literal");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) throw Error("sign without digits in rational literal");
        for (std::size_t i = start; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') {
                throw Error("invalid rational literal: '" + std::string(part) + "'");
            }
        }
        return BigInt(std::string(part));
    };

    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in rational literal");
    return Rational(num, den);
}

Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    BigInt num = gcd(numerator(a), numerator(b));
    BigInt den = lcm(denominator(a), denominator(b));
    return Rational(abs(num), den);
}

std::optional<std::int64_t> as_int64(const Rational& r) {
    if (!is_integer(r)) return std::nullopt;
    const BigInt& n = numerator(r);
    if (n > std::numeric_limits<std::int64_t>::max() ||
        n < std::numeric_limits<std::int64_t>::min()) {
        return std::nullopt;
    }
    return n.convert_to<std::int64_t>();
}

}  // namespace qubolift
