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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qubolift/rational.hpp"

namespace qubolift {

/// Identifies one binary variable. Original (problem) variables and
/// ancillary variables introduced by transformations live in separate
/// dense index spaces; all originals order before all ancillas.
class VarId {
 public:
    VarId() : raw_(0) {}

    static VarId original(std::uint32_t index) { return VarId(index); }
    static VarId ancilla(std::uint32_t index) { return VarId(index | kAncillaBit); }

    bool is_ancilla() const { return (raw_ & kAncillaBit) != 0; }
    std::uint32_t index() const { return raw_ & ~kAncillaBit; }
    std::uint32_t raw() const { return raw_; }

    friend auto operator<=>(const VarId&, const VarId&) = default;

 private:
    static constexpr std::uint32_t kAncillaBit = 0x80000000u;

    explicit VarId(std::uint32_t raw) : raw_(raw) {}

    std::uint32_t raw_;
};

struct VarIdHash {
    std::size_t operator()(VarId v) const { return std::hash<std::uint32_t>()(v.raw()); }
};

/// Name table for original variables plus the allocator for ancillas.
/// Each ancilla records which transformation step created it.
class VariableRegistry {
 public:
    VarId add_original(const std::string& name);
    VarId add_ancilla(const std::string& name, const std::string& created_by);

    std::optional<VarId> find(std::string_view name) const;

    /// Throws Error for ids outside the registry.
    const std::string& name(VarId v) const;
    const std::string& created_by(VarId v) const;

    std::size_t num_original() const { return original_names_.size(); }
    std::size_t num_ancilla() const { return ancillas_.size(); }

    std::vector<VarId> original_ids() const;
    std::vector<VarId> all_ids() const;

 private:
    struct AncillaInfo {
        std::string name;
        std::string created_by;
    };

    std::vector<std::string> original_names_;
    std::vector<AncillaInfo> ancillas_;
    std::unordered_map<std::string, VarId> by_name_;
};

}  // namespace qubolift
