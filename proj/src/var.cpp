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

#include "qubolift/var.hpp"

namespace qubolift {

VarId VariableRegistry::add_original(const std::string& name) {
    if (by_name_.count(name)) throw Error("duplicate variable name '" + name + "'");
    VarId id = VarId::original(static_cast<std::uint32_t>(original_names_.size()));
    original_names_.push_back(name);
    by_name_.emplace(name, id);
    return id;
}

VarId VariableRegistry::add_ancilla(const std::string& name, const std::string& created_by) {
    if (by_name_.count(name)) throw Error("duplicate variable name '" + name + "'");
    VarId id = VarId::ancilla(static_cast<std::uint32_t>(ancillas_.size()));
    ancillas_.push_back({name, created_by});
    by_name_.emplace(name, id);
    return id;
}

std::optional<VarId> VariableRegistry::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

const std::string& VariableRegistry::name(VarId v) const {
    if (v.is_ancilla()) {
        if (v.index() >= ancillas_.size()) throw Error("unknown ancillary variable id");
        return ancillas_[v.index()].name;
    }
    if (v.index() >= original_names_.size()) throw Error("unknown variable id");
    return original_names_[v.index()];
}

const std::string& VariableRegistry::created_by(VarId v) const {
    if (!v.is_ancilla() || v.index() >= ancillas_.size()) {
        throw Error("created_by is only recorded for ancillary variables");
    }
    return ancillas_[v.index()].created_by;
}

std::vector<VarId> VariableRegistry::original_ids() const {
    std::vector<VarId> ids;
    ids.reserve(original_names_.size());
    for (std::uint32_t i = 0; i < original_names_.size(); ++i) ids.push_back(VarId::original(i));
    return ids;
}

std::vector<VarId> VariableRegistry::all_ids() const {
    std::vector<VarId> ids = original_ids();
    for (std::uint32_t i = 0; i < ancillas_.size(); ++i) ids.push_back(VarId::ancilla(i));
    return ids;
}

}  // namespace qubolift
