// Copyright 2026 The mfscore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mfscore/roles.h"

#include <array>

namespace mfscore {

namespace {

constexpr std::array<std::string_view, 3> kForwardOfRoles = {
    "consist-of", "prep-out-of", "prep-on-behalf-of"};

constexpr std::string_view kOf = "-of";

}  // namespace

bool IsInverseRole(std::string_view role) {
  if (role.size() <= kOf.size()) return false;
  if (role.substr(role.size() - kOf.size()) != kOf) return false;
  for (auto forward : kForwardOfRoles) {
    if (role == forward) return false;
  }
  return true;
}

std::string InvertRole(std::string_view role) {
  if (IsInverseRole(role)) {
    return std::string(role.substr(0, role.size() - kOf.size()));
  }
  return std::string(role) + std::string(kOf);
}

}  // namespace mfscore
