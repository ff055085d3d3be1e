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

#ifndef MFSCORE_ROLES_H_
#define MFSCORE_ROLES_H_

#include <string>
#include <string_view>

namespace mfscore {

// True for roles written in inverse form ("ARG0-of"). Roles whose name
// merely ends in "-of" (consist-of, prep-out-of, prep-on-behalf-of) are
// forward roles.
bool IsInverseRole(std::string_view role);

// "ARG0-of" -> "ARG0", "ARG0" -> "ARG0-of", "consist-of" -> "consist-of-of".
std::string InvertRole(std::string_view role);

}  // namespace mfscore

#endif  // MFSCORE_ROLES_H_
