// Copyright 2026 The mespp Authors
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

#ifndef MESPP_LP_FORMAT_H_
#define MESPP_LP_FORMAT_H_

#include <string>
#include <string_view>

#include "mespp/milp.h"

namespace mespp {

// Shortest decimal text that reads back to exactly `value`.
std::string format_number(double value);

// CPLEX-style LP text: Maximize / Subject To / Bounds / Binary / End.
// Output depends only on the model, so equal models give identical bytes.
std::string write_lp(const MilpModel& model);

// Reads LP text produced by write_lp (and the same subset of the format
// written by other tools). Variable names must follow VarRef::name().
// Variables are declared in order of first appearance.
MilpModel read_lp(std::string_view text);

}  // namespace mespp

#endif  // MESPP_LP_FORMAT_H_
