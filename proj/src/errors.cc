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

#include "mespp/errors.h"

#include <fmt/format.h>

namespace mespp {

InvalidVertexError::InvalidVertexError(int vertex, int n)
    : Error(fmt::format("invalid vertex {} (graph has vertices 1..{})", vertex,
                        n)),
      vertex_(vertex) {}

DisconnectedGraphError::DisconnectedGraphError(int from, int to)
    : Error(fmt::format("graph is disconnected: vertex {} cannot reach {}",
                        from, to)),
      from_(from),
      to_(to) {}

ParseError::ParseError(int line, const std::string& message)
    : Error(line > 0 ? fmt::format("line {}: {}", line, message) : message),
      line_(line) {}

IllegalPlanError::IllegalPlanError(int searcher, int time,
                                   const std::string& detail)
    : Error(fmt::format("illegal plan for searcher {} at t={}: {}", searcher,
                        time, detail)),
      searcher_(searcher),
      time_(time) {}

EnumerationCapError::EnumerationCapError(double estimate, double cap)
    : Error(fmt::format(
          "joint-path enumeration refused: {:.4g} leaves exceeds cap {:.4g}",
          estimate, cap)),
      estimate_(estimate),
      cap_(cap) {}

}  // namespace mespp
