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

#ifndef MESPP_ERRORS_H_
#define MESPP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mespp {

// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidVertexError : public Error {
 public:
  explicit InvalidVertexError(int vertex, int n);
  int vertex() const { return vertex_; }

 private:
  int vertex_;
};

class DisconnectedGraphError : public Error {
 public:
  DisconnectedGraphError(int from, int to);
  int from() const { return from_; }
  int to() const { return to_; }

 private:
  int from_;
  int to_;
};

// Malformed input text. `line` is 1-based, 0 when not attributable to a line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Graph or probability structure violating its invariants.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class IllegalPlanError : public Error {
 public:
  IllegalPlanError(int searcher, int time, const std::string& detail);
  int searcher() const { return searcher_; }
  int time() const { return time_; }

 private:
  int searcher_;
  int time_;
};

class WrongModelError : public Error {
 public:
  using Error::Error;
};

class InfeasibleFixingError : public Error {
 public:
  using Error::Error;
};

class EnumerationCapError : public Error {
 public:
  EnumerationCapError(double estimate, double cap);
  double estimate() const { return estimate_; }
  double cap() const { return cap_; }

 private:
  double estimate_;
  double cap_;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mespp

#endif  // MESPP_ERRORS_H_
