// Copyright 2026 The medcon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEDCON_ERROR_H_
#define MEDCON_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace medcon {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

// Random graph generation gave up before producing a connected sample.
class GenerationFailureError : public Error {
 public:
  GenerationFailureError(const std::string& what, int attempts)
      : Error(what), attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

// A solver round produced a NaN or infinity.
class NumericFailureError : public Error {
 public:
  NumericFailureError(const std::string& what, int round, int node)
      : Error(what), round_(round), node_(node) {}
  int round() const { return round_; }
  int node() const { return node_; }

 private:
  int round_;
  int node_;
};

class IncompleteTranscriptError : public Error {
 public:
  using Error::Error;
};

// Malformed text input (edge lists, CSVs, metadata, config files).
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace medcon

#endif  // MEDCON_ERROR_H_
