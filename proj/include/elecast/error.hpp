// Copyright 2026 The elecast Authors. All rights reserved.
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

#pragma once

#include <stdexcept>
#include <string>

namespace elecast {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or structurally broken input stream.
class IngestError : public Error {
 public:
  using Error::Error;
};

// Not enough observations to fit a model (n < 2, or n < min_polls).
class InsufficientDataError : public Error {
 public:
  InsufficientDataError(const std::string& what, std::size_t n_obs)
      : Error(what), n_obs_(n_obs) {}
  std::size_t n_obs() const { return n_obs_; }

 private:
  std::size_t n_obs_;
};

// Regressor has zero variance; the slope is not identified.
class DegenerateDesignError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration: bad sizes, unknown names, missing table entries.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed numeric input to a score (non-normalized histogram, empty series).
class InputError : public Error {
 public:
  using Error::Error;
};

// Operation applied in the wrong lifecycle state (e.g. settling twice).
class StateError : public Error {
 public:
  using Error::Error;
};

// Two date-indexed series could not be aligned.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace elecast
