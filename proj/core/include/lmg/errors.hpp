// Copyright 2026 The lmg-bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lmg {

/// Base class of every error raised by the library. `code()` is a stable
/// machine-readable tag that the CLI forwards in its JSON error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error("invalid-argument", message) {}
};

/// A spectral parameter sits on a pole of the Bethe equations or of an EGO
/// factor (E = +-eta, or two coinciding parameters).
class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& message)
      : Error("singularity", message) {}
};

class UnsupportedRegime : public Error {
 public:
  explicit UnsupportedRegime(const std::string& message)
      : Error("unsupported-regime", message) {}
};

class IncompleteSolve : public Error {
 public:
  IncompleteSolve(const std::string& message, int found, int expected)
      : Error("incomplete-solve", message), found_(found), expected_(expected) {}

  int found() const noexcept { return found_; }
  int expected() const noexcept { return expected_; }

 private:
  int found_;
  int expected_;
};

class ComplexPairons : public Error {
 public:
  explicit ComplexPairons(const std::string& message)
      : Error("complex-pairons", message) {}
};

class NumericFailure : public Error {
 public:
  explicit NumericFailure(const std::string& message)
      : Error("numeric-failure", message) {}
};

/// Amplitude found outside the one-hot subspace of an encoded state.
class LeakageError : public Error {
 public:
  explicit LeakageError(const std::string& message)
      : Error("leakage", message) {}
};

}  // namespace lmg
