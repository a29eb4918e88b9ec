// Copyright 2026 The moegame Authors
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

namespace moegame {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A precondition or type invariant was violated by the caller.
class ContractError : public Error {
  public:
    using Error::Error;
};

/// A requested dimension or enumeration exceeds a documented cap.
class SizeError : public Error {
  public:
    using Error::Error;
};

/// An iterative numerical routine did not converge.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

/// Malformed external input (strategy files, slice files, hex tables).
class InputError : public Error {
  public:
    using Error::Error;
};

/// The two independently built sides of the W1/W2 decomposition disagree.
class DecompositionMismatch : public Error {
  public:
    DecompositionMismatch(const std::string &what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

}  // namespace moegame
