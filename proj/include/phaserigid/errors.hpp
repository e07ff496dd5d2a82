// Copyright 2026 The Phaserigid Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phaserigid {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Two values built in different algebra contexts (mode count or hbar) were combined.
class ContextMismatch : public Error {
 public:
  explicit ContextMismatch(const std::string& message) : Error(message) {}
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message) : Error(message) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Fock-space truncation could not be made adequate within the configured cap.
class CutoffError : public Error {
 public:
  CutoffError(const std::string& message, double tail_mass, int cutoff)
      : Error(message), tail_mass_(tail_mass), cutoff_(cutoff) {}

  double tail_mass() const { return tail_mass_; }
  int cutoff() const { return cutoff_; }

 private:
  double tail_mass_;
  int cutoff_;
};

/// A moment system references moments outside the requested index set.
class OpenSystemError : public Error {
 public:
  explicit OpenSystemError(const std::string& message) : Error(message) {}
};

class SamplingError : public Error {
 public:
  explicit SamplingError(const std::string& message) : Error(message) {}
};

}  // namespace phaserigid
