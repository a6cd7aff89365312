// Copyright 2026 The TernaryLab Authors
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

#ifndef TERNARYLAB_ERRORS_HPP_
#define TERNARYLAB_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ternarylab {

// Base class for all errors raised by the library. Every subclass carries a
// human-readable message naming the violated condition.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A compressor parameter set violates one of its inequalities. The message
// names exactly one inequality, the first violated in the documented order.
class ParamViolation : public Error {
 public:
  explicit ParamViolation(const std::string& inequality)
      : Error("ParamViolation: " + inequality), inequality_(inequality) {}
  const std::string& inequality() const { return inequality_; }

 private:
  std::string inequality_;
};

// An input coordinate exceeds the compressor's admissible magnitude.
class OutOfRange : public Error {
 public:
  OutOfRange(std::size_t index, double value, double limit)
      : Error("OutOfRange: |coordinate " + std::to_string(index) + "| = " +
              std::to_string(value) + " exceeds " + std::to_string(limit)),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class NonFinite : public Error {
 public:
  explicit NonFinite(std::size_t index)
      : Error("NonFinite: coordinate " + std::to_string(index) +
              " is not finite") {}
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("DimensionMismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

class TooFewWorkers : public Error {
 public:
  explicit TooFewWorkers(const std::string& what)
      : Error("TooFewWorkers: " + what) {}
};

// A tradeoff curve has a flat segment of positive width, so the log-slope
// functionals are undefined.
class DegenerateCurve : public Error {
 public:
  explicit DegenerateCurve(const std::string& what)
      : Error("DegenerateCurve: " + what) {}
};

// The parameter solver cannot meet the requested privacy target.
class Infeasible : public Error {
 public:
  explicit Infeasible(const std::string& what) : Error("Infeasible: " + what) {}
};

class Overflow : public Error {
 public:
  explicit Overflow(const std::string& what) : Error("Overflow: " + what) {}
};

// The step size makes a bound's denominator non-positive.
class DegenerateStep : public Error {
 public:
  explicit DegenerateStep(const std::string& what)
      : Error("DegenerateStep: " + what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("ConfigError: " + what) {}
};

}  // namespace ternarylab

#endif  // TERNARYLAB_ERRORS_HPP_
