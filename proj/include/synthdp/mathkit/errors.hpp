// Copyright 2026 The synthdp Authors.
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

#ifndef SYNTHDP_MATHKIT_ERRORS_HPP_
#define SYNTHDP_MATHKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace synthdp {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A numerical procedure (quadrature, root search, training) did not converge.
// `partial` carries the best estimate available when the procedure stopped.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double partial)
      : std::runtime_error(what), partial_(partial) {}
  explicit NumericalFailure(const std::string& what)
      : NumericalFailure(what, 0.0) {}

  double partial() const noexcept { return partial_; }

 private:
  double partial_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

}  // namespace synthdp

#endif  // SYNTHDP_MATHKIT_ERRORS_HPP_
