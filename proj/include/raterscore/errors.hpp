// Copyright 2026 The raterscore Authors
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

#ifndef RATERSCORE__ERRORS_HPP_
#define RATERSCORE__ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace raterscore
{

// Requested sample time or index lies outside a trajectory's span.
class RangeError : public std::out_of_range
{
public:
  explicit RangeError(const std::string & what) : std::out_of_range(what) {}
};

// Input violates a structural invariant (waypoint count, finiteness, ...).
class StructuralError : public std::invalid_argument
{
public:
  explicit StructuralError(const std::string & what) : std::invalid_argument(what) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
public:
  explicit DomainError(const std::string & what) : std::domain_error(what) {}
};

// Route has too few samples to define a heading change.
class DegenerateRouteError : public StructuralError
{
public:
  explicit DegenerateRouteError(const std::string & what) : StructuralError(what) {}
};

class IoError : public std::runtime_error
{
public:
  explicit IoError(const std::string & what) : std::runtime_error(what) {}
};

}  // namespace raterscore

#endif  // RATERSCORE__ERRORS_HPP_
