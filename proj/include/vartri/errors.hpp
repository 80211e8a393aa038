/*
Copyright 2026 The vartri Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <stdexcept>
#include <string>

namespace vartri
{

/** @brief Combinatorial input that does not describe a valid surface */
class MeshError : public std::invalid_argument
{
public:
    explicit MeshError(const std::string& msg) : std::invalid_argument(msg) {}
};

/** @brief Geometric data outside the domain of a trigonometric map */
class DomainError : public std::domain_error
{
public:
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

/** @brief Jacobian or Hessian requested where it does not exist */
class SingularityError : public DomainError
{
public:
    explicit SingularityError(const std::string& msg) : DomainError(msg) {}
};

/** @brief Prescribed curvature violates a necessary inequality */
class InfeasibleError : public std::runtime_error
{
public:
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vartri
