/*
 * Copyright 2026 The ssk authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ssk {

/// Base class for every error raised by the library. The `name()` of an
/// error is a stable machine-readable identifier used in CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define SSK_DEFINE_ERROR(Name)                        \
  class Name : public Error {                         \
   public:                                            \
    explicit Name(const std::string& detail = "")     \
        : Error(#Name, detail) {}                     \
  }

SSK_DEFINE_ERROR(NotDivisible);
SSK_DEFINE_ERROR(ModulusMismatch);
SSK_DEFINE_ERROR(ShapeMismatch);
SSK_DEFINE_ERROR(NotInvertible);
SSK_DEFINE_ERROR(NotUnipotent);
SSK_DEFINE_ERROR(OddSize);
SSK_DEFINE_ERROR(NotSkew);
SSK_DEFINE_ERROR(NotTransversal);
SSK_DEFINE_ERROR(NotContained);
SSK_DEFINE_ERROR(SurjectivityFail);
SSK_DEFINE_ERROR(NotSymmetric);
SSK_DEFINE_ERROR(EvenAlready);
SSK_DEFINE_ERROR(NotIsotropic);
SSK_DEFINE_ERROR(NotMaximal);
SSK_DEFINE_ERROR(DegenerateReduction);
SSK_DEFINE_ERROR(NotOdd);
SSK_DEFINE_ERROR(NotEven);
SSK_DEFINE_ERROR(NotUnipotentDerivative);
SSK_DEFINE_ERROR(NotSuperconformal);
SSK_DEFINE_ERROR(DegreeOverflow);
SSK_DEFINE_ERROR(DuplicateBranch);
SSK_DEFINE_ERROR(ZeroCollision);
SSK_DEFINE_ERROR(RegularityFail);
SSK_DEFINE_ERROR(DegreeTooHigh);
SSK_DEFINE_ERROR(ParseError);
SSK_DEFINE_ERROR(InvalidSpec);

#undef SSK_DEFINE_ERROR

}  // namespace ssk
