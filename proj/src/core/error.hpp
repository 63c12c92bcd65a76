// Copyright 2026 The mcurve Authors
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

#ifndef MCURVE_CORE_ERROR_HPP_
#define MCURVE_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mcurve {

// Failure categories. The C API and the CLI map these onto status and exit
// codes, so the numeric values are part of the external contract.
enum class ErrorKind {
  kInvalidArgument = 1,
  kUsage = 2,
  kBudget = 3,
  kVerification = 4,
  kParse = 5,
  kDomain = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace mcurve

#endif  // MCURVE_CORE_ERROR_HPP_
