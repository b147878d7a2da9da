// Copyright 2026 The wsim Authors
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

namespace wsim {

enum class ErrorKind {
    Domain,          // argument outside its mathematical domain
    WidthMismatch,   // qubit counts disagree
    RangeViolation,  // sampled |F(x)| exceeded its declared bound
    Budget,          // sparseness / term-count / sample budget exceeded
    Precondition,    // structural precondition (unitarity, normalization, ...)
    OutOfClass,      // circuit falls outside every supported catalog rule
    Parse,           // malformed input file
    Verification,    // dense cross-check deviated by more than epsilon
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string &message) {
    if (!condition) {
        fail(kind, message);
    }
}

}  // namespace wsim
