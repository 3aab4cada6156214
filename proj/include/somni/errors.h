// Copyright 2026 The Authors.
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

#ifndef SOMNI_ERRORS_H_
#define SOMNI_ERRORS_H_

#include <stdexcept>
#include <string>

namespace somni {

// Caller passed an argument outside an operation's domain (bad subset,
// alpha out of range, unknown user, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input file or document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A result failed its a-posteriori certificate. This always indicates an
// implementation bug, never bad user input.
class CertificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace somni

#endif  // SOMNI_ERRORS_H_
