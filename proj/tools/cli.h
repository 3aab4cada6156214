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

#ifndef SOMNI_TOOLS_CLI_H_
#define SOMNI_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace somni::cli {

enum ExitCode {
  kOk = 0,
  kError = 1,
  kBadInput = 2,
  kCertificationFailed = 3,
  kDecodeFailed = 4,
};

// Runs one command line (args excludes the program name). Results go to
// `out`, diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace somni::cli

#endif  // SOMNI_TOOLS_CLI_H_
