// Copyright 2026 The auclearn Authors
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

#ifndef AUCLEARN_CLI_H_
#define AUCLEARN_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace auclearn::cli {

// Exit codes: 0 success, 2 validation or parse error, 1 internal error.
// Errors go to `err` with the prefix "ERROR:".
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int Run(int argc, const char* const* argv);

}  // namespace auclearn::cli

#endif  // AUCLEARN_CLI_H_
