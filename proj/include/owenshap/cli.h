/*
 * Copyright 2026 The OwenShap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OWENSHAP_CLI_H_
#define OWENSHAP_CLI_H_

#include <ostream>
#include <span>
#include <string>

namespace owenshap {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

// Entry point of the owenshap tool. `args[0]` is the program name. Results go
// to `out` unless --out is given; diagnostics and errors go to `err`.
int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace owenshap

#endif  // OWENSHAP_CLI_H_
