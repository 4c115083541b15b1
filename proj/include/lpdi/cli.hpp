// Copyright 2026 The lpdi Authors
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

// The lpdi command line: constants, classify, flow and construct.
//
// Exit codes: 0 success, 2 usage or domain errors, 3 horizon or resource
// limits, 1 anything else.

#ifndef LPDI_CLI_HPP_
#define LPDI_CLI_HPP_

#include <ostream>
#include <string>

namespace lpdi {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitHorizon = 3;

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

// "inf", "p0" or a number >= 1.
double ParseP(const std::string& text);

}  // namespace lpdi

#endif  // LPDI_CLI_HPP_
