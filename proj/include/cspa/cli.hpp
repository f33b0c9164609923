// SPDX-License-Identifier: Apache-2.0
//
// cspa - channel static partner antenna simulator and analysis toolkit
// Copyright (C) 2026 The cspa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CSPA_CLI_HPP
#define CSPA_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cspa::cli
{
    enum ExitCode : int
    {
        ok = 0,
        usage_error = 1, // Bad arguments, unreadable or invalid input files
        runtime_error = 2
    };

    // Entry point of the cspa tool. Results go to out, diagnostics to err.
    //
    //   cspa [--seed N] [--out DIR] [--format text|csv] <command>
    //     simulate [--scenario FILE] [--strategy NAME|triple] [--emit trace,summary,plotdata]
    //     analyze TRACE...
    //     compare TRACE TRACE
    //     model gen [--params FILE] [--h0-db X] [--h0-phase-rad X] [--var-amp-db2 X]
    //               [--var-phase-rad2 X] [--samples N] [--output FILE]
    //     model fit TRACE
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
}

#endif
