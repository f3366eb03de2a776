// Copyright 2026 The kspacing Authors.
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kspacing/experiment.hpp"

namespace kspacing::cli {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kTrialCsvHeader =
    "schema_version,command,k,n,trial,seed,m_value,t_normalized";

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Entry point behind the kspacing executable. Subcommands: simulate, pvalue,
/// verify. Returns 0 on success or passing verification, 1 on a domain error
/// or failed verification, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rows of the trial CSV, header first.
std::string trial_csv(const std::string& command,
                      const std::vector<LimitExperimentResult>& results);

/// Summary JSON document for one sample size.
std::string summary_json(const std::string& command, const ExperimentConfig& cfg,
                         const LimitExperimentResult& result);

}  // namespace kspacing::cli
