/*
 * Copyright 2026 The PMSR Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef PMSR_TOOLS_CLI_COMMANDS_H_
#define PMSR_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pmsr::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitAbortedOnly = 2;
inline constexpr int kExitNeedsApproval = 3;
inline constexpr int kExitError = 4;
inline constexpr int kExitUsage = 64;

struct KeygenArgs {
  std::string out_prefix;
  std::optional<uint64_t> seed;
};

struct ProposeArgs {
  std::string proposal_path;
  std::string key_path;
  std::string out_path;
};

struct InspectArgs {
  std::string signed_path;
};

struct PolicyCheckArgs {
  std::string policy_path;
  std::string proposal_path;
  std::string identity;
};

struct SimArgs {
  std::string scenario;
  std::optional<std::string> config_path;
  std::optional<uint32_t> n_light;
  std::optional<uint32_t> n_heavy;
  std::optional<uint32_t> threshold;
  std::optional<double> dropout;
  std::optional<double> epsilon;
  std::optional<uint64_t> seed;
  std::optional<std::string> threat_model;
  std::optional<uint32_t> shamir_t;
  std::optional<uint32_t> shamir_n;
  std::optional<uint32_t> questions;
  std::optional<double> ms_per_tick;
  std::string out_dir;
};

struct ReportArgs {
  std::string dir;
};

// Writes <prefix>.pub and <prefix>.sec as hex and prints the public key.
int CmdKeygen(const KeygenArgs& args, std::ostream& out, std::ostream& err);

// Parses, validates and signs an authoring file into the signed binary form.
int CmdPropose(const ProposeArgs& args, std::ostream& out, std::ostream& err);

// Prints the authoring-format dump of a signed binary plus its signature
// status.
int CmdInspect(const InspectArgs& args, std::ostream& out, std::ostream& err);

// Prints the Decision. Exit 0 Accept, 1 Reject, 3 NeedsApproval.
int CmdPolicyCheck(const PolicyCheckArgs& args, std::ostream& out,
                   std::ostream& err);

// Runs a scenario and writes its report files. Exit 0 when at least one
// computation Released, 2 when none did.
int CmdSim(const SimArgs& args, std::ostream& out, std::ostream& err);

// Re-reads report.json from a directory and prints its summary.
int CmdReport(const ReportArgs& args, std::ostream& out, std::ostream& err);

// Full command-line dispatch. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace pmsr::cli

#endif  // PMSR_TOOLS_CLI_COMMANDS_H_
