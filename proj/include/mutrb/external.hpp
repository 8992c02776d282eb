// Copyright 2026 The mutrb Authors
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

// Targets built and run by outside toolchains. The engine performs no
// isolation of its own: callers are responsible for sandboxing the commands
// named in a descriptor.

#ifndef MUTRB_EXTERNAL_HPP_
#define MUTRB_EXTERNAL_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mutrb/harness.hpp"

namespace mutrb {

struct ProcessResult {
  int exit_code = 0;    // valid when neither signaled nor timed out
  int signal = 0;       // terminating signal, 0 if none
  bool timed_out = false;
  std::string output;   // captured standard output
};

/// Runs `command` through /bin/sh in `cwd`, with empty standard input. The
/// whole process group is killed once `timeout_ms` elapses.
ProcessResult run_process(const std::string& command,
                          const std::filesystem::path& cwd,
                          std::uint64_t timeout_ms);

/// Replaces `{variant}`, `{workdir}` and `{source_dir}` in `templ`.
std::string expand_template(const std::string& templ, const std::string& variant,
                            const std::string& workdir, const std::string& source_dir);

struct ExternalTest {
  std::string cmd;
  std::filesystem::path expected_file;
};

struct ExternalDescriptor {
  std::filesystem::path source;  // genome file: .lin for listings, else mini-language
  std::string build_cmd;         // empty: no build step
  std::vector<ExternalTest> tests;
  std::uint64_t timeout_ms = 10'000;
  std::filesystem::path coverage_file;  // lines of "<site id> <count>"
  std::filesystem::path base_dir;       // relative paths resolve here
};

/// Parses a key=value descriptor. Keys: source, build_cmd, timeout_ms,
/// coverage_file, test[i].cmd, test[i].expected_file. Throws ConfigError.
ExternalDescriptor load_external_descriptor(const std::filesystem::path& path);

class ExternalEvaluator final : public Evaluator {
 public:
  explicit ExternalEvaluator(ExternalDescriptor descriptor);

  /// Case inputs are run command templates (see external_suite()).
  Verdict evaluate(const Genome& genome, const TestSuite& suite) const override;
  /// Reads the descriptor's coverage file; absent ids count as unvisited.
  CoverageMap coverage(const Genome& genome, const TestSuite& suite) const override;

  const ExternalDescriptor& descriptor() const { return descriptor_; }

 private:
  ExternalDescriptor descriptor_;
};

/// The suite whose cases are the descriptor's tests, in declaration order.
TestSuite external_suite(const ExternalDescriptor& descriptor, Comparator comparator);

Target load_external_target(const ExternalDescriptor& descriptor);

}  // namespace mutrb

#endif  // MUTRB_EXTERNAL_HPP_
