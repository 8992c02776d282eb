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

// Hermetic execution of mini-language programs and of their linear
// (stack-machine) listings, with per-site execution tracing.
//
// Semantics shared by both forms:
//   * 64-bit integers with wrap-around arithmetic; `/` truncates toward zero;
//     division or remainder by zero is a runtime error.
//   * Variables and arrays spring into existence as 0 on first use. Scalars
//     and arrays live in separate namespaces. Array slots are limited to
//     [0, kMaxArrayLength); other indices are runtime errors.
//   * `read` consumes the next input token (runtime error when exhausted);
//     `eof` is 1 once every token has been read.
//   * `print e` appends the decimal value and one space; `print "s"` appends
//     the literal text.

#ifndef MUTRB_MINILANG_HPP_
#define MUTRB_MINILANG_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mutrb/error.hpp"
#include "mutrb/genome.hpp"
#include "mutrb/suite.hpp"

namespace mutrb {

struct Limits {
  std::uint64_t max_steps = 100'000;
  std::uint64_t max_output = 64 * 1024;
  std::uint64_t max_input_reads = 100'000;

  friend bool operator==(const Limits&, const Limits&) = default;
};

inline constexpr std::int64_t kMaxArrayLength = 1 << 16;

enum class ExecStatus { Completed, StepLimit, RuntimeError };

std::string_view to_string(ExecStatus status);

struct Execution {
  ExecStatus status = ExecStatus::Completed;
  std::string output;
  /// Visit count per site id (indexed by id; protected lines stay zero).
  std::vector<std::uint64_t> trace;
  std::uint64_t steps = 0;
  std::string error;  // RuntimeError detail

  friend bool operator==(const Execution&, const Execution&) = default;
};

/// The genome is statically ill-formed (the "does not compile" outcome).
class InvalidProgram : public Error {
 public:
  using Error::Error;
};

/// Splits whitespace-separated integer tokens. Throws Error on a token that
/// is not a 64-bit integer.
std::vector<std::int64_t> parse_input(std::string_view text);

/// A genome prepared for repeated execution.
class Executable {
 public:
  virtual ~Executable() = default;
  virtual Execution run(const std::vector<std::int64_t>& input,
                        const Limits& limits) const = 0;
};

/// Throws InvalidProgram for ill-formed genomes (break outside a loop,
/// unknown opcode, jump to an undefined label, ...).
std::unique_ptr<Executable> compile(const Genome& genome);

Execution run_program(const TreeGenome& genome, std::string_view input,
                      const Limits& limits = {});
Execution run_listing(const LinearGenome& genome, std::string_view input,
                      const Limits& limits = {});

/// Visit counts summed over every case of `suite`.
CoverageMap coverage_of(const Genome& genome, const TestSuite& suite,
                        const Limits& limits = {});

/// Translates a program into an equivalent stack-machine listing. Labels and
/// section markers are emitted as protected `.` directives.
LinearGenome lower_to_linear(const TreeGenome& genome);

}  // namespace mutrb

#endif  // MUTRB_MINILANG_HPP_
