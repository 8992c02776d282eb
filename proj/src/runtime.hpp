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

// Execution state shared by the tree interpreter and the listing VM: step
// accounting, tracing, input, output and arithmetic.

#ifndef MUTRB_SRC_RUNTIME_HPP_
#define MUTRB_SRC_RUNTIME_HPP_

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "mutrb/minilang.hpp"

namespace mutrb {

namespace detail {
std::unique_ptr<Executable> compile_tree(const TreeGenome& genome);
std::unique_ptr<Executable> compile_listing(const LinearGenome& genome);
}  // namespace detail

namespace runtime {

/// Thrown to unwind the interpreter once the run has ended abnormally.
struct Stop {};

inline std::int64_t wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }
inline std::int64_t neg(std::int64_t v) {
  return wrap(0 - static_cast<std::uint64_t>(v));
}

class State {
 public:
  State(const std::vector<std::int64_t>& input, const Limits& limits,
        std::size_t trace_size)
      : input_(input), limits_(limits) {
    exec_.trace.assign(trace_size, 0);
  }

  void step(std::size_t site) {
    if (exec_.steps >= limits_.max_steps) {
      exec_.status = ExecStatus::StepLimit;
      throw Stop{};
    }
    ++exec_.steps;
    ++exec_.trace[site];
  }

  [[noreturn]] void fail(std::string why) {
    exec_.status = ExecStatus::RuntimeError;
    exec_.error = std::move(why);
    throw Stop{};
  }

  bool at_eof() const { return next_ >= input_.size(); }

  std::int64_t read() {
    if (reads_ >= limits_.max_input_reads) fail("input read limit exceeded");
    ++reads_;
    if (at_eof()) fail("read past end of input");
    return input_[next_++];
  }

  void print(std::int64_t v) {
    std::string token = std::to_string(v);
    token.push_back(' ');
    print_text(token);
  }

  void print_text(const std::string& text) {
    if (exec_.output.size() + text.size() > limits_.max_output) {
      exec_.output.append(text, 0, limits_.max_output - exec_.output.size());
      fail("output limit exceeded");
    }
    exec_.output += text;
  }

  std::int64_t load(const std::vector<std::int64_t>& array, std::int64_t idx) {
    check_index(idx);
    const auto i = static_cast<std::size_t>(idx);
    return i < array.size() ? array[i] : 0;
  }

  void store(std::vector<std::int64_t>& array, std::int64_t idx, std::int64_t v) {
    check_index(idx);
    const auto i = static_cast<std::size_t>(idx);
    if (i >= array.size()) array.resize(i + 1, 0);
    array[i] = v;
  }

  std::int64_t arith(BinaryOp op, std::int64_t a, std::int64_t b) {
    const auto ua = static_cast<std::uint64_t>(a);
    const auto ub = static_cast<std::uint64_t>(b);
    switch (op) {
      case BinaryOp::Add: return wrap(ua + ub);
      case BinaryOp::Sub: return wrap(ua - ub);
      case BinaryOp::Mul: return wrap(ua * ub);
      case BinaryOp::Div:
        if (b == 0) fail("division by zero");
        if (a == std::numeric_limits<std::int64_t>::min() && b == -1) return a;
        return a / b;
      case BinaryOp::Mod:
        if (b == 0) fail("remainder by zero");
        if (b == -1) return 0;
        return a % b;
      case BinaryOp::Lt: return a < b;
      case BinaryOp::Le: return a <= b;
      case BinaryOp::Gt: return a > b;
      case BinaryOp::Ge: return a >= b;
      case BinaryOp::Eq: return a == b;
      case BinaryOp::Ne: return a != b;
      case BinaryOp::And: return a != 0 && b != 0;
      case BinaryOp::Or: return a != 0 || b != 0;
    }
    return 0;
  }

  Execution finish() { return std::move(exec_); }

 private:
  void check_index(std::int64_t idx) {
    if (idx < 0 || idx >= kMaxArrayLength) {
      fail("array index " + std::to_string(idx) + " out of range");
    }
  }

  const std::vector<std::int64_t>& input_;
  Limits limits_;
  std::size_t next_ = 0;
  std::uint64_t reads_ = 0;
  Execution exec_;
};

}  // namespace runtime
}  // namespace mutrb

#endif  // MUTRB_SRC_RUNTIME_HPP_
