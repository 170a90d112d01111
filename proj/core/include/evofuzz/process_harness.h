// Copyright 2026 The Evofuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVOFUZZ_PROCESS_HARNESS_H_
#define EVOFUZZ_PROCESS_HARNESS_H_

#include <sys/types.h>

#include <chrono>
#include <iosfwd>
#include <string>

#include "evofuzz/harness.h"

namespace evofuzz {

inline constexpr std::chrono::milliseconds kDefaultResponseTimeout{5000};

// Drives an external target over the newline-delimited JSON protocol on its
// standard streams. The target is started lazily with `/bin/sh -c command`
// and restarted after it dies or stops answering; both count as kCrash.
class ProcessHarness : public Harness {
 public:
  ProcessHarness(ServiceDescriptor descriptor, std::string command,
                 std::chrono::milliseconds timeout = kDefaultResponseTimeout);
  ~ProcessHarness() override;

  ProcessHarness(const ProcessHarness&) = delete;
  ProcessHarness& operator=(const ProcessHarness&) = delete;

  const ServiceDescriptor& descriptor() const override { return descriptor_; }
  ExecutionResult Execute(const Call& call, bool collect_coverage) override;

  int restarts() const { return restarts_; }

 private:
  void Start();
  void Stop();
  // Reads one line before the deadline; false on EOF or timeout.
  bool ReadLine(std::string& line, bool& timed_out);

  ServiceDescriptor descriptor_;
  std::string command_;
  std::chrono::milliseconds timeout_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  int restarts_ = -1;
};

// Answers protocol requests from `in` on `out` until EOF. Malformed requests
// get a crash response whose log explains the problem.
void ServeWireProtocol(std::istream& in, std::ostream& out, Harness& harness);

}  // namespace evofuzz

#endif  // EVOFUZZ_PROCESS_HARNESS_H_
