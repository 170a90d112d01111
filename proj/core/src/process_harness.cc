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

#include "evofuzz/process_harness.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <istream>
#include <ostream>

#include "evofuzz/codec.h"
#include "evofuzz/errors.h"

namespace evofuzz {

using nlohmann::json;

ProcessHarness::ProcessHarness(ServiceDescriptor descriptor,
                               std::string command,
                               std::chrono::milliseconds timeout)
    : descriptor_(std::move(descriptor)),
      command_(std::move(command)),
      timeout_(timeout) {
  ValidateDescriptor(descriptor_);
  // A target dying mid-request must not take the fuzzer down with it.
  signal(SIGPIPE, SIG_IGN);
}

ProcessHarness::~ProcessHarness() { Stop(); }

void ProcessHarness::Start() {
  int in_pipe[2], out_pipe[2];
  if (pipe2(in_pipe, O_CLOEXEC) != 0) {
    throw IoError(std::string("pipe: ") + std::strerror(errno));
  }
  if (pipe2(out_pipe, O_CLOEXEC) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw IoError(std::string("pipe: ") + std::strerror(errno));
  }
  pid_t pid = fork();
  if (pid < 0) throw IoError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  buffer_.clear();
  ++restarts_;
}

void ProcessHarness::Stop() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
  }
  pid_ = -1;
}

bool ProcessHarness::ReadLine(std::string& line, bool& timed_out) {
  timed_out = false;
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  for (;;) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return true;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      return false;
    }
    pollfd pfd{from_child_, POLLIN, 0};
    int rc = poll(&pfd, 1, static_cast<int>(left.count()));
    if (rc < 0 && errno == EINTR) continue;
    if (rc == 0) {
      timed_out = true;
      return false;
    }
    if (rc < 0) return false;
    char chunk[4096];
    ssize_t n = read(from_child_, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

ExecutionResult ProcessHarness::Execute(const Call& call,
                                        bool collect_coverage) {
  const MethodSignature* sig = descriptor_.FindMethod(call.method);
  if (sig == nullptr) {
    throw ContractViolation("call to unknown method " +
                            std::to_string(call.method));
  }
  if (pid_ < 0) Start();

  ExecutionResult result;
  auto fail = [&](std::string why) {
    Stop();
    result = ExecutionResult{};
    result.outcome = Outcome::kCrash;
    result.log = std::move(why);
    return result;
  };

  const std::string request = EncodeRequest(*sig, call.inputs).dump() + "\n";
  for (size_t sent = 0; sent < request.size();) {
    ssize_t n = write(to_child_, request.data() + sent, request.size() - sent);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return fail("target closed its input");
    sent += static_cast<size_t>(n);
  }

  std::string line;
  bool timed_out = false;
  if (!ReadLine(line, timed_out)) {
    return fail(timed_out ? "target did not respond within " +
                                std::to_string(timeout_.count()) + " ms"
                          : "target exited");
  }
  try {
    result = DecodeResponse(json::parse(line));
  } catch (const std::exception& e) {
    return fail(std::string("malformed response: ") + e.what());
  }
  if (!collect_coverage) {
    result.blocks.clear();
    result.branches.clear();
  }
  return result;
}

void ServeWireProtocol(std::istream& in, std::ostream& out, Harness& harness) {
  const ServiceDescriptor& service = harness.descriptor();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ExecutionResult result;
    try {
      WireRequest req = DecodeRequest(json::parse(line));
      const MethodSignature* sig = nullptr;
      for (const auto& m : service.methods) {
        if (m.name == req.method) sig = &m;
      }
      if (sig == nullptr) throw ValidationError("unknown method " + req.method);
      Individual probe{0, sig->id, std::move(req.args)};
      if (!ValidateIndividual(probe, *sig)) {
        throw ValidationError("arguments do not match " + sig->name);
      }
      result = harness.Execute({sig->id, std::move(probe.inputs)}, true);
    } catch (const std::exception& e) {
      result = ExecutionResult{};
      result.outcome = Outcome::kCrash;
      result.log = std::string("bad request: ") + e.what();
    }
    out << EncodeResponse(result).dump() << '\n' << std::flush;
  }
}

}  // namespace evofuzz
