#pragma once

#include "tpsp/common.hpp"

#include <array>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <sys/wait.h>

namespace support {

/// Code of the tpsp::Error thrown by f, or nullopt if it returned normally.
inline std::optional<tpsp::Errc> error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const tpsp::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

struct Run {
  int exit_code = -1;
  std::string out;  // stdout only; the tool logs to stderr
};

/// Runs the command line tool with the given argument string.
inline Run run_cli(const std::string& args) {
  std::string cmd = std::string(TPSP_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace support
