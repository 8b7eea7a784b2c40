#pragma once

// popen-based process runner for tests that drive the cli binary.

#include <sys/wait.h>

#include <cstdio>
#include <string>

namespace kpart::testsupport {

struct CmdResult {
  int code = -1;
  std::string out;
};

inline CmdResult run_process(const std::string& cmd) {
  CmdResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  int status = pclose(pipe);
  if (WIFEXITED(status)) result.code = WEXITSTATUS(status);
  return result;
}

}  // namespace kpart::testsupport
