#pragma once

#include <cstdio>
#include <string>
#include <sys/wait.h>

// Runs a shell command, capturing stdout and the exit code.
struct CommandCapture {
  int exit_code = -1;
  std::string output;
};

inline CommandCapture capture_command(const std::string& command) {
  CommandCapture result;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
    result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}
