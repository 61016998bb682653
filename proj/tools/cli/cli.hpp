#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gabkron/random.hpp"

namespace gabkron::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParamViolation = 2,
  kDecodeFailure = 3,
  kIoError = 4,
  kAuditMismatch = 5,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64 hex characters -> 32 bytes; nullopt on malformed input.
std::optional<Bytes> parse_seed(const std::string& hex);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Bytes& data);

}  // namespace gabkron::cli
