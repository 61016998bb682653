#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gabkron {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different extension fields.
class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("operands belong to different GF(2^m) contexts") {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("inverse of zero field element") {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(std::size_t achieved_rank)
      : Error("singular matrix (rank " + std::to_string(achieved_rank) + ")"),
        rank_(achieved_rank) {}

  std::size_t achieved_rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

/// An input (or a result that must be structured by construction) does not
/// have the required circulant layout.
class StructureViolation : public Error {
 public:
  using Error::Error;
};

class ParamViolation : public Error {
 public:
  explicit ParamViolation(std::vector<std::string> violated)
      : Error(join(violated)), violated_(std::move(violated)) {}

  const std::vector<std::string>& violated() const noexcept { return violated_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "parameter constraints violated:";
    for (const auto& s : v) out += " [" + s + "]";
    return out;
  }

  std::vector<std::string> violated_;
};

/// A randomized construction exhausted its retry budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

class DecryptFailure : public Error {
 public:
  DecryptFailure(std::string what, std::vector<std::size_t> failed_blocks)
      : Error(std::move(what)), failed_blocks_(std::move(failed_blocks)) {}

  const std::vector<std::size_t>& failed_blocks() const noexcept { return failed_blocks_; }

 private:
  std::vector<std::size_t> failed_blocks_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace gabkron
