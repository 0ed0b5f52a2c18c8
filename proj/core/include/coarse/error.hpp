#pragma once

#include <stdexcept>
#include <string>

namespace coarse {

/// Library error with a stable machine-readable code (surfaced by the CLI as
/// {"error": code, "detail": what()}).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace coarse
