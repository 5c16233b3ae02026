#pragma once

#include <stdexcept>
#include <string>

namespace gleasonkit {

/// Library error carrying a stable machine-readable code (e.g. "bad-dims").
class Error : public std::runtime_error {
 public:
  explicit Error(std::string code, const std::string& detail = {})
      : std::runtime_error(detail.empty() ? code : code + ": " + detail),
        code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace gleasonkit
