#pragma once

#include <stdexcept>
#include <string>

namespace mesofluct {

enum class ErrorKind {
  Parameter,
  Dimension,
  Numeric,
  Contract,
  Degenerate,
  Positivity,
  SpanStability,
  Bracket,
  Input,
  PipelineDefect,
};

const char* error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mesofluct
