#pragma once

#include <stdexcept>
#include <string>

namespace matteforge {

/// Broad failure categories. The CLI maps these onto process exit codes.
enum class ErrorCategory {
  Config,     // invalid parameters, shapes or configurations
  Io,         // filesystem, decode and encode failures
  Integrity,  // references to unknown ids, corrupt manifests
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

// Raster dimensions disagree or are degenerate.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

// A parameter is out of range or violates an ordering constraint.
class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

// Pool too small for the requested composition style.
class PoolError : public Error {
 public:
  explicit PoolError(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::Io, what) {}
};

// Unknown ids, dangling references, unparseable manifests.
class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& what) : Error(ErrorCategory::Integrity, what) {}
};

}  // namespace matteforge
