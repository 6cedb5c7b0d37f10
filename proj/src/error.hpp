#pragma once

#include <stdexcept>
#include <string>

namespace bsdgeo {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  Boundary,          // evaluation left the domain (generic norm <= 0, pole, ...)
  DegenerateMetric,  // non-positive-definite or singular hermitian form
  Sampling,          // rejection cap exceeded
  InconsistentEmbedding,
  Config,
  Io,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace bsdgeo
