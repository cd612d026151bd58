#pragma once

#include <stdexcept>
#include <string>

namespace difflab {

// Error categories mirrored by the C API status codes.
enum class errc {
  invalid_argument,
  precondition,
  numeric,
  io,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace difflab
