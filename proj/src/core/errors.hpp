#pragma once

#include <stdexcept>
#include <string>

namespace cfm {

enum class errc {
  ok = 0,
  invalid = 1,    // argument outside the documented domain
  range = 2,      // input exceeds the supported width
  memory = 3,     // allocation guard tripped before allocating
  overflow = 4,   // checked integer arithmetic would wrap
  buffer = 5,     // caller-supplied buffer too small
  internal = 6,   // broken invariant; indicates a bug here, not bad input
};

const char* errc_message(errc code) noexcept;

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace cfm
