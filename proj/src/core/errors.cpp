#include "core/errors.hpp"

namespace cfm {

const char* errc_message(errc code) noexcept {
  switch (code) {
    case errc::ok: return "ok";
    case errc::invalid: return "invalid argument";
    case errc::range: return "input exceeds supported width";
    case errc::memory: return "allocation guard exceeded";
    case errc::overflow: return "integer overflow in checked arithmetic";
    case errc::buffer: return "output buffer too small";
    case errc::internal: return "internal invariant violated";
  }
  return "unknown error";
}

}  // namespace cfm
