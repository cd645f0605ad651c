#include "stagecert/error.hpp"

namespace stagecert {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Unavailable: return "unavailable";
    case ErrorKind::Range: return "range";
    case ErrorKind::Integrity: return "integrity";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Geometry: return "geometry";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

}  // namespace stagecert
