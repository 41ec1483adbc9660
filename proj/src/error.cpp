#include "crshare/error.hpp"

namespace crshare {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::no_root: return "no-root";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::divergent_inverse_moment: return "divergent-inverse-moment";
    case ErrorKind::config_error: return "config-error";
  }
  return "unknown";
}

}  // namespace crshare
