#pragma once

#include <stdexcept>
#include <string>

namespace crshare {

enum class ErrorKind {
  invalid_parameter,
  no_root,
  non_convergence,
  divergent_inverse_moment,
  config_error,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Throws Error(invalid_parameter, message) unless cond holds.
inline void require(bool cond, const std::string& message) {
  if (!cond) throw Error(ErrorKind::invalid_parameter, message);
}

}  // namespace crshare
