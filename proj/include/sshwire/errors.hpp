#ifndef SSHWIRE_ERRORS_HPP
#define SSHWIRE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sshwire {

// Configuration / input errors map to exit code 2, numerical failures to 3.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what)
      : std::runtime_error(what) {}
};

struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sshwire

#endif
