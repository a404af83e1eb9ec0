#pragma once
#include <stdexcept>
#include <string>

namespace vort {

// Failure taxonomy. Codes map to process exit codes in the CLI:
// invariant violation -> 2, numerical failure -> 3, bad configuration -> 4.
enum class ErrKind { invariant, numerical, config };

class Error : public std::runtime_error {
public:
  Error(ErrKind k, std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), kind(k), code(std::move(code)) {}
  ErrKind kind;
  std::string code;  // short machine-readable tag, e.g. "support-overflow"
};

inline Error invariant_error(const std::string& code, const std::string& msg) {
  return Error(ErrKind::invariant, code, msg);
}
inline Error numerical_error(const std::string& code, const std::string& msg) {
  return Error(ErrKind::numerical, code, msg);
}
inline Error config_error(const std::string& msg) {
  return Error(ErrKind::config, "config", msg);
}

}  // namespace vort
