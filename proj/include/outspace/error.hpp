#pragma once

#include <stdexcept>
#include <string>

namespace outspace {

enum class ErrorKind {
  precondition,  // bad input; cli exit code 2
  invariant,     // an audit caught a violated identity; exit code 3
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(ErrorKind::precondition, msg); }
[[noreturn]] inline void violated(const std::string& msg) { throw Error(ErrorKind::invariant, msg); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

}  // namespace outspace
