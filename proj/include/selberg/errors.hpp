#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selberg {

/// Failure categories shared by every module. The CLI maps them onto exit
/// codes (usage 2, precision/quality 3, internal 4).
enum class ErrorKind {
  domain,      // argument outside the operation's mathematical domain
  empty,       // empty index set (e.g. sieve bound < 2, empty measure)
  capacity,    // request exceeds the memory budget
  divergent,   // series does not converge for the argument
  order,       // interval endpoints out of order
  range,       // floating-point overflow in the result
  pole,        // evaluation at a pole
  precision,   // tolerance unreachable at the configured truncation
  accuracy,    // quadrature domain too small for the requested accuracy
  branch,      // logarithm branch could not be tracked
  quality,     // result produced but fails its quality gate
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace selberg
