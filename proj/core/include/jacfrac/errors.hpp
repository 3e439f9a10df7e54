#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace jacfrac {

// Invalid mathematical input: out-of-domain arguments, violated preconditions,
// gamma poles, bad indices, basis mismatches.  CLI maps this to exit code 3.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed user input: unparsable files, bad CLI values.  Exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation that started out valid failed to converge or lost all
// accuracy.  Exit code 4.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-fatal diagnostics.  Library code never writes to stderr directly;
// callers that care (the CLI, tests) pass a sink.  A warning must never
// change a numeric result.
using WarningSink = std::function<void(const std::string&)>;

inline void warn(const WarningSink& sink, const std::string& msg) {
  if (sink) sink(msg);
}

}  // namespace jacfrac
