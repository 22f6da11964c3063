#pragma once

#include <stdexcept>
#include <string>

namespace fairassign {

// Invalid user input: malformed files, inconsistent preference lists,
// out-of-range arguments. Maps to exit code 2 in the CLI.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A cross-check that must hold by construction failed, e.g. the two
// sd-efficiency certificates disagree or a solver returned an infeasible
// point. Maps to exit code 3 in the CLI.
class InternalCheckError : public std::runtime_error {
 public:
  explicit InternalCheckError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace fairassign
