#pragma once

#include <stdexcept>
#include <string>

namespace tfree {

// Raised for malformed user input: invalid UTF-8, bad config values,
// unreadable files, shape mismatches. The CLI maps this to exit code 1;
// anything else escaping a command is an internal error (exit code 2).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tfree
