#pragma once

#include <stdexcept>
#include <string>

namespace dptk {

// Invalid input or violated precondition. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dptk
