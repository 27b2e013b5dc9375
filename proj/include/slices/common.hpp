#pragma once

#include <stdexcept>
#include <string>

namespace slices {

// Exit-code contract: 0 success, 2 validation, 3 resource cap,
// 4 algorithm failure (section repair contract breach).

struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct algorithm_failure : std::runtime_error {
  explicit algorithm_failure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace slices
