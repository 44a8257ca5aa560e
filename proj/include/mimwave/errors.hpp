#pragma once

#include <stdexcept>
#include <string>

namespace mimwave {

// Malformed mathematical input: inadmissible word, invalid matrix, bad measure data.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested computation needs deeper cylinder data than the measure provides.
struct depth_error : std::runtime_error {
  explicit depth_error(const std::string& what) : std::runtime_error(what) {}
};

// Unusable run configuration (CLI flags, file contents).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mimwave
