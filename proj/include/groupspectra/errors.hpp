#pragma once

#include <stdexcept>
#include <string>

namespace gs {

/// A documented inequality on the inputs does not hold.
class precondition_error : public std::domain_error {
 public:
  explicit precondition_error(const std::string& what) : std::domain_error(what) {}
};

/// An enumeration or allocation would exceed the configured cap.
class resource_error : public std::length_error {
 public:
  explicit resource_error(const std::string& what) : std::length_error(what) {}
};

/// A numerical quantity that must be (close to) an integer or converge did not.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gs
