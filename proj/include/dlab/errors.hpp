#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

// Domain violations use std::domain_error, index overruns std::out_of_range.
// The two below cover the remaining failure classes.

/// A computation would exceed its enumeration budget.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical result cannot meet its stated accuracy with the given inputs.
class accuracy_error : public std::runtime_error {
 public:
  explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dlab
