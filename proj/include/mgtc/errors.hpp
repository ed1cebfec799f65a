#pragma once

#include <stdexcept>
#include <string>

namespace mgtc {

/// Thrown when an exhaustive enumeration would exceed its configured bound.
class LimitError : public std::runtime_error {
 public:
  explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mgtc
