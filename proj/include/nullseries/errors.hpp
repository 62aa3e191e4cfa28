#pragma once

#include <stdexcept>
#include <string>

namespace nullseries {

// Floating point trouble: residuals, failed convergence, lost floors.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degree cap or similar budget exceeded. `detail` is a JSON object string.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::string detail = "{}")
      : std::runtime_error(what), detail_(std::move(detail)) {}
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
};

class AliasingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CertificateFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nullseries
