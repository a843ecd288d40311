#pragma once

#include <stdexcept>
#include <string>

namespace qpi {

enum class ErrorCategory { parse, domain, resource, consistency };

/// Base for every error raised by the library. The category maps onto the
/// CLI exit-code taxonomy (2 parse, 3 domain, 4 resource, 5 consistency).
class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

  int exit_code() const noexcept {
    switch (category_) {
    case ErrorCategory::parse: return 2;
    case ErrorCategory::domain: return 3;
    case ErrorCategory::resource: return 4;
    case ErrorCategory::consistency: return 5;
    }
    return 5;
  }

  const char* category_name() const noexcept {
    switch (category_) {
    case ErrorCategory::parse: return "ParseError";
    case ErrorCategory::domain: return "DomainError";
    case ErrorCategory::resource: return "ResourceError";
    case ErrorCategory::consistency: return "ConsistencyError";
    }
    return "Error";
  }

private:
  ErrorCategory category_;
};

class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(ErrorCategory::parse, what) {}
};

class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(ErrorCategory::domain, what) {}
};

class ResourceError : public Error {
public:
  explicit ResourceError(const std::string& what) : Error(ErrorCategory::resource, what) {}
};

/// An internal cross-check disagreed. Always a bug.
class ConsistencyError : public Error {
public:
  explicit ConsistencyError(const std::string& what)
      : Error(ErrorCategory::consistency, what) {}
};

} // namespace qpi
