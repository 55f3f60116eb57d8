#pragma once

#include <stdexcept>
#include <string>

namespace srrham {

/// Invalid input or a violated precondition. Maps to CLI exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A pivot, search or event ceiling was hit. Maps to CLI exit code 3.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace srrham
