#pragma once

#include <stdexcept>
#include <string>

namespace twistkit {

/// An enumeration or closure would exceed its configured element cap.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix could not be written in Bruhat normal form (it is not in the group).
class DecompositionError : public std::runtime_error {
public:
    explicit DecompositionError(const std::string& what) : std::runtime_error(what) {}
};

/// A structural check that should hold by construction failed.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twistkit
