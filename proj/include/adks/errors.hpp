#pragma once

#include <stdexcept>
#include <string>

namespace adks {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad or unsupported file contents, lossy containers, unwritable paths.
class FormatError : public Error {
public:
  using Error::Error;
};

// Dimension problems: non-windowable images, key/stego mismatches.
class GeometryError : public Error {
public:
  using Error::Error;
};

// Payload does not fit the available coefficient slots.
class CapacityError : public Error {
public:
  using Error::Error;
};

// Key file damage: bad magic, truncation, invariant violations.
class KeyError : public Error {
public:
  using Error::Error;
};

// Invalid flags or parameter values.
class UsageError : public Error {
public:
  using Error::Error;
};

} // namespace adks
