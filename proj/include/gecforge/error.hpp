#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gecforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownTag : public Error {
 public:
  explicit UnknownTag(const std::string& code) : Error("unknown error tag: '" + code + "'") {}
};

class MalformedMask : public Error {
 public:
  using Error::Error;
};

class MalformedInput : public Error {
 public:
  using Error::Error;
};

// Carries the byte offset into the offending line.
class MalformedLine : public Error {
 public:
  MalformedLine(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class InvalidPlan : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class BadGrid : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& what, std::string path) : Error(what + ": " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class AdapterError : public Error {
 public:
  using Error::Error;
};

class AdapterTimeout : public AdapterError {
 public:
  using AdapterError::AdapterError;
};

class AdapterProtocolError : public AdapterError {
 public:
  using AdapterError::AdapterError;
};

}  // namespace gecforge
