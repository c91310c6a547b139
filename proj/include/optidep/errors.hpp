#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace optidep {

/// Malformed version or range text. `offset` points at the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::string token, std::size_t offset)
      : std::runtime_error(what), token_(std::move(token)), offset_(offset) {}

  const std::string& token() const noexcept { return token_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string token_;
  std::size_t offset_;
};

/// Schema violation in a registry, manifest, advisory or lockfile document.
/// `path` is a JSON-pointer-like location ("/packages/ms/2.1.0").
class LoadError : public std::runtime_error {
 public:
  LoadError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what),
        path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The brute-force oracle refuses inputs whose assignment space exceeds its bound.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace optidep
