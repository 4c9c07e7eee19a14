#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fairbc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingAttribute : public Error {
 public:
  MissingAttribute(std::uint64_t id, bool upper)
      : Error("missing attribute for " + std::string(upper ? "upper" : "lower") +
              " vertex " + std::to_string(id)),
        id_(id),
        upper_(upper) {}

  std::uint64_t id() const noexcept { return id_; }
  bool upper() const noexcept { return upper_; }

 private:
  std::uint64_t id_;
  bool upper_;
};

class EmptyGraph : public Error {
 public:
  EmptyGraph() : Error("edge list is empty") {}
};

class EmptySet : public Error {
 public:
  EmptySet() : Error("vertex set is empty") {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string content)
      : Error("parse error at line " + std::to_string(line) + ": '" + content + "'"),
        line_(line),
        content_(std::move(content)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& content() const noexcept { return content_; }

 private:
  std::size_t line_;
  std::string content_;
};

class InstanceTooLarge : public Error {
 public:
  InstanceTooLarge(std::size_t size, std::size_t limit)
      : Error("instance of size " + std::to_string(size) + " exceeds brute-force limit " +
              std::to_string(limit)) {}
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

}  // namespace fairbc
