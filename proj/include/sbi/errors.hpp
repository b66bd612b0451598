#pragma once

#include <stdexcept>
#include <string>

namespace sbi {

// Error categories mirror the C API status codes and the CLI exit codes.
enum class ErrorKind {
  usage = 1,
  data = 2,
  numerical = 3,
  invalid_argument = 4,
  undefined_phase = 5,
  internal = 6,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class DataError : public Error {
public:
  explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

class InvalidArgument : public Error {
public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

class UndefinedPhase : public Error {
public:
  explicit UndefinedPhase(const std::string& what) : Error(ErrorKind::undefined_phase, what) {}
};

class InternalError : public Error {
public:
  explicit InternalError(const std::string& what) : Error(ErrorKind::internal, what) {}
};

} // namespace sbi
