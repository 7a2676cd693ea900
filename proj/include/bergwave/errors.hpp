#ifndef BERGWAVE_ERRORS_HPP
#define BERGWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bergwave {

// Error categories map onto CLI exit codes: validation -> 2,
// numerical -> 3, io -> 4.
enum class ErrorKind { validation, numerical, io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& msg)
      : Error(ErrorKind::validation, msg) {}
};

struct NumericalError : Error {
  explicit NumericalError(const std::string& msg)
      : Error(ErrorKind::numerical, msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(ErrorKind::io, msg) {}
};

// -- validation ------------------------------------------------------------

struct InvalidBase : ValidationError {
  explicit InvalidBase(const std::string& msg) : ValidationError(msg) {}
};

struct InvalidSchedule : ValidationError {
  explicit InvalidSchedule(const std::string& msg) : ValidationError(msg) {}
};

struct PreconditionViolated : ValidationError {
  explicit PreconditionViolated(const std::string& msg)
      : ValidationError(msg) {}
};

struct ZeroFunction : ValidationError {
  explicit ZeroFunction(const std::string& msg) : ValidationError(msg) {}
};

struct DuplicateNode : ValidationError {
  explicit DuplicateNode(const std::string& msg) : ValidationError(msg) {}
};

struct LengthMismatch : ValidationError {
  explicit LengthMismatch(const std::string& msg) : ValidationError(msg) {}
};

struct LevelOutOfRange : ValidationError {
  explicit LevelOutOfRange(const std::string& msg) : ValidationError(msg) {}
};

struct IndexOutOfRange : ValidationError {
  explicit IndexOutOfRange(const std::string& msg) : ValidationError(msg) {}
};

struct InsufficientDepth : ValidationError {
  explicit InsufficientDepth(const std::string& msg) : ValidationError(msg) {}
};

// -- numerical -------------------------------------------------------------

struct PoleAtInput : NumericalError {
  explicit PoleAtInput(const std::string& msg) : NumericalError(msg) {}
};

struct NearSingular : NumericalError {
  explicit NearSingular(const std::string& msg) : NumericalError(msg) {}
};

struct DegeneratePivot : NumericalError {
  explicit DegeneratePivot(const std::string& msg) : NumericalError(msg) {}
};

struct SingularTriangle : NumericalError {
  explicit SingularTriangle(const std::string& msg) : NumericalError(msg) {}
};

// -- io --------------------------------------------------------------------

struct ParseError : IoError {
  explicit ParseError(const std::string& msg) : IoError(msg) {}
};

}  // namespace bergwave

#endif  // BERGWAVE_ERRORS_HPP
