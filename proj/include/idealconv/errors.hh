#ifndef IDEALCONV_ERRORS_HH
#define IDEALCONV_ERRORS_HH

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idealconv {

  // Precondition on an argument was violated (limit < 2, q outside range, ...).
  class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
  };

  // Argument is valid in general but exceeds what this object supports
  // (e.g. factorizing n above the sieve limit).
  class OutOfRange : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
  };

  // Allocation for a table failed. Carries the requested size.
  class ResourceError : public std::runtime_error {
  public:
    ResourceError(const std::string& what, std::size_t requested_bytes)
      : std::runtime_error(what), requested_bytes_(requested_bytes) {}
    std::size_t requested_bytes() const noexcept { return requested_bytes_; }
  private:
    std::size_t requested_bytes_;
  };

  // A set stream ended (or hit its representable range) before the
  // requested number of terms was produced.
  class InsufficientData : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
  };

  // Malformed external input, e.g. a set file that is not strictly increasing.
  class DataError : public std::runtime_error {
  public:
    DataError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }
  private:
    std::size_t line_;
  };

} // namespace idealconv

#endif // IDEALCONV_ERRORS_HH
