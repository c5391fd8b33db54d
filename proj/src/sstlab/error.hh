#ifndef SSTLAB_ERROR_HH
#define SSTLAB_ERROR_HH

#include <stdexcept>
#include <string>

namespace sstlab {

enum class ErrorKind {
    InvalidArgument,  ///< malformed input word, index out of range, bad parameters
    Precondition,     ///< operation precondition does not hold
    Parse,            ///< text could not be parsed
    Budget,           ///< resource budget exhausted
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace sstlab

#endif
