#ifndef TEXWEAVE_ERRORS_HPP
#define TEXWEAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace texweave {

// File could not be read or written.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// File exists but is not a format this library handles.
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// Argument errors are reported as std::invalid_argument.

} // namespace texweave

#endif
