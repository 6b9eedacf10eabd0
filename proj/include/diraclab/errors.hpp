#ifndef DIRACLAB_ERRORS_HPP
#define DIRACLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace diraclab {

// Thrown when a trace-type operation is requested at a time t for which the
// reported truncation bound exceeds the caller's tolerance.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by document loaders; `path` is the JSON field path of the offending
// entry (e.g. "modes[3][0]").
struct ParseError : std::runtime_error {
    std::string path;
    ParseError(const std::string& field_path, const std::string& msg)
        : std::runtime_error(field_path + ": " + msg), path(field_path) {}
};

}  // namespace diraclab

#endif
