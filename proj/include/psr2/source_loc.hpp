#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psr2 {

struct SourceLoc {
    std::string file;
    int line = 1;
    int column = 1;
    std::size_t byte_offset = 0;
    std::size_t length = 0;

    std::size_t end() const { return byte_offset + length; }
};

// Smallest location covering both `first` and `last`.
inline SourceLoc span(const SourceLoc& first, const SourceLoc& last) {
    SourceLoc loc = first;
    if (last.end() > first.byte_offset) loc.length = last.end() - first.byte_offset;
    return loc;
}

inline std::string format_loc(const SourceLoc& loc) {
    return loc.file + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

// Base of every frontend diagnostic. what() yields "file:line:col: error: message".
class FrontendError : public std::runtime_error {
public:
    FrontendError(SourceLoc loc, const std::string& message)
        : std::runtime_error(format_loc(loc) + ": error: " + message),
          loc_(std::move(loc)),
          message_(message) {}

    const SourceLoc& loc() const { return loc_; }
    const std::string& message() const { return message_; }

private:
    SourceLoc loc_;
    std::string message_;
};

class LexError : public FrontendError {
public:
    using FrontendError::FrontendError;
};

class ParseError : public FrontendError {
public:
    ParseError(SourceLoc loc, std::string expected, std::string found)
        : FrontendError(std::move(loc), "expected " + expected + ", found " + found),
          expected_(std::move(expected)),
          found_(std::move(found)) {}

    const std::string& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    std::string expected_;
    std::string found_;
};

class ResolveError : public FrontendError {
public:
    using FrontendError::FrontendError;
};

}  // namespace psr2
