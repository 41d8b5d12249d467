#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsk {

/** Broad error families; the CLI maps them to exit codes. */
enum class ErrorFamily { User, Guard, Internal };

/** Base class for all engine errors. `kind` is a short machine-readable tag. */
class Error : public std::runtime_error {
public:
    Error(ErrorFamily family, std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), family_(family), kind_(std::move(kind)) {}

    ErrorFamily family() const { return family_; }
    const std::string& kind() const { return kind_; }

private:
    ErrorFamily family_;
    std::string kind_;
};

/** Invalid input supplied by a caller (bad index, size mismatch, malformed word...). */
class UserError : public Error {
public:
    UserError(std::string kind, const std::string& message)
        : Error(ErrorFamily::User, std::move(kind), message) {}
};

/** A configured resource guard tripped (term explosion, q index bound). */
class GuardError : public Error {
public:
    GuardError(std::string kind, const std::string& message)
        : Error(ErrorFamily::Guard, std::move(kind), message) {}
};

/** An internal consistency assertion failed. */
class InternalError : public Error {
public:
    explicit InternalError(const std::string& message)
        : Error(ErrorFamily::Internal, "InternalError", message) {}
};

/** Syntax error carrying the byte offset where parsing failed. */
class ParseError : public UserError {
public:
    ParseError(std::size_t offset, const std::string& message)
        : UserError("SyntaxError", "at byte " + std::to_string(offset) + ": " + message),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

#define TSK_ASSERT(cond, msg)                                   \
    do {                                                        \
        if (!(cond)) throw ::tsk::InternalError(std::string(msg)); \
    } while (0)

}  // namespace tsk
