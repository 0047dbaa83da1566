#ifndef SKETCHPLAN_UTIL_ERROR_H
#define SKETCHPLAN_UTIL_ERROR_H

#include <stdexcept>
#include <string>

namespace sketchplan::util {

/* Syntax or validation failure in an input file; carries line/column when known. */
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &message, int line = -1, int column = -1)
        : std::runtime_error(format(message, line, column)),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string &message, int line, int column) {
        if (line < 0)
            return message;
        return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    }

    int line_;
    int column_;
};

/* A configured atom/action/node budget was exceeded; names the budget. */
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* Misuse of the library API or ill-typed expression construction. */
class TypeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sketchplan::util

#endif
