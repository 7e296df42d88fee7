#pragma once

#include <stdexcept>
#include <string>

namespace vclass {

/// Parse failure carrying the offending 1-based line number (0 when the
/// problem is file-wide rather than line-local).
class CsvParseError : public std::runtime_error {
  public:
    CsvParseError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const { return line_; }

  private:
    int line_ = 0;
};

} // namespace vclass
