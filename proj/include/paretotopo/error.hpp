#pragma once

#include <stdexcept>
#include <string>

namespace paretotopo {

enum class Errc {
  invalid_argument = 1,
  io = 2,
  parse = 3,
  row_mismatch = 4,
  guard_exceeded = 5,
  numerical = 6,
  insufficient_sample = 7,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

} // namespace paretotopo
