#pragma once

#include <stdexcept>
#include <string>

namespace robust_spanner {

enum class Errc {
  EmptyInput,
  DuplicateCoordinate,
  IndexOutOfRange,
  InvalidEpsilon,
  LayerOutOfRange,
  SchemeMismatch,
  OverlappingHalves,
  VertexRemoved,
  TooLarge,
  InvalidArgument,
  ParseError,
  Io,
};

const char* to_string(Errc code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace robust_spanner
