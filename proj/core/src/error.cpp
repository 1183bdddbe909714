#include "robust_spanner/error.hpp"

namespace robust_spanner {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::DuplicateCoordinate: return "DuplicateCoordinate";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::InvalidEpsilon: return "InvalidEpsilon";
    case Errc::LayerOutOfRange: return "LayerOutOfRange";
    case Errc::SchemeMismatch: return "SchemeMismatch";
    case Errc::OverlappingHalves: return "OverlappingHalves";
    case Errc::VertexRemoved: return "VertexRemoved";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace robust_spanner
