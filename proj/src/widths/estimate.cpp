#include "widths/estimate.hpp"

namespace sw {

std::string to_string(WidthKind k) { return k == WidthKind::Gelfand ? "gelfand" : "kolmogorov"; }

std::string to_string(Direction d) {
  switch (d) {
    case Direction::CertifiedLower: return "certified-lower";
    case Direction::HeuristicUpper: return "heuristic-upper";
    case Direction::Heuristic: return "heuristic";
  }
  return "heuristic";
}

}  // namespace sw
