#pragma once

#include <string_view>

namespace xpz {

enum class StateKind { localized, delocalized, resonance_candidate };

constexpr std::string_view to_string(StateKind k) {
  switch (k) {
    case StateKind::localized: return "localized";
    case StateKind::delocalized: return "delocalized";
    case StateKind::resonance_candidate: return "resonance_candidate";
  }
  return "unknown";
}

// One spectral energy with its classification and the residual of the
// eigencondition that produced it.
struct SpectralLine {
  double energy;
  StateKind kind;
  double residual;
};

}  // namespace xpz
