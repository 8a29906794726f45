#pragma once

// Shared construction of the ring-inflation SDP. tau lives on the six qubits
// (A1,B1,C1,A2,B2,C2) = slots (0..5), gamma on (A3,B3,C3,A4,B4,C4). The
// hexagon pairings identify gamma marginals with tau marginals:
//   gamma_(A3 B3 A4 B4) = tau_(A1 B1 A2 B2)
//   gamma_(B3 C3 B4 C4) = tau_(B1 C1 B2 C2)
//   gamma_(C3 A4 C4 A3) = tau_(C1 A1 C2 A2)
// and the relaxation adds PPT of tau across the two triangles plus PPT of the
// gamma marginals across (A3B3C3)/B4, (B3C3A4)/C4 and (C3A4B4)/A3.

#include <array>
#include <optional>

#include "netwit/sdp.hpp"

namespace netwit::ring {

struct Layout {
  std::vector<int> dims6;
  EntryMap tau_swap, gamma_swap;  // subsystem swap 123 <-> 456
  EntryMap tau_marg_first, tau_marg_second;       // keep {0,1,2} / {3,4,5}
  EntryMap tau_pt;                                 // transpose on {3,4,5}
  std::array<std::pair<EntryMap, EntryMap>, 3> ring_pairs;  // (gamma, tau)
  std::array<EntryMap, 3> gamma_ppt;  // 16x16 marginal-then-transpose maps

  static const Layout& get();
};

enum class MargMode {
  free_rho,      // explicit rho block tied to the triangle marginal
  fixed,         // triangle marginal pinned to given values
  slack,         // |marginal - given| bounded by a minimized slack
  postselected,  // free marginal, extra reconstructed-state block
};

struct BuildSpec {
  MargMode mode = MargMode::free_rho;
  std::optional<Vector> target;   // objective vector (free_rho, postselected)
  std::optional<Matrix> rho;      // values for fixed / slack modes
  double postselect_p = 1.0;      // postselected mode only
};

SdpProblem build(const BuildSpec& spec);

}  // namespace netwit::ring
