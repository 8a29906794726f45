#include "netwit/postselect.hpp"

#include <algorithm>
#include <cstdio>

#include "ring_common.hpp"

namespace netwit {

SdpProblem build_postselected(const Vector& target, double p) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::domain_error("postselection probability must be in (0, 1]");
  if (target.size() != 8)
    throw std::invalid_argument("target must live on three qubits");
  if (std::abs(target.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("target vector must be normalized");
  ring::BuildSpec spec;
  spec.mode = ring::MargMode::postselected;
  spec.target = target;
  spec.postselect_p = p;
  return ring::build(spec);
}

namespace {

constexpr double kEpsOne = 1e-4;  // "optimum reaches 1" threshold

PostselectionSample solve_point(const Vector& target, double p,
                                SolverBackend& backend, int verbosity) {
  PostselectionSample s;
  s.p = p;
  SolveOptions opts;
  opts.gap_tol = 1e-6;
  auto sol = backend.solve(build_postselected(target, p), opts);
  s.status = sol.status;
  s.max_fidelity = sol.objective;
  if (verbosity > 0)
    std::fprintf(stderr, "[postselect] p=%.5f fidelity=%.6f (%s)\n", p,
                 s.max_fidelity, to_string(s.status).c_str());
  return s;
}

bool usable(const PostselectionSample& s) {
  return s.status == SolveStatus::optimal ||
         s.status == SolveStatus::near_optimal;
}

}  // namespace

PostselectionScan critical_probability(const Vector& target, double tol_p,
                                       SolverBackend& backend,
                                       const std::string& target_name,
                                       int verbosity) {
  if (tol_p < 1e-3)
    throw std::domain_error("tol_p below the supported resolution (1e-3)");
  PostselectionScan scan;
  scan.target = target_name;
  scan.tol_p = tol_p;

  auto finish = [&scan] {
    std::sort(scan.samples.begin(), scan.samples.end(),
              [](const auto& a, const auto& b) { return a.p < b.p; });
    return scan;
  };

  auto probe = [&](double p) {
    auto s = solve_point(target, p, backend, verbosity);
    scan.samples.push_back(s);
    return s;
  };

  auto hi_s = probe(1.0);
  if (!usable(hi_s)) return finish();
  if (hi_s.max_fidelity >= 1.0 - kEpsOne) {
    // Even without postselection the relaxation reaches fidelity 1; no
    // critical probability exists for this target.
    return finish();
  }

  double lo = 0.3, hi = 1.0;
  auto lo_s = probe(lo);
  if (!usable(lo_s)) return finish();
  while (lo_s.max_fidelity < 1.0 - kEpsOne) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-3) {
      scan.p_critical = hi;
      return finish();
    }
    lo_s = probe(lo);
    if (!usable(lo_s)) return finish();
  }

  while (hi - lo > tol_p) {
    const double mid = 0.5 * (lo + hi);
    auto s = probe(mid);
    if (!usable(s)) return finish();
    if (s.max_fidelity < 1.0 - kEpsOne)
      hi = mid;
    else
      lo = mid;
  }
  scan.p_critical = hi;
  return finish();
}

}  // namespace netwit
