#include "netwit/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>

#include "sdp_internal.hpp"

namespace netwit {

void LinearExpr::add_entry(int block, int r, int c, Complex w) {
  // Contribution Re[w * X_rc]. Fold below-diagonal references onto the
  // canonical upper triangle (X_rc = conj(X_cr)).
  if (r <= c) {
    terms.push_back({block, r, c, w.real(), -w.imag()});
  } else {
    terms.push_back({block, c, r, w.real(), w.imag()});
  }
}

void LinearExpr::add_inner(int block, const Matrix& T, double w) {
  const int n = static_cast<int>(T.rows());
  for (int r = 0; r < n; ++r) {
    if (std::abs(T(r, r)) > 1e-15)
      terms.push_back({block, r, r, w * T(r, r).real(), 0.0});
    for (int c = r + 1; c < n; ++c) {
      const Complex t = T(r, c);
      if (std::abs(t) < 1e-15) continue;
      // tr[T X] collects 2 Re[conj(T_rc) X_rc] from the (r,c)/(c,r) pair.
      terms.push_back({block, r, c, 2.0 * w * t.real(), 2.0 * w * t.imag()});
    }
  }
}

void LinearExpr::add_trace(int block, int side, double w) {
  for (int r = 0; r < side; ++r) terms.push_back({block, r, r, w, 0.0});
}

int SdpProblem::add_block(const std::string& name, int side) {
  if (block_index(name) >= 0)
    throw std::invalid_argument("duplicate block name " + name);
  blocks.push_back({name, side});
  return static_cast<int>(blocks.size()) - 1;
}

int SdpProblem::block_index(const std::string& name) const {
  for (size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].name == name) return static_cast<int>(i);
  return -1;
}

void SdpProblem::add_eq(LinearExpr expr, double rhs) {
  eq_constraints.push_back({std::move(expr.terms), rhs});
}

void SdpProblem::validate() const {
  auto check_terms = [&](const std::vector<LinearTerm>& ts) {
    for (const auto& t : ts) {
      if (t.block < 0 || t.block >= static_cast<int>(blocks.size()))
        throw std::invalid_argument("term references undeclared block");
      const int n = blocks[t.block].side;
      if (t.row < 0 || t.col < 0 || t.row >= n || t.col >= n)
        throw std::invalid_argument("term entry out of range");
    }
  };
  for (const auto& b : blocks)
    if (b.side <= 0) throw std::invalid_argument("nonpositive block side");
  for (const auto& eq : eq_constraints) check_terms(eq.terms);
  check_terms(objective);
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::near_optimal: return "near_optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::numerical_error: return "numerical_error";
  }
  return "unknown";
}

}  // namespace netwit

namespace netwit::internal {

int herm_param_count(int side) { return side * side; }

int herm_param_offset(int side, int r, int c, bool imag) {
  // Row-major over the upper triangle; diagonal entries carry one parameter,
  // off-diagonal entries two (re, im). Entries strictly above the diagonal in
  // rows before r contribute 2 parameters each, diagonals 1.
  const int before = r * (2 * side + 1 - r) - r;  // sum_{k<r} (2(side-k)-1)
  const int within = (c == r) ? 0 : 1 + 2 * (c - r - 1);
  return before + within + (imag ? 1 : 0);
}

namespace {

constexpr double kCoeffEps = 1e-12;

struct CanonRow {
  std::vector<std::pair<int, double>> terms;  // (pid, coeff), pid ascending
  double rhs = 0.0;
  int origin = -1;  // index into problem.eq_constraints
  bool alive = true;
};

// Weighted union-find: x_i = weight_i * x_parent(i) transitively.
struct AliasSets {
  std::vector<int> parent;
  std::vector<double> weight;

  explicit AliasSets(int n) : parent(n), weight(n, 1.0) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }

  std::pair<int, double> find(int i) {
    if (parent[i] == i) return {i, 1.0};
    auto [root, w] = find(parent[i]);
    parent[i] = root;
    weight[i] = weight[i] * w;
    return {root, weight[i]};
  }
};

enum class RootKind { live, fixed, subst };

struct RootState {
  RootKind kind = RootKind::live;
  double fixed_value = 0.0;
  // For subst: affine expression over roots as of substitution time.
  double cst = 0.0;
  std::vector<std::pair<int, double>> lin;
};

}  // namespace

Compiled compile(const SdpProblem& problem) {
  problem.validate();
  Compiled cc;
  cc.sense = problem.sense;

  const int nb = static_cast<int>(problem.blocks.size());
  cc.param_base.resize(nb);
  int total_params = 0;
  for (int b = 0; b < nb; ++b) {
    cc.param_base[b] = total_params;
    total_params += herm_param_count(problem.blocks[b].side);
  }

  auto pid_of = [&](int block, int row, int col, bool imag) {
    return cc.param_base[block] +
           herm_param_offset(problem.blocks[block].side, row, col, imag);
  };

  auto canonicalize = [&](const std::vector<LinearTerm>& ts) {
    std::unordered_map<int, double> acc;
    for (const auto& t : ts) {
      int r = t.row, c = t.col;
      double re = t.re_coeff, im = t.im_coeff;
      if (r > c) {
        std::swap(r, c);
        im = -im;  // Im X_rc = -Im X_cr
      }
      if (re != 0.0) acc[pid_of(t.block, r, c, false)] += re;
      if (r != c && im != 0.0) acc[pid_of(t.block, r, c, true)] += im;
    }
    std::vector<std::pair<int, double>> out;
    out.reserve(acc.size());
    for (const auto& [pid, v] : acc)
      if (std::abs(v) > kCoeffEps) out.emplace_back(pid, v);
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<CanonRow> rows;
  rows.reserve(problem.eq_constraints.size());
  for (size_t i = 0; i < problem.eq_constraints.size(); ++i) {
    CanonRow r;
    r.terms = canonicalize(problem.eq_constraints[i].terms);
    r.rhs = problem.eq_constraints[i].rhs;
    r.origin = static_cast<int>(i);
    rows.push_back(std::move(r));
  }

  AliasSets uf(total_params);
  std::vector<RootState> roots(total_params);

  auto fix_root = [&](int root, double value) {
    auto& st = roots[root];
    if (st.kind == RootKind::fixed) {
      if (std::abs(st.fixed_value - value) > 1e-7) {
        cc.inconsistent = true;
        cc.note = "conflicting fixed values for a variable";
      }
      return;
    }
    st.kind = RootKind::fixed;
    st.fixed_value = value;
  };

  // Rewrite a row over current roots (no substitutions exist in this phase).
  auto rewrite_simple = [&](const CanonRow& row,
                            std::vector<std::pair<int, double>>& out,
                            double& rhs_out) {
    std::unordered_map<int, double> acc;
    rhs_out = row.rhs;
    for (const auto& [pid, coeff] : row.terms) {
      auto [root, w] = uf.find(pid);
      if (roots[root].kind == RootKind::fixed)
        rhs_out -= coeff * w * roots[root].fixed_value;
      else
        acc[root] += coeff * w;
    }
    out.clear();
    for (const auto& [pid, v] : acc)
      if (std::abs(v) > kCoeffEps) out.emplace_back(pid, v);
    std::sort(out.begin(), out.end());
  };

  // --- Alias / fixing passes ----------------------------------------------
  bool changed = true;
  while (changed && !cc.inconsistent) {
    changed = false;
    for (auto& row : rows) {
      if (!row.alive) continue;
      std::vector<std::pair<int, double>> t;
      double rhs;
      rewrite_simple(row, t, rhs);
      if (t.empty()) {
        if (std::abs(rhs) > 1e-9) {
          cc.inconsistent = true;
          cc.note = "contradictory equality constraint";
        }
        row.alive = false;
        changed = true;
      } else if (t.size() == 1) {
        fix_root(t[0].first, rhs / t[0].second);
        row.alive = false;
        changed = true;
      } else if (t.size() == 2 && std::abs(rhs) <= 1e-12) {
        const auto [a, ca] = t[0];
        const auto [b, cb] = t[1];
        // ca x_a + cb x_b = 0  =>  x_a = (-cb/ca) x_b
        uf.parent[a] = b;
        uf.weight[a] = -cb / ca;
        row.alive = false;
        changed = true;
      }
    }
  }

  // --- Substitution of single-appearance variables --------------------------
  std::unordered_map<int, AffineExpr> resolve_cache;
  std::function<AffineExpr(int)> resolve = [&](int root) -> AffineExpr {
    auto it = resolve_cache.find(root);
    if (it != resolve_cache.end()) return it->second;
    AffineExpr e;
    const auto& st = roots[root];
    if (st.kind == RootKind::live) {
      e.lin.emplace_back(root, 1.0);
    } else if (st.kind == RootKind::fixed) {
      e.cst = st.fixed_value;
    } else {
      e.cst = st.cst;
      for (const auto& [r2, c2] : st.lin) {
        auto [rr, ww] = uf.find(r2);
        AffineExpr sub = resolve(rr);
        e.cst += c2 * ww * sub.cst;
        for (const auto& [k, v] : sub.lin) e.lin.emplace_back(k, c2 * ww * v);
      }
      std::sort(e.lin.begin(), e.lin.end());
      std::vector<std::pair<int, double>> merged;
      for (const auto& [k, v] : e.lin) {
        if (!merged.empty() && merged.back().first == k)
          merged.back().second += v;
        else
          merged.emplace_back(k, v);
      }
      e.lin.clear();
      for (auto& [k, v] : merged)
        if (std::abs(v) > kCoeffEps) e.lin.emplace_back(k, v);
    }
    resolve_cache[root] = e;
    return e;
  };

  auto rewrite_full = [&](const CanonRow& row,
                          std::vector<std::pair<int, double>>& out,
                          double& rhs_out) {
    std::unordered_map<int, double> acc;
    rhs_out = row.rhs;
    for (const auto& [pid, coeff] : row.terms) {
      auto [root, w] = uf.find(pid);
      AffineExpr e = resolve(root);
      rhs_out -= coeff * w * e.cst;
      for (const auto& [k, v] : e.lin) acc[k] += coeff * w * v;
    }
    out.clear();
    for (const auto& [pid, v] : acc)
      if (std::abs(v) > kCoeffEps) out.emplace_back(pid, v);
    std::sort(out.begin(), out.end());
  };

  while (!cc.inconsistent) {
    std::unordered_map<int, int> count;
    std::vector<std::vector<std::pair<int, double>>> rw(rows.size());
    std::vector<double> rw_rhs(rows.size());
    bool state_changed = false;
    for (size_t i = 0; i < rows.size() && !state_changed; ++i) {
      if (!rows[i].alive) continue;
      rewrite_full(rows[i], rw[i], rw_rhs[i]);
      if (rw[i].empty()) {
        if (std::abs(rw_rhs[i]) > 1e-9) {
          cc.inconsistent = true;
          cc.note = "contradictory equality constraint";
        }
        rows[i].alive = false;
        continue;
      }
      if (rw[i].size() == 1) {
        fix_root(rw[i][0].first, rw_rhs[i] / rw[i][0].second);
        rows[i].alive = false;
        resolve_cache.clear();
        state_changed = true;
        continue;
      }
      for (const auto& [pid, v] : rw[i]) count[pid]++;
    }
    if (state_changed) continue;
    if (cc.inconsistent) break;

    int best_row = -1, best_pid = -1;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].alive || rw[i].empty()) continue;
      for (const auto& [pid, v] : rw[i]) {
        if (count[pid] == 1 && pid > best_pid) {
          best_pid = pid;
          best_row = static_cast<int>(i);
        }
      }
    }
    if (best_row < 0) break;

    double coeff = 0.0;
    auto& st = roots[best_pid];
    st.kind = RootKind::subst;
    st.lin.clear();
    for (const auto& [pid, v] : rw[best_row]) {
      if (pid == best_pid) coeff = v;
    }
    st.cst = rw_rhs[best_row] / coeff;
    for (const auto& [pid, v] : rw[best_row]) {
      if (pid != best_pid) st.lin.emplace_back(pid, -v / coeff);
    }
    rows[best_row].alive = false;
    resolve_cache.clear();
  }

  if (cc.inconsistent) return cc;

  // --- Assign y indices to live roots --------------------------------------
  std::vector<int> y_index(total_params, -1);
  for (int pid = 0; pid < total_params; ++pid) {
    if (uf.find(pid).first != pid) continue;
    if (roots[pid].kind == RootKind::live) y_index[pid] = cc.p++;
  }

  resolve_cache.clear();
  cc.param_exprs.resize(total_params);
  for (int pid = 0; pid < total_params; ++pid) {
    auto [root, w] = uf.find(pid);
    AffineExpr e = resolve(root);
    AffineExpr out;
    out.cst = w * e.cst;
    out.lin.reserve(e.lin.size());
    for (const auto& [k, v] : e.lin) {
      const int yk = y_index[k];
      if (yk < 0) {
        cc.inconsistent = true;
        cc.note = "internal presolve error: dangling reference";
        return cc;
      }
      out.lin.emplace_back(yk, w * v);
    }
    cc.param_exprs[pid] = std::move(out);
  }

  // --- Compile blocks -------------------------------------------------------
  cc.blocks.resize(nb);
  for (int b = 0; b < nb; ++b) {
    const int n = problem.blocks[b].side;
    auto& blk = cc.blocks[b];
    blk.side = n;
    blk.constant = Matrix::Zero(n, n);
    std::map<int, std::map<std::pair<int, int>, Complex>> per_coord;
    for (int r = 0; r < n; ++r) {
      for (int c = r; c < n; ++c) {
        for (int im = 0; im < (r == c ? 1 : 2); ++im) {
          const int pid = pid_of(b, r, c, im == 1);
          const auto& e = cc.param_exprs[pid];
          const Complex unit = (im == 1) ? Complex(0, 1) : Complex(1, 0);
          if (e.cst != 0.0) {
            blk.constant(r, c) += e.cst * unit;
            if (r != c) blk.constant(c, r) += std::conj(e.cst * unit);
          }
          for (const auto& [k, v] : e.lin) per_coord[k][{r, c}] += v * unit;
        }
      }
    }
    for (auto& [k, stamps] : per_coord) {
      CoordStamps cs;
      cs.k = k;
      for (auto& [rc, w] : stamps) {
        if (std::abs(w) < kCoeffEps) continue;
        cs.st.push_back({rc.first, rc.second, w});
      }
      if (!cs.st.empty()) blk.coords.push_back(std::move(cs));
    }
  }

  // --- Equality rows over y -------------------------------------------------
  struct YRow {
    std::vector<std::pair<int, double>> terms;
    double rhs;
    int origin;
  };
  std::vector<YRow> yrows;
  std::unordered_map<size_t, std::vector<int>> row_hash;
  auto hash_row = [](const std::vector<std::pair<int, double>>& t,
                     double lead) {
    size_t h = 1469598103934665603ULL;
    auto mix = [&h](size_t v) {
      h ^= v;
      h *= 1099511628211ULL;
    };
    for (const auto& [k, v] : t) {
      mix(static_cast<size_t>(k));
      mix(static_cast<size_t>(std::llround(v / lead * 1e9)));
    }
    return h;
  };
  for (auto& row : rows) {
    if (!row.alive) continue;
    std::vector<std::pair<int, double>> t;
    double rhs;
    rewrite_full(row, t, rhs);
    for (auto& [pid, v] : t) pid = y_index[pid];
    std::sort(t.begin(), t.end());
    if (t.empty()) {
      if (std::abs(rhs) > 1e-9) {
        cc.inconsistent = true;
        cc.note = "contradictory equality constraint";
        return cc;
      }
      continue;
    }
    double lead = 0.0;
    for (const auto& [k, v] : t) lead = std::max(lead, std::abs(v));
    if (t[0].second < 0) lead = -lead;
    const size_t h = hash_row(t, lead);
    bool dup = false;
    for (int j : row_hash[h]) {
      const auto& other = yrows[j];
      if (other.terms.size() != t.size()) continue;
      const double scale = t[0].second / other.terms[0].second;
      bool same = true;
      for (size_t q = 0; q < t.size(); ++q) {
        if (other.terms[q].first != t[q].first ||
            std::abs(other.terms[q].second * scale - t[q].second) >
                1e-9 * std::abs(lead)) {
          same = false;
          break;
        }
      }
      if (same) {
        if (std::abs(other.rhs * scale - rhs) > 1e-9) {
          cc.inconsistent = true;
          cc.note = "contradictory equality constraint";
          return cc;
        }
        dup = true;
        break;
      }
    }
    if (dup) continue;
    row_hash[h].push_back(static_cast<int>(yrows.size()));
    yrows.push_back({std::move(t), rhs, row.origin});
  }

  // Rank filter (modified Gram-Schmidt) so KKT systems stay definite.
  std::vector<Eigen::VectorXd> basis;
  std::vector<int> kept;
  for (size_t i = 0; i < yrows.size(); ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(cc.p);
    for (const auto& [k, coeff] : yrows[i].terms) v(k) = coeff;
    const double norm0 = v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) v -= q.dot(v) * q;
    if (v.norm() > 1e-10 * std::max(1.0, norm0)) {
      basis.push_back(v / v.norm());
      kept.push_back(static_cast<int>(i));
    }
  }

  cc.G.resize(static_cast<int>(kept.size()), cc.p);
  cc.h.resize(static_cast<int>(kept.size()));
  std::vector<Eigen::Triplet<double>> trips;
  for (size_t j = 0; j < kept.size(); ++j) {
    const auto& row = yrows[kept[j]];
    for (const auto& [k, v] : row.terms)
      trips.emplace_back(static_cast<int>(j), k, v);
    cc.h(static_cast<int>(j)) = row.rhs;
    cc.row_origin.push_back(row.origin);
  }
  cc.G.setFromTriplets(trips.begin(), trips.end());

  // --- Objective -------------------------------------------------------------
  cc.c = Eigen::VectorXd::Zero(cc.p);
  cc.obj_const = 0.0;
  {
    auto t = canonicalize(problem.objective);
    for (const auto& [pid, coeff] : t) {
      const auto& e = cc.param_exprs[pid];
      cc.obj_const += coeff * e.cst;
      for (const auto& [k, v] : e.lin) cc.c(k) += coeff * v;
    }
  }

  // --- Starting hint ----------------------------------------------------------
  if (!problem.start_hint.empty()) {
    bool ok = true;
    cc.y_hint = Eigen::VectorXd::Zero(cc.p);
    std::vector<const Matrix*> hint(nb, nullptr);
    for (int b = 0; b < nb; ++b) {
      auto it = problem.start_hint.find(problem.blocks[b].name);
      if (it != problem.start_hint.end()) {
        if (it->second.rows() != problem.blocks[b].side ||
            it->second.cols() != problem.blocks[b].side) {
          ok = false;
          break;
        }
        hint[b] = &it->second;
      }
    }
    if (ok) {
      for (int b = 0; b < nb && ok; ++b) {
        const int n = problem.blocks[b].side;
        for (int r = 0; r < n && ok; ++r) {
          for (int c = r; c < n && ok; ++c) {
            for (int im = 0; im < (r == c ? 1 : 2); ++im) {
              const int pid = pid_of(b, r, c, im == 1);
              auto [root, w] = uf.find(pid);
              if (root != pid || roots[pid].kind != RootKind::live) continue;
              if (!hint[b]) {
                ok = false;
                break;
              }
              const Complex val = (*hint[b])(r, c);
              cc.y_hint(y_index[pid]) = (im == 1) ? val.imag() : val.real();
            }
          }
        }
      }
      cc.has_hint = ok;
    }
  }

  return cc;
}

std::vector<Matrix> expand_blocks(const Compiled& cc,
                                  const Eigen::VectorXd& y) {
  std::vector<Matrix> out;
  out.reserve(cc.blocks.size());
  for (const auto& blk : cc.blocks) {
    Matrix m = blk.constant;
    for (const auto& cs : blk.coords) {
      const double v = y(cs.k);
      for (const auto& s : cs.st) {
        if (s.row == s.col) {
          m(s.row, s.col) += v * s.w.real();
        } else {
          m(s.row, s.col) += v * s.w;
          m(s.col, s.row) += v * std::conj(s.w);
        }
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace netwit::internal
