// Copyright 2026 The celldet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "celldet/assignment.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "celldet/errors.h"

namespace celldet {
namespace {

constexpr std::ptrdiff_t kUnmatched = -1;

// Solution of the subproblem restricted to `preds` x `gts`. `pred_to_gt` and
// the reduced costs are indexed by position within those lists.
struct SubSolution {
  std::vector<std::ptrdiff_t> pred_to_gt;
  std::vector<double> pred_potential;
  std::vector<double> gt_potential;
  double total = 0.0;
};

SubSolution Hungarian(const DistanceMatrix& costs,
                      const std::vector<std::size_t>& preds,
                      const std::vector<std::size_t>& gts) {
  SubSolution sol;
  sol.pred_to_gt.assign(preds.size(), kUnmatched);
  sol.pred_potential.assign(preds.size(), 0.0);
  sol.gt_potential.assign(gts.size(), 0.0);
  if (preds.empty() || gts.empty()) return sol;

  // Internal rows are the smaller side.
  const bool rows_are_preds = preds.size() <= gts.size();
  const std::size_t n = rows_are_preds ? preds.size() : gts.size();
  const std::size_t m = rows_are_preds ? gts.size() : preds.size();
  const auto cost = [&](std::size_t row, std::size_t col) {
    return rows_are_preds ? costs(preds[row - 1], gts[col - 1])
                          : costs(preds[col - 1], gts[row - 1]);
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), min_to(m + 1);
  std::vector<std::size_t> owner(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::fill(min_to.begin(), min_to.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double reduced = cost(i0, j) - u[i0] - v[j];
        if (reduced < min_to[j]) {
          min_to[j] = reduced;
          way[j] = j0;
        }
        if (min_to[j] < delta) {
          delta = min_to[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          min_to[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= m; ++j) {
    if (owner[j] == 0) continue;
    const std::size_t row = owner[j] - 1;
    const std::size_t col = j - 1;
    if (rows_are_preds) {
      sol.pred_to_gt[row] = static_cast<std::ptrdiff_t>(col);
    } else {
      sol.pred_to_gt[col] = static_cast<std::ptrdiff_t>(row);
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    (rows_are_preds ? sol.pred_potential : sol.gt_potential)[i - 1] = u[i];
  }
  for (std::size_t j = 1; j <= m; ++j) {
    (rows_are_preds ? sol.gt_potential : sol.pred_potential)[j - 1] = v[j];
  }
  for (std::size_t p = 0; p < preds.size(); ++p) {
    if (sol.pred_to_gt[p] != kUnmatched) {
      sol.total += costs(preds[p], gts[sol.pred_to_gt[p]]);
    }
  }
  return sol;
}

Matching Assemble(const DistanceMatrix& costs,
                  std::vector<std::ptrdiff_t> pred_to_gt) {
  Matching out;
  std::vector<char> gt_used(costs.cols(), 0);
  for (std::size_t p = 0; p < pred_to_gt.size(); ++p) {
    if (pred_to_gt[p] == kUnmatched) {
      out.unmatched_preds.push_back(p);
      continue;
    }
    const auto g = static_cast<std::size_t>(pred_to_gt[p]);
    gt_used[g] = 1;
    out.pairs.push_back({p, g, costs(p, g)});
  }
  for (std::size_t g = 0; g < costs.cols(); ++g) {
    if (!gt_used[g]) out.unmatched_gts.push_back(g);
  }
  return out;
}

bool LexLess(const std::vector<std::ptrdiff_t>& a,
             const std::vector<std::ptrdiff_t>& b) {
  // Compares the pred-sorted pair lists encoded as pred -> gt vectors.
  std::size_t ia = 0, ib = 0;
  const std::size_t n = a.size();
  while (true) {
    while (ia < n && a[ia] == kUnmatched) ++ia;
    while (ib < n && b[ib] == kUnmatched) ++ib;
    if (ia == n || ib == n) return ia == n && ib != n;
    if (ia != ib) return ia < ib;
    if (a[ia] != b[ib]) return a[ia] < b[ib];
    ++ia;
    ++ib;
  }
}

}  // namespace

double Matching::TotalCost() const {
  double total = 0.0;
  for (const auto& pair : pairs) total += pair.distance;
  return total;
}

void ValidateCosts(const DistanceMatrix& costs) {
  for (std::size_t r = 0; r < costs.rows(); ++r) {
    for (std::size_t c = 0; c < costs.cols(); ++c) {
      const double v = costs(r, c);
      if (!std::isfinite(v) || v < 0.0) {
        throw InputError("cost (" + std::to_string(r) + ", " +
                         std::to_string(c) +
                         ") must be finite and non-negative");
      }
    }
  }
}

double TieTolerance(const DistanceMatrix& costs) {
  double max_cost = 0.0;
  for (double v : costs.values()) max_cost = std::max(max_cost, v);
  const double k = static_cast<double>(std::min(costs.rows(), costs.cols()));
  return 1e-10 * (1.0 + max_cost * k);
}

Matching SolveAssignment(const DistanceMatrix& costs) {
  ValidateCosts(costs);
  const std::size_t rows = costs.rows();
  const std::size_t cols = costs.cols();
  std::vector<std::ptrdiff_t> result(rows, kUnmatched);
  if (costs.empty()) return Assemble(costs, std::move(result));

  std::vector<std::size_t> preds(rows), gts(cols);
  for (std::size_t i = 0; i < rows; ++i) preds[i] = i;
  for (std::size_t j = 0; j < cols; ++j) gts[j] = j;

  SubSolution current = Hungarian(costs, preds, gts);
  const double optimum = current.total;
  const double tol = TieTolerance(costs);
  double fixed_cost = 0.0;

  // Fix predictions in index order, each to the smallest ground truth that
  // still admits an optimal completion. Only tight edges can appear in an
  // optimal matching, so the dual filters candidates before any re-solve.
  while (!preds.empty()) {
    const std::size_t p = preds.front();
    if (gts.empty()) break;
    const std::ptrdiff_t chosen = current.pred_to_gt[0];
    bool accepted = false;
    for (std::size_t k = 0; k < gts.size(); ++k) {
      if (chosen != kUnmatched && static_cast<std::ptrdiff_t>(k) >= chosen) {
        break;
      }
      const double reduced = costs(p, gts[k]) - current.pred_potential[0] -
                             current.gt_potential[k];
      if (reduced > tol) continue;
      std::vector<std::size_t> sub_preds(preds.begin() + 1, preds.end());
      std::vector<std::size_t> sub_gts = gts;
      sub_gts.erase(sub_gts.begin() + static_cast<std::ptrdiff_t>(k));
      SubSolution trial = Hungarian(costs, sub_preds, sub_gts);
      if (fixed_cost + costs(p, gts[k]) + trial.total <= optimum + tol) {
        result[p] = static_cast<std::ptrdiff_t>(gts[k]);
        fixed_cost += costs(p, gts[k]);
        preds = std::move(sub_preds);
        gts = std::move(sub_gts);
        current = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (accepted) continue;

    // Keep the current choice; the restricted solution stays optimal.
    preds.erase(preds.begin());
    current.pred_to_gt.erase(current.pred_to_gt.begin());
    current.pred_potential.erase(current.pred_potential.begin());
    if (chosen != kUnmatched) {
      const auto k = static_cast<std::size_t>(chosen);
      result[p] = static_cast<std::ptrdiff_t>(gts[k]);
      fixed_cost += costs(p, gts[k]);
      gts.erase(gts.begin() + static_cast<std::ptrdiff_t>(k));
      current.gt_potential.erase(current.gt_potential.begin() +
                                 static_cast<std::ptrdiff_t>(k));
      for (auto& g : current.pred_to_gt) {
        if (g != kUnmatched && g > chosen) --g;
      }
    }
  }
  return Assemble(costs, std::move(result));
}

Matching BruteForceAssignment(const DistanceMatrix& costs) {
  ValidateCosts(costs);
  const std::size_t rows = costs.rows();
  const std::size_t cols = costs.cols();
  const std::size_t small = std::min(rows, cols);
  const std::size_t large = std::max(rows, cols);
  if (small > 8) {
    throw SizeError("brute force assignment supports min(rows, cols) <= 8");
  }
  double injections = 1.0;
  for (std::size_t i = 0; i < small; ++i) {
    injections *= static_cast<double>(large - i);
  }
  if (injections > 1e8) {
    throw SizeError("brute force assignment would enumerate " +
                    std::to_string(injections) + " injections");
  }

  std::vector<std::ptrdiff_t> best(rows, kUnmatched);
  if (small == 0) return Assemble(costs, std::move(best));

  // Enumerates every assignment of small-side indices to distinct
  // large-side indices, passing each as a pred -> gt vector and its total.
  const bool small_is_preds = rows <= cols;
  const auto enumerate = [&](const auto& visit) {
    std::vector<std::size_t> pick(small);
    std::vector<char> taken(large, 0);
    std::vector<std::ptrdiff_t> p2g(rows, kUnmatched);
    const auto recurse = [&](auto&& self, std::size_t depth) -> void {
      if (depth == small) {
        std::fill(p2g.begin(), p2g.end(), kUnmatched);
        for (std::size_t s = 0; s < small; ++s) {
          if (small_is_preds) {
            p2g[s] = static_cast<std::ptrdiff_t>(pick[s]);
          } else {
            p2g[pick[s]] = static_cast<std::ptrdiff_t>(s);
          }
        }
        double total = 0.0;
        for (std::size_t p = 0; p < rows; ++p) {
          if (p2g[p] != kUnmatched) total += costs(p, p2g[p]);
        }
        visit(p2g, total);
        return;
      }
      for (std::size_t l = 0; l < large; ++l) {
        if (taken[l]) continue;
        taken[l] = 1;
        pick[depth] = l;
        self(self, depth + 1);
        taken[l] = 0;
      }
    };
    recurse(recurse, 0);
  };

  double min_total = std::numeric_limits<double>::infinity();
  enumerate([&](const std::vector<std::ptrdiff_t>&, double total) {
    min_total = std::min(min_total, total);
  });
  const double tol = TieTolerance(costs);
  bool have = false;
  enumerate([&](const std::vector<std::ptrdiff_t>& p2g, double total) {
    if (total > min_total + tol) return;
    if (!have || LexLess(p2g, best)) {
      best = p2g;
      have = true;
    }
  });
  return Assemble(costs, std::move(best));
}

}  // namespace celldet
