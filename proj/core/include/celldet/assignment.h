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

// Minimum-cost bipartite matching between predictions (rows) and ground
// truths (columns).
//
// Rectangular instances are solved natively: the smaller side is injected
// into the larger one, so every matching has min(rows, cols) pairs. Among
// all optimal matchings the one whose pair list, sorted by prediction index,
// is lexicographically smallest is returned. Two totals are considered tied
// when they differ by at most TieTolerance(costs).

#ifndef CELLDET_ASSIGNMENT_H_
#define CELLDET_ASSIGNMENT_H_

#include <cstddef>
#include <vector>

#include "celldet/geometry.h"

namespace celldet {

struct MatchedPair {
  std::size_t pred = 0;
  std::size_t gt = 0;
  double distance = 0.0;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct Matching {
  std::vector<MatchedPair> pairs;  // sorted by pred index
  std::vector<std::size_t> unmatched_preds;
  std::vector<std::size_t> unmatched_gts;

  // Sum of pair costs, accumulated in pair order.
  double TotalCost() const;

  friend bool operator==(const Matching&, const Matching&) = default;
};

// Throws InputError for NaN, infinite or negative entries.
void ValidateCosts(const DistanceMatrix& costs);

double TieTolerance(const DistanceMatrix& costs);

// Shortest-augmenting-path Hungarian method, O(n^2 m) for n <= m, followed
// by a lexicographic tie-breaking pass that only re-solves when the optimal
// dual exposes alternative tight edges.
Matching SolveAssignment(const DistanceMatrix& costs);

// Exhaustive enumeration of every injection of the smaller side into the
// larger. Throws SizeError when min(rows, cols) > 8 or the enumeration would
// exceed 1e8 injections.
Matching BruteForceAssignment(const DistanceMatrix& costs);

}  // namespace celldet

#endif  // CELLDET_ASSIGNMENT_H_
