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


#include <benchmark/benchmark.h>

#include "celldet/density.h"
#include "celldet/synth.h"

namespace celldet {
namespace {

CentroidSet Scene(std::size_t n) {
  SceneParams sp;
  sp.n = n;
  sp.min_separation = 24.0;
  sp.edge_buffer = 16.0;
  sp.seed = 11;
  return GenerateScene(sp);
}

void BM_GaussianBlur(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const double sigma = static_cast<double>(state.range(1));
  DensityMap map({side, side});
  CounterRng rng(5);
  for (float& v : map.values()) v = static_cast<float>(rng.NextUniform());
  for (auto _ : state) {
    benchmark::DoNotOptimize(GaussianBlur(map, sigma, KernelNormalization::kSumOne));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_GaussianBlur)->Args({256, 1})->Args({512, 1})->Args({512, 3})->Args({1024, 3});

void BM_RenderFcrnGt(benchmark::State& state) {
  const CentroidSet pts = Scene(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(RenderFcrnGt(pts, {512, 512}, {5.0, 3.0}));
}
BENCHMARK(BM_RenderFcrnGt)->Arg(20)->Arg(100);

void BM_RenderIfcrnGt(benchmark::State& state) {
  const CentroidSet pts = Scene(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(RenderIfcrnGt(pts, {512, 512}, {}));
}
BENCHMARK(BM_RenderIfcrnGt)->Arg(20)->Arg(100);

}  // namespace
}  // namespace celldet
