// Copyright 2026 The anonlab Authors.
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

// Frame-parallel anonymize() against the serial reference.

#include <cmath>
#include <numbers>
#include <random>

#include <benchmark/benchmark.h>

#include "anonlab/mcadams/anonymizer.hpp"

namespace {

using anonlab::signal::Waveform;

// Harmonic-rich voiced signal with slow vibrato plus a little noise.
Waveform make_signal(double seconds) {
  Waveform w;
  w.sample_rate = 16000;
  const auto n = static_cast<std::size_t>(seconds * w.sample_rate);
  w.samples.resize(n);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0.0, 0.01);
  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / w.sample_rate;
    phase += 2 * std::numbers::pi * (130.0 + 8.0 * std::sin(2 * std::numbers::pi * 5.0 * t)) / w.sample_rate;
    double v = 0.0;
    for (int h = 1; h <= 12; ++h) v += std::sin(h * phase) / h;
    w.samples[i] = 0.2 * v + noise(rng);
  }
  return w;
}

void BM_AnonymizeParallel(benchmark::State& state) {
  const auto w = make_signal(static_cast<double>(state.range(0)));
  const anonlab::mcadams::McAdamsConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(anonlab::mcadams::anonymize(w, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.samples.size()));
}

void BM_AnonymizeSerial(benchmark::State& state) {
  const auto w = make_signal(static_cast<double>(state.range(0)));
  const anonlab::mcadams::McAdamsConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(anonlab::mcadams::anonymize_serial(w, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.samples.size()));
}

BENCHMARK(BM_AnonymizeParallel)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AnonymizeSerial)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
