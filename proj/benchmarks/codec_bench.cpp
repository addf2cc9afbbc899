#include <benchmark/benchmark.h>

#include "orion/e2/codec.hpp"

namespace {

using namespace orion;

e2::ControlPdu control_request() {
  e2::ControlRequest req;
  req.slice = model::SliceId{1, "456DEF", "724", "11", 1};
  req.ratios = {0, 30, 100};
  return e2::ControlPdu{7, req};
}

void BM_EncodeControl(benchmark::State& state) {
  auto pdu = control_request();
  for (auto _ : state) benchmark::DoNotOptimize(e2::encode(pdu));
}
BENCHMARK(BM_EncodeControl);

void BM_DecodeControl(benchmark::State& state) {
  auto bytes = e2::encode(control_request());
  for (auto _ : state) benchmark::DoNotOptimize(e2::decode(bytes));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes.size()));
}
BENCHMARK(BM_DecodeControl);

void BM_DecodeSetupWithCell(benchmark::State& state) {
  e2::SetupRequest req{"gnb-001", {e2::FunctionAdvert{}}, model::CellConfig{"gnb-001", 1, 100'000'000, 1, 4, 8, 273, 140'000}};
  auto bytes = e2::encode(e2::ControlPdu{1, req});
  for (auto _ : state) benchmark::DoNotOptimize(e2::decode(bytes));
}
BENCHMARK(BM_DecodeSetupWithCell);

}  // namespace
