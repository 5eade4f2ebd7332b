#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "gyrokit/design.hpp"
#include "gyrokit/expm.hpp"
#include "gyrokit/junction.hpp"
#include "gyrokit/network.hpp"
#include "gyrokit/nonlinear.hpp"

namespace {

void bench_scattering_point(benchmark::State& state) {
  gyrokit::GyratorCircuit circ = gyrokit::GyratorCircuit::normalized(0.05, 1.0, 0.0);
  circ.g = gyrokit::optimal_conductance(circ);
  const double omega0 = circ.omega0();
  double omega = 0.9 * omega0;
  for (auto _ : state) {
    const auto z = gyrokit::impedance(circ, omega);
    const auto s = gyrokit::scattering_from_impedance(z, circ.z_tl);
    benchmark::DoNotOptimize(s.m);
    omega += 1e-6 * omega0;  // defeat value caching across iterations
  }
}
BENCHMARK(bench_scattering_point);

void bench_expm(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  std::mt19937 rng(42);
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = std::complex<double>(dist(rng), dist(rng)) / static_cast<double>(n);
    }
  }
  for (auto _ : state) {
    Eigen::MatrixXcd e = gyrokit::expm(a);
    benchmark::DoNotOptimize(e.data());
  }
}
BENCHMARK(bench_expm)->Arg(100)->Arg(441)->Unit(benchmark::kMillisecond);

void bench_spline_eval(benchmark::State& state) {
  std::vector<double> v;
  std::vector<double> f;
  for (int i = 0; i <= 200; ++i) {
    const double x = -1.0 + 2.0 * i / 200.0;
    v.push_back(x);
    f.push_back(50.0 + 10.0 * std::tanh(3.0 * x));
  }
  gyrokit::TabulatedEnergy tab(v, f, gyrokit::TabulatedEnergy::Kind::direct_ej,
                               gyrokit::EnergyUnit::ghz_h);
  double x = -0.99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tab.derivative(x, 1));
    x += 1e-5;
    if (x > 0.99) x = -0.99;
  }
}
BENCHMARK(bench_spline_eval);

void bench_charge_inversion(benchmark::State& state) {
  gyrokit::ChargeInversion ci;
  ci.c << 1e-13, -1e-15, -1e-15, 1.2e-13;
  ci.couplings.push_back(Eigen::Vector2d(2e-15, -1e-15));  // third-order response
  ci.couplings.push_back(Eigen::Vector2d(5e-16, 3e-16));   // fourth-order response
  Eigen::Vector2d q(1e-18, -2e-18);
  for (auto _ : state) {
    const auto result = gyrokit::charge_inversion(ci, q, 3);
    benchmark::DoNotOptimize(result.velocity);
    q(0) += 1e-24;
  }
}
BENCHMARK(bench_charge_inversion);

}  // namespace

BENCHMARK_MAIN();
