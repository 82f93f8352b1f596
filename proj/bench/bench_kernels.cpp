// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "qlogic/families.hpp"
#include "qlogic/kernels.hpp"
#include "qlogic/lattice.hpp"
#include "qlogic/protocol.hpp"

using namespace qlogic;

namespace {

const Lattice& boolean6() {
  static const Lattice l = build_lattice(generate_family(Family::Boolean, 6).spec);
  return l;
}

std::vector<std::uint8_t> random_dag(std::size_t n) {
  std::mt19937_64 rng(n);
  std::bernoulli_distribution edge(4.0 / static_cast<double>(n));
  std::vector<std::uint8_t> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) rel[i * n + j] = edge(rng);
  return rel;
}

Theory qubit() {
  QuantumTheory q;
  q.rho = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  Eigen::VectorXcd z0(2), z1(2), x0(2), x1(2);
  z0 << 1, 0;
  z1 << 0, 1;
  x0 << 1, 1;
  x1 << 1, -1;
  x0 /= std::sqrt(2.0);
  x1 /= std::sqrt(2.0);
  q.classes["Z"] = {kBinaryAnswers, {z0 * z0.adjoint(), z1 * z1.adjoint()}};
  q.classes["X"] = {kBinaryAnswers, {x0 * x0.adjoint(), x1 * x1.adjoint()}};
  return Theory::quantum(q);
}

ProtocolConfig bb84(std::uint64_t rounds) {
  ProtocolConfig c;
  c.rounds = rounds;
  c.classes = {"X", "Z"};
  c.eve = EveStrategy::InterceptResendUniform;
  c.eve_rate = 1;
  c.seed = 7;
  return c;
}

template <auto Scan>
void BM_distributivity(benchmark::State& state) {
  const auto t = boolean6().tables();
  for (auto _ : state) benchmark::DoNotOptimize(Scan(t));
}

template <auto Scan>
void BM_lattice_laws(benchmark::State& state) {
  const auto t = boolean6().tables();
  for (auto _ : state) benchmark::DoNotOptimize(Scan(t));
}

template <auto Closure>
void BM_closure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto dag = random_dag(n);
  for (auto _ : state) {
    auto rel = dag;
    Closure(n, rel);
    benchmark::DoNotOptimize(rel.data());
  }
}

template <bool Parallel>
void BM_protocol(benchmark::State& state) {
  const auto theory = qubit();
  const auto config = bb84(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    auto r = Parallel ? run_protocol(theory, config) : run_protocol_serial(theory, config);
    benchmark::DoNotOptimize(r.stats.sifted_errors);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_distributivity<kernels::serial::first_distributivity_violation>)->Name("distributivity_B6/serial");
BENCHMARK(BM_distributivity<kernels::parallel::first_distributivity_violation>)->Name("distributivity_B6/parallel");
BENCHMARK(BM_lattice_laws<kernels::serial::first_lattice_law_violation>)->Name("lattice_laws_B6/serial");
BENCHMARK(BM_lattice_laws<kernels::parallel::first_lattice_law_violation>)->Name("lattice_laws_B6/parallel");
BENCHMARK(BM_closure<kernels::serial::transitive_closure>)->Name("closure/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_closure<kernels::parallel::transitive_closure>)->Name("closure/parallel")->Arg(256)->Arg(1024);
BENCHMARK(BM_protocol<false>)->Name("bb84/serial")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_protocol<true>)->Name("bb84/parallel")->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
