// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qcorr/cli.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/io.hpp"
#include "qcorr/witness.hpp"
#include "qcorr/zoo.hpp"
#include "states.hpp"

using namespace qcorr;
using namespace fixture;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome bipartite_witness() {
  double worst = 0.0;
  int n = 0;
  std::uint64_t seed = 1000;
  for (const Dims& dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    for (int i = 0; i < 500; ++i, ++n) {
      const auto psi = random_pure(dims, seed++);
      worst = std::max(worst, std::abs(witness_W(psi.projector()).value - concurrence_pure(psi)));
    }
  }
  return {worst <= 1e-8, fmt("%.0f states, max |W - C| = %.2e (tol 1e-8)", n, worst)};
}

Outcome multipartite_pure() {
  double worst_cut = 0.0, worst_w = 0.0, gap = 0.0;
  std::uint64_t seed = 2000;
  for (const Dims& dims : {Dims{2, 2, 2}, Dims{2, 2, 3}}) {
    for (int i = 0; i < 200; ++i) {
      const auto psi = random_pure(dims, seed++);
      const auto w = witness_W(psi.projector());
      for (const auto& pv : w.per_partition) {
        const double purity = marginal_purity(psi, pv.cut);
        worst_cut = std::max(worst_cut, std::abs(pv.value * pv.value - 2.0 * (1.0 - purity)));
      }
      const double c = gme_concurrence_pure(psi);
      worst_w = std::max(worst_w, std::abs(w.value - std::sqrt(2.0) * c));
      gap = std::max(gap, std::abs(w.value - c));
    }
  }
  return {worst_cut <= 1e-8 && worst_w <= 1e-8,
          fmt("400 states, max |D2^2 - 2(1-Tr rho_g^2)| = %.2e, max |W - sqrt2 C_GME| = %.2e; literal W = C_GME "
              "is off by up to %.3f (factor sqrt2)",
              worst_cut, worst_w, gap)};
}

Outcome nonnegativity() {
  double lowest = 1e9;
  const OptimizerConfig cfg;
  for (int i = 0; i < 200; ++i) {
    const auto rho = random_mixed({2, 2, 2}, 1 + i % 8, 3000 + static_cast<std::uint64_t>(i));
    const auto g = genuine_discord(rho, cfg);
    for (const auto& p : g.per_partition) lowest = std::min(lowest, p.result.raw_value);
  }
  return {lowest >= -1e-9, fmt("200 states (rank 1-8), lowest raw estimate %.3e (tol -1e-9)", lowest)};
}

Outcome product_across_cut() {
  const OptimizerConfig cfg;
  const auto rho = to_density(zoo("bell-times-zero"));
  const auto g = genuine_discord(rho, cfg);
  const auto ab = partial_trace(rho, Subset{0, 1});
  const double od = original_discord(ab, Side::GammaPrime, cfg).value;
  const auto check = gmc_commutator_check(rho);
  const bool ok = g.value <= 1e-6 && std::abs(od - 1.0) <= 1e-3 && check.min_norm <= 1e-12 &&
                  check.verdict == kVerdictPassed;
  return {ok, fmt("genuine discord %.2e, original discord of 12 block %.6f, min commutator %.1e", g.value, od,
                  check.min_norm)};
}

Outcome oracle_equivalence() {
  OptimizerConfig cfg;
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) {
    const auto rho = random_mixed({2, 2}, 1 + i % 4, 5000 + static_cast<std::uint64_t>(i));
    const double opt = symmetric_discord(rho, cfg).value;
    const double grid = oracle::grid_symmetric_discord(rho.matrix(), {90, 180});
    worst = std::max(worst, std::abs(opt - grid));
  }
  const double bell_d = original_discord(bell(), Side::GammaPrime, cfg).value;
  return {worst <= 2e-3 && std::abs(bell_d - 1.0) <= 1e-4,
          fmt("25 states, max |optimizer - grid| = %.2e (tol 2e-3); Bell original discord %.8f", worst, bell_d)};
}

Outcome pinching() {
  const std::vector<Dims> shapes{{2}, {3}, {2, 2}, {5}, {2, 3}, {2, 2, 2}, {3, 3}, {2, 5}, {2, 2, 3}, {3, 2, 2}};
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto s = static_cast<std::uint64_t>(i);
    const Dims& dims = shapes[s % shapes.size()];
    const int d = total_dim(dims);
    const auto rho = random_mixed(dims, 1 + static_cast<int>((7 * s) % d), 6000 + s);
    DensityMatrix phi = rho;
    if (dims.size() >= 2 && i % 2 == 0) {
      const auto cuts = enumerate_bipartitions(dims);
      const auto& cut = cuts[s % cuts.size()];
      phi = dephase_cut(rho, CutMeasurement(cut, random_basis(cut.d_gamma(), 7000 + s),
                                            random_basis(cut.d_gamma_prime(), 8000 + s)));
    } else {
      phi = dephase(rho, random_basis(d, 9000 + s));
    }
    const double lhs = relative_entropy(rho, phi);
    worst = std::max(worst, std::abs(lhs - (von_neumann_entropy(phi) - von_neumann_entropy(rho))));
  }
  return {worst <= 1e-10, fmt("200 pairs up to dim 12, max deviation %.2e (tol 1e-10)", worst)};
}

Outcome metric_axioms() {
  double triangle = -1e300, closed = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto s = static_cast<std::uint64_t>(3 * i);
    const Dims dims = i % 2 ? Dims{2, 2} : Dims{3};
    const int d = total_dim(dims);
    const auto a = random_mixed(dims, 1 + i % d, 10000 + s);
    const auto b = random_mixed(dims, 1 + (i / 2) % d, 10001 + s);
    const auto c = random_mixed(dims, d, 10002 + s);
    triangle = std::max(triangle, d2_distance(a, c) - d2_distance(a, b) - d2_distance(b, c));
    closed = std::max(closed, std::abs(d2_distance(a, b) - dp_distance(a, b, 2.0)));
  }
  return {triangle <= 1e-10 && closed <= 1e-10,
          fmt("500 triples, worst triangle excess %.2e, max |closed - D_p| = %.2e", triangle, closed)};
}

Outcome gme_values() {
  const double ghz = gme_concurrence_pure(PureStateVector::validate(ghz3_vector(), {2, 2, 2}));
  const double w = gme_concurrence_pure(PureStateVector::validate(w3_vector(), {2, 2, 2}));
  Vector btz = Vector::Zero(8);
  btz(0) = btz(6) = 1.0 / std::sqrt(2.0);
  const double b = gme_concurrence_pure(PureStateVector::validate(btz, {2, 2, 2}));
  const Matrix mix =
      0.5 * diag({1, 0, 0, 0, 0, 0, 0, 0}, {2, 2, 2}).matrix() + 0.5 * tensor(diag({1, 0}, {2}), bell()).matrix();
  const auto t0 = std::chrono::steady_clock::now();
  const auto roof = gme_concurrence_upper(DensityMatrix::validate(mix, {2, 2, 2}), OptimizerConfig{});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = std::abs(ghz - 1.0 / std::sqrt(2.0)) <= 1e-9 && std::abs(w - 2.0 / 3.0) <= 1e-9 &&
                  std::abs(b) <= 1e-12 && roof.value <= 1e-3 && secs <= 60.0;
  return {ok, fmt("GHZ %.9f, W %.9f, Bell(x)|0> %.1e; ", ghz, w, b) +
                  fmt("convex-roof bound %.2e in %.2f s", roof.value, secs)};
}

Outcome non_sufficiency() {
  const auto check = gmc_commutator_check(bell());
  const double d = symmetric_discord(bell(), OptimizerConfig{}).value;
  const bool ok = check.min_norm <= 1e-12 && check.verdict == kVerdictPassed && std::abs(d - 1.0) <= 1e-6 &&
                  check.caveat.find("necessary condition only") != std::string::npos;
  return {ok, fmt("Bell commutator %.1e with discord %.6f", check.min_norm, d) + "; caveat: " + check.caveat};
}

Outcome cli_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / ("qcorr_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string state = (dir / "ghz.json").string();
  std::ostringstream sink, err;
  if (cli_main({"qcorr", "zoo", "ghz", "--n", "3", "-o", state}, sink, err) != kExitOk) return {false, err.str()};
  auto analyze = [&](const std::string& threads) {
    std::ostringstream out, e;
    const int code = cli_main({"qcorr", "analyze", state, "--measures", "witness,gmc,entropy,discord,concurrence",
                               "--seed", "42", "--json", "--no-timing", "--threads", threads},
                              out, e);
    return code == kExitOk ? out.str() : std::string("exit ") + std::to_string(code) + ": " + e.str();
  };
  const std::string first = analyze("1");
  bool same = first == analyze("1");
  for (const char* t : {"2", "4", "0"}) same = same && first == analyze(t);
  std::filesystem::remove_all(dir);
  return {same && first.front() == '{', fmt("%.0f bytes, identical across 2 runs and threads 1/2/4/all", first.size())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"bipartite witness equals concurrence", bipartite_witness},
      {"multipartite pure-state relation", multipartite_pure},
      {"genuine discord nonnegativity", nonnegativity},
      {"bell times zero", product_across_cut},
      {"optimizer vs grid oracle", oracle_equivalence},
      {"pinching identity", pinching},
      {"D2 metric axioms", metric_axioms},
      {"GME-concurrence values", gme_values},
      {"commutator condition is not sufficient", non_sufficiency},
      {"CLI determinism", cli_determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%2d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
