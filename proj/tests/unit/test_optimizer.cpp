#include <doctest.h>

#include <atomic>
#include <stdexcept>

#include "qcorr/optimizer.hpp"
#include "states.hpp"

using namespace qcorr;
using fixture::frob;

TEST_CASE("nelder-mead minimizes a shifted quadratic") {
  const auto f = [](const RealVector& x) { return (x(0) - 1.0) * (x(0) - 1.0) + 3.0 * (x(1) + 2.0) * (x(1) + 2.0); };
  const auto r = nelder_mead(f, RealVector::Zero(2), 0.5, 2000, 1e-14);
  CHECK(r.converged);
  CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x(1) == doctest::Approx(-2.0).epsilon(1e-5));
  CHECK(r.value < 1e-10);
}

TEST_CASE("nelder-mead handles Rosenbrock") {
  const auto f = [](const RealVector& x) {
    return 100.0 * (x(1) - x(0) * x(0)) * (x(1) - x(0) * x(0)) + (1.0 - x(0)) * (1.0 - x(0));
  };
  const RealVector x0 = (RealVector(2) << -1.2, 1.0).finished();
  const auto r = nelder_mead(f, x0, 0.2, 5000, 1e-16);
  CHECK(r.value < 1e-8);
}

TEST_CASE("seed derivation is deterministic and separates streams") {
  CHECK(derive_seed(42, 1, 2, 3) == derive_seed(42, 1, 2, 3));
  CHECK(derive_seed(42, 1, 2, 3) != derive_seed(42, 1, 2, 4));
  CHECK(derive_seed(42, 0, 1) != derive_seed(42, 1, 0));
  CHECK(derive_seed(42, 0) != derive_seed(43, 0));
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  for (int threads : {1, 2, 4, 0}) {
    std::vector<int> hits(57, 0);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 57);
  }
  CHECK_THROWS_AS(parallel_for(8, 3,
                               [](std::size_t i) {
                                 if (i == 5) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("unitary chart") {
  for (int d = 2; d <= 5; ++d) {
    std::vector<double> zero(chart_size(d), 0.0);
    CHECK(frob(unitary_from_params(zero, d), Matrix::Identity(d, d)) < 1e-15);
    std::vector<double> p(chart_size(d));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = 0.3 * std::sin(1.0 + 2.0 * i);
    const Matrix u = unitary_from_params(p, d);
    CHECK(frob(u.adjoint() * u, Matrix::Identity(d, d)) < 1e-13);
    // Off-diagonal generator: no pure diagonal phases at first order.
    std::vector<double> tiny(chart_size(d), 0.0);
    tiny[0] = 1e-6;
    const Matrix v = unitary_from_params(tiny, d);
    CHECK(std::abs(v(0, 0) - 1.0) < 1e-11);
  }
}

TEST_CASE("frame search recovers a target basis up to phases") {
  const Matrix target = random_unitary(3, 5);
  const FrameObjective f = [&](std::span<const Matrix> frames) {
    const Matrix overlap = target.adjoint() * frames[0];
    double fid = 0.0;
    for (int k = 0; k < 3; ++k) fid += std::norm(overlap(k, k));
    return 3.0 - fid;
  };
  std::vector<std::vector<Matrix>> starts{{Matrix::Identity(3, 3)}};
  for (std::uint64_t s = 0; s < 4; ++s) starts.push_back({random_unitary(3, 100 + s)});
  FrameSearchSettings settings;
  settings.ftol = 1e-12;
  const auto one = minimize_over_frames(f, starts, settings);
  CHECK(one.best_value < 1e-6);
  CHECK(one.per_start_values.size() == starts.size());
  CHECK(*std::min_element(one.per_start_values.begin(), one.per_start_values.end()) == one.best_value);

  settings.threads = 4;
  const auto four = minimize_over_frames(f, starts, settings);
  CHECK(four.best_value == one.best_value);
  CHECK(four.per_start_values == one.per_start_values);
  CHECK(four.best_frames[0] == one.best_frames[0]);
}
