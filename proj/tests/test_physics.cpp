#include <doctest.h>

#include <cmath>
#include <random>

#include "esdg/physics.hpp"

using namespace esdg;

namespace {

StateVec random_state(const SystemModel& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.5, 3.0), vel(-1.5, 1.5);
  const double a = pos(rng), u = vel(rng), v = m.dim() == 2 ? vel(rng) : 0.0;
  if (m.system() == System::SWE) {
    return m.dim() == 1 ? StateVec{a, a * u, 0, 0} : StateVec{a, a * u, a * v, 0};
  }
  const double p = pos(rng);
  const double E = p / (m.gamma() - 1) + 0.5 * a * (u * u + v * v);
  return m.dim() == 1 ? StateVec{a, a * u, E, 0} : StateVec{a, a * u, a * v, E};
}

double dotn(const StateVec& a, const StateVec& b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

std::vector<SystemModel> all_models() {
  return {SystemModel::swe(1), SystemModel::swe(2), SystemModel::euler(1), SystemModel::euler(2),
          SystemModel::swe(2, 9.81), SystemModel::euler(2, 5.0 / 3.0)};
}

}  // namespace

TEST_SUITE("physics") {
  TEST_CASE("log mean against the direct formula") {
    // direct formula in long double away from the diagonal
    for (double b : {1.5, 2.0, 10.0, 1e3}) {
      const long double ref = (b - 1.0L) / (std::log((long double)b) - 0.0L);
      CHECK(log_mean(1.0, b) == doctest::Approx((double)ref).epsilon(1e-14));
      CHECK(log_mean(b, 1.0) == doctest::Approx((double)ref).epsilon(1e-14));
    }
    CHECK(log_mean(2.5, 2.5) == doctest::Approx(2.5).epsilon(1e-16));
  }

  TEST_CASE("log mean is smooth across the series switch") {
    // a (1 + e): the log mean is a (1 + e/2 - e^2/12 + e^3/24 - ...)
    const double a = 3.0;
    for (double e : {1e-9, 1e-6, 9.9e-5, 1.01e-4, 1e-3}) {
      const double series = a * (1 + e / 2 - e * e / 12 + e * e * e / 24 - 19 * std::pow(e, 4) / 720);
      CHECK(log_mean(a, a * (1 + e)) == doctest::Approx(series).epsilon(2e-15));
    }
  }

  TEST_CASE("log mean rejects nonpositive arguments") {
    CHECK_THROWS_AS(log_mean(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(log_mean(1.0, -2.0), DomainError);
  }

  TEST_CASE("entropy variables are the gradient of the entropy") {
    std::mt19937_64 rng(7);
    for (const auto& m : all_models()) {
      for (int trial = 0; trial < 20; ++trial) {
        const StateVec u = random_state(m, rng);
        const StateVec v = m.entropy_variables(u);
        for (int c = 0; c < m.ncons(); ++c) {
          const double h = 1e-6 * std::max(1.0, std::abs(u[c]));
          StateVec up = u, um = u;
          up[c] += h;
          um[c] -= h;
          const double fd = (m.entropy(up) - m.entropy(um)) / (2 * h);
          CHECK(v[c] == doctest::Approx(fd).epsilon(1e-7).scale(1.0));
        }
      }
    }
  }

  TEST_CASE("conservative_from_entropy inverts entropy_variables") {
    std::mt19937_64 rng(11);
    for (const auto& m : all_models()) {
      for (int trial = 0; trial < 50; ++trial) {
        const StateVec u = random_state(m, rng);
        const StateVec w = m.conservative_from_entropy(m.entropy_variables(u));
        for (int c = 0; c < m.ncons(); ++c) CHECK(w[c] == doctest::Approx(u[c]).epsilon(1e-12).scale(1.0));
      }
    }
  }

  TEST_CASE("inadmissible entropy variables are rejected") {
    const SystemModel swe = SystemModel::swe(1);
    // h = (v0 + v1^2/2) / g <= 0
    CHECK_THROWS_AS(swe.conservative_from_entropy({-1.0, 0.5, 0, 0}), DomainError);
    const SystemModel eu = SystemModel::euler(1);
    CHECK_THROWS_AS(eu.conservative_from_entropy({1.0, 0.0, 0.5, 0}), DomainError);
  }

  TEST_CASE("EC flux is consistent and symmetric") {
    std::mt19937_64 rng(3);
    for (const auto& m : all_models()) {
      for (int trial = 0; trial < 50; ++trial) {
        const StateVec a = random_state(m, rng), b = random_state(m, rng);
        const double nx = 0.6, ny = m.dim() == 2 ? 0.8 : 0.0;
        const StateVec f = m.ec_flux_normal(a, a, nx, ny);
        const StateVec fe = m.normal_flux(a, nx, ny);
        for (int c = 0; c < m.ncons(); ++c) CHECK(f[c] == doctest::Approx(fe[c]).epsilon(1e-13).scale(1.0));
        const StateVec fab = m.ec_flux_normal(a, b, nx, ny), fba = m.ec_flux_normal(b, a, nx, ny);
        for (int c = 0; c < m.ncons(); ++c) CHECK(fab[c] == doctest::Approx(fba[c]).epsilon(1e-13).scale(1.0));
      }
    }
  }

  TEST_CASE("EC flux satisfies the Tadmor condition in each direction") {
    std::mt19937_64 rng(5);
    for (const auto& m : all_models()) {
      for (int trial = 0; trial < 200; ++trial) {
        const StateVec a = random_state(m, rng), b = random_state(m, rng);
        const StateVec va = m.entropy_variables(a), vb = m.entropy_variables(b);
        for (int dir = 0; dir < m.dim(); ++dir) {
          const StateVec f = m.ec_flux(a, b, dir);
          StateVec dv{};
          for (int c = 0; c < m.ncons(); ++c) dv[c] = va[c] - vb[c];
          const double lhs = dotn(dv, f, m.ncons());
          const double rhs = m.entropy_potential(a, dir) - m.entropy_potential(b, dir);
          const double scale = std::abs(dotn(va, f, m.ncons())) + std::abs(dotn(vb, f, m.ncons())) + 1.0;
          CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
        }
      }
    }
  }

  TEST_CASE("entropy flux and potential") {
    std::mt19937_64 rng(9);
    for (const auto& m : all_models()) {
      const StateVec u = random_state(m, rng);
      for (int dir = 0; dir < m.dim(); ++dir) {
        const double un = u[1 + dir] / u[0];
        double expect;
        if (m.system() == System::SWE) {
          // F = (1/2 h |u|^2 + g h^2) u_dir
          double ke = 0.0;
          for (int d = 0; d < m.dim(); ++d) ke += u[1 + d] * u[1 + d] / u[0];
          expect = (0.5 * ke + m.g() * u[0] * u[0]) * un;
          CHECK(m.entropy_potential(u, dir) == doctest::Approx(0.5 * m.g() * u[0] * u[0] * un));
        } else {
          // S = -rho s, s = log p - gamma log rho: F = S u_dir, psi = (gamma - 1) rho u_dir
          const double p = m.pressure(u);
          expect = -u[0] * (std::log(p) - m.gamma() * std::log(u[0])) * un;
          CHECK(m.entropy_potential(u, dir) == doctest::Approx((m.gamma() - 1.0) * u[0] * un));
        }
        CHECK(m.entropy_flux(u, dir) == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("SWE reference values") {
    const SystemModel m = SystemModel::swe(2);
    const StateVec u{2.0, 2.0, -1.0, 0};
    const StateVec f = m.physical_flux(u, 0);
    CHECK(f[0] == doctest::Approx(2.0));
    CHECK(f[1] == doctest::Approx(2.0 + 2.0));  // h u^2 + g h^2 / 2
    CHECK(f[2] == doctest::Approx(-1.0));
    CHECK(m.entropy(u) == doctest::Approx(0.5 * (4.0 + 1.0) / 2.0 + 0.5 * 4.0));
    CHECK(m.wavespeed(u) == doctest::Approx(std::sqrt(1.25) + std::sqrt(2.0)));
  }

  TEST_CASE("Euler reference values") {
    const SystemModel m = SystemModel::euler(1);
    // rho = 1, u = 1, p = 1: E = 1 / 0.4 + 0.5
    const StateVec u{1.0, 1.0, 3.0, 0};
    CHECK(m.pressure(u) == doctest::Approx(1.0));
    const StateVec f = m.physical_flux(u, 0);
    CHECK(f[0] == doctest::Approx(1.0));
    CHECK(f[1] == doctest::Approx(2.0));
    CHECK(f[2] == doctest::Approx(4.0));
    CHECK(m.wavespeed(u) == doctest::Approx(1.0 + std::sqrt(1.4)));
    CHECK(m.entropy(u) == doctest::Approx(0.0));
  }

  TEST_CASE("Lax-Friedrichs term dissipates entropy") {
    std::mt19937_64 rng(13);
    for (const auto& m : all_models()) {
      for (int trial = 0; trial < 50; ++trial) {
        const StateVec a = random_state(m, rng), b = random_state(m, rng);
        const StateVec base{};
        const StateVec lf = m.lax_friedrichs(a, b, base);
        const StateVec va = m.entropy_variables(a), vb = m.entropy_variables(b);
        StateVec dv{};
        for (int c = 0; c < m.ncons(); ++c) dv[c] = vb[c] - va[c];
        // (vR - vL) . (-(lambda/2)(uR - uL)) <= 0 by convexity
        CHECK(dotn(dv, lf, m.ncons()) <= 1e-14);
      }
    }
  }

  TEST_CASE("wall states") {
    const SystemModel m1 = SystemModel::swe(1);
    const StateVec w = m1.mirror_state({2.0, 3.0, 0, 0});
    CHECK(w[0] == 2.0);
    CHECK(w[1] == -3.0);
    const SystemModel m2 = SystemModel::euler(2);
    const StateVec u{1.0, 0.3, 0.4, 3.0};
    const double n = 1.0 / std::sqrt(2.0);
    const StateVec r = m2.reflect_state(u, n, n);
    CHECK(r[0] == u[0]);
    CHECK(r[3] == u[3]);
    // normal momentum flips, tangential is kept
    CHECK((r[1] + r[2]) * n == doctest::Approx(-(u[1] + u[2]) * n));
    CHECK((r[1] - r[2]) * n == doctest::Approx((u[1] - u[2]) * n));
    CHECK_THROWS_AS(m2.mirror_state(u), std::invalid_argument);
  }

  TEST_CASE("1D-2D state transforms") {
    const SystemModel m = SystemModel::euler(2);
    const TransformR R = TransformR::from_direction(3.0, 4.0);
    CHECK(R.n1 == doctest::Approx(0.6));
    CHECK(R.n2 == doctest::Approx(0.8));
    const StateVec u2 = m.lift_1d_to_2d({1.0, 2.0, 5.0, 0}, R);
    CHECK(u2[1] == doctest::Approx(1.2));
    CHECK(u2[2] == doctest::Approx(1.6));
    CHECK(u2[3] == 5.0);
    const StateVec u1 = m.project_2d_to_1d(u2, R);
    CHECK(u1[1] == doctest::Approx(2.0));
    CHECK(u1[2] == 5.0);
  }

  TEST_CASE("admissibility") {
    const SystemModel m = SystemModel::euler(2);
    CHECK(m.admissible({1.0, 0.0, 0.0, 2.5}));
    CHECK_FALSE(m.admissible({-1.0, 0.0, 0.0, 2.5}));
    CHECK_FALSE(m.admissible({1.0, 3.0, 0.0, 2.5}));  // negative pressure
    CHECK_THROWS_AS(m.check_admissible({1.0, 3.0, 0.0, 2.5}), AdmissibilityError);
    CHECK_FALSE(SystemModel::swe(1).admissible({0.0, 0.0, 0, 0}));
    CHECK_THROWS_AS(system_from_string("mhd"), std::invalid_argument);
  }
}
