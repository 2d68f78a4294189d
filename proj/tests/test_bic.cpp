#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "giantqed/analytic.hpp"
#include "giantqed/bic.hpp"
#include "giantqed/dde.hpp"

using namespace giantqed;
using std::numbers::pi;

namespace {

SystemConfig at_phase(Topology top, double eta, double phi, int legs = 2) {
  return build_config(top, legs, 1.0, eta, phi / eta);
}

}  // namespace

TEST_CASE("bound-state amplitudes") {
  auto sep = bic_state(at_phase(Topology::Separate, 0.2, 2 * pi));
  REQUIRE(sep.has_value());
  CHECK(std::norm(sep->eps1) == doctest::Approx(0.3125).epsilon(1e-14));
  CHECK(std::abs(sep->eps1 + sep->eps2) < 1e-15);
  CHECK(sep->condition == "2n*pi");

  auto bra = bic_state(at_phase(Topology::Braided, 0.2, 2 * pi));
  REQUIRE(bra.has_value());
  CHECK(std::norm(bra->eps1) == doctest::Approx(1 / 2.4).epsilon(1e-14));
  CHECK(std::abs(bra->eps1 + bra->eps2) < 1e-15);

  auto odd = bic_state(at_phase(Topology::Separate, 0.2, 3 * pi));
  REQUIRE(odd.has_value());
  CHECK(std::norm(odd->eps1) == doctest::Approx(1 / 2.4).epsilon(1e-14));
  CHECK(odd->condition == "(2n+1)*pi");

  CHECK_FALSE(bic_state(at_phase(Topology::Braided, 0.2, 3 * pi)).has_value());
  CHECK_FALSE(bic_state(at_phase(Topology::Braided, 0.2, 2.5 * pi)).has_value());
  CHECK_FALSE(bic_state(at_phase(Topology::Separate, 0.2, 0.7)).has_value());
  CHECK_THROWS_AS(bic_state(at_phase(Topology::Separate, 0.2, 2 * pi, 3)), std::invalid_argument);
}

TEST_CASE("overlaps with initial states") {
  auto sep = *bic_state(at_phase(Topology::Separate, 0.2, 2 * pi));
  auto bra = *bic_state(at_phase(Topology::Braided, 0.2, 2 * pi));
  CHECK(overlap_with_initial(sep, InitialState::antisymmetric()) == doctest::Approx(0.625));
  CHECK(overlap_with_initial(bra, InitialState::antisymmetric()) == doctest::Approx(1 / 1.2));
  CHECK(overlap_with_initial(sep, InitialState::symmetric()) < 1e-30);
  CHECK(overlap_with_initial(bra, InitialState::symmetric()) < 1e-30);
  // single excitation on atom a: |eps1|^2
  CHECK(overlap_with_initial(sep, InitialState{}) == doctest::Approx(0.3125));
}

TEST_CASE("photon weight of the bound state") {
  auto sep = *bic_state(at_phase(Topology::Separate, 0.2, 2 * pi));
  CHECK(sep.field_weight() == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(sep.atomic_weight() + sep.field_weight() == doctest::Approx(1.0));
  auto bra = *bic_state(at_phase(Topology::Braided, 0.1, 2 * pi));
  CHECK(bra.field_weight() == doctest::Approx(0.1 / 1.1).epsilon(1e-14));
  auto sep1 = *bic_state(at_phase(Topology::Separate, 0.1, 2 * pi));
  CHECK(sep1.field_weight() == doctest::Approx(0.3 / 1.3).epsilon(1e-14));
}

TEST_CASE("quadrature of the field profile converges to the closed-form weight") {
  for (auto top : {Topology::Separate, Topology::Braided}) {
    for (double eta : {0.1, 0.2, 0.5}) {
      for (double phi : {2 * pi, 3 * pi, 4 * pi}) {
        auto cfg = at_phase(top, eta, phi);
        auto bic = bic_state(cfg);
        if (!bic) continue;
        const double d = cfg.spacing();
        // half-widths commensurate with the 4 pi / d period of the profile, so the
        // window error is a clean 1/lambda series
        const double period = 4 * pi / d;
        const double n1 = bic_field_norm(*bic, 16 * period);
        const double n2 = bic_field_norm(*bic, 32 * period);
        const double n4 = bic_field_norm(*bic, 64 * period);
        const double exact = bic->field_weight();
        // error halves with the window: O(1/lambda)
        CHECK((exact - n1) / (exact - n2) == doctest::Approx(2.0).epsilon(0.01));
        CHECK((exact - n2) / (exact - n4) == doctest::Approx(2.0).epsilon(0.01));
        CHECK(std::abs(2 * n2 - n1 - exact) < 1e-6);
        CHECK(std::abs(2 * n4 - n2 - exact) < 1e-6);
        // default window
        CHECK(std::abs(bic_field_norm(*bic) - exact) < 2e-3);
      }
    }
  }
}

TEST_CASE("profile is finite at resonance and symmetric about it") {
  for (auto top : {Topology::Separate, Topology::Braided}) {
    auto cfg = at_phase(top, 0.2, 2 * pi);
    auto bic = *bic_state(cfg);
    const double k0 = cfg.k0();
    const double at = bic.density(k0);
    CHECK(std::isfinite(at));
    CHECK(at > 0);
    for (double h : {1e-9, 1e-7, 1e-5})
      CHECK(bic.density(k0 + h) == doctest::Approx(at).epsilon(1e-6));
    for (double q : {0.3, 2.0, 17.0, 250.0}) {
      CHECK(bic.density(k0 + q) >= 0);
      CHECK(bic.density(k0 + q) == doctest::Approx(bic.density(k0 - q)).epsilon(1e-9));
    }
  }
}

TEST_CASE("sampled profile and cumulative norm") {
  auto cfg = at_phase(Topology::Separate, 0.2, 2 * pi);
  auto bic = *bic_state(cfg);
  std::vector<double> k;
  const double k0 = cfg.k0(), step = 0.01;
  for (int i = -20000; i <= 20000; ++i) k.push_back(k0 + i * step);  // hits k0 exactly
  auto prof = bic_field_profile(bic, k);
  REQUIRE(prof.k.size() == k.size());
  REQUIRE(prof.density.size() == k.size());
  CHECK(prof.cumulative.front() == 0.0);
  for (std::size_t i = 1; i < k.size(); ++i) CHECK(prof.cumulative[i] >= prof.cumulative[i - 1]);
  for (std::size_t i = 0; i < k.size(); i += 997) CHECK(std::isfinite(prof.density[i]));
  // window +-200 around k0 holds most of the photon weight
  CHECK(prof.cumulative.back() == doctest::Approx(bic.field_weight()).epsilon(5e-3));
  CHECK(prof.cumulative.back() < bic.field_weight());
}

TEST_CASE("existence coincides with a dark antisymmetric steady state") {
  for (auto top : {Topology::Separate, Topology::Braided}) {
    for (int i = 1; i <= 24; ++i) {
      const double phi = i * pi / 4;
      auto cfg = at_phase(top, 0.2, phi);
      auto bic = bic_state(cfg);
      auto rep = steady_state(cfg, InitialState::antisymmetric());
      CAPTURE(phi);
      CHECK(bic.has_value() == (rep.classification == SteadyClass::DarkBIC));
      if (bic) CHECK(overlap_with_initial(*bic, InitialState::antisymmetric()) ==
                     doctest::Approx(std::abs(rep.limit)).epsilon(1e-12));
    }
  }
}

TEST_CASE("long-time populations match the bound-state overlap") {
  for (auto top : {Topology::Separate, Topology::Braided}) {
    for (double eta : {0.1, 0.2}) {
      auto cfg = at_phase(top, eta, 2 * pi);
      auto bic = *bic_state(cfg);
      const double ov = overlap_with_initial(bic, InitialState::antisymmetric());
      auto rep = steady_state(cfg, InitialState::antisymmetric());
      CHECK(std::abs(ov * ov - rep.population()) < 1e-3);
      auto tr = integrate(cfg, InitialState::antisymmetric(), 80.0, 40, {40});
      CHECK(std::abs(ov * ov - tr.population(tr.size() - 1)) < 1e-3);
    }
  }
}
