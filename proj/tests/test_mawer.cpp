#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qbattery/capacitance.hpp"
#include "qbattery/mawer.hpp"

using namespace qbattery;

TEST_CASE("closed forms") {
  for (auto f : {MawerFlavor::kUnrestricted, MawerFlavor::kSeparable, MawerFlavor::kLocal, MawerFlavor::kLocalSeparable})
    CHECK(mawer_closed_form(QubitChannel::amplitude_damping(0.3), f) == doctest::Approx(0.7));
  for (double g : {0.0, 0.3, 0.9, 0.999})
    CHECK(mawer_closed_form(QubitChannel::generalized_amplitude_damping(g, 0.5), MawerFlavor::kLocalSeparable) ==
          doctest::Approx(1.0));
  CHECK(mawer_closed_form(QubitChannel::generalized_amplitude_damping(0.5, 0.25), MawerFlavor::kSeparable) ==
        doctest::Approx(2.0 / 3.0));
  CHECK(mawer_closed_form(QubitChannel::dephased_amplitude_damping(0.5, 0.2), MawerFlavor::kLocal) ==
        doctest::Approx(0.6));
  CHECK(mawer_closed_form(QubitChannel::dephased_amplitude_damping(0.1, 0.2), MawerFlavor::kLocal) ==
        doctest::Approx(0.72));
  CHECK(mawer_closed_form(QubitChannel::dephased_amplitude_damping(1.0, 0.7), MawerFlavor::kLocal) == 0.0);
}

TEST_CASE("flavors without an established value") {
  CHECK_THROWS_AS(mawer_closed_form(QubitChannel::generalized_amplitude_damping(0.5, 0.2), MawerFlavor::kUnrestricted),
                  NotEstablishedError);
  CHECK_THROWS_AS(mawer_closed_form(QubitChannel::dephased_amplitude_damping(0.5, 0.2), MawerFlavor::kUnrestricted),
                  NotEstablishedError);
  CHECK_THROWS_AS(mawer_closed_form(QubitChannel::dephased_amplitude_damping(0.5, 0.2), MawerFlavor::kSeparable),
                  NotEstablishedError);
}

TEST_CASE("numeric limit agrees with the closed form") {
  CHECK(mawer_numeric(QubitChannel::amplitude_damping(0.5)) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(mawer_numeric(QubitChannel::generalized_amplitude_damping(0.5, 0.25)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(mawer_numeric(QubitChannel::amplitude_damping(0.0)) == doctest::Approx(1.0).epsilon(1e-12));

  MawerNumericOptions envelope;
  envelope.route = ChiRoute::kEnvelope;
  for (double g : {0.05, 0.3, 0.6, 0.947}) {
    for (double eta : {0.0, 0.2, 0.5}) {
      const auto ch = QubitChannel::generalized_amplitude_damping(g, eta);
      const double ref = mawer_closed_form(ch, MawerFlavor::kLocalSeparable);
      CHECK(std::abs(mawer_numeric(ch) - ref) < 1e-6);
      CHECK(std::abs(mawer_numeric(ch, envelope) - ref) < 1e-6);
    }
    for (double k : {0.0, 0.1, 0.8}) {
      const auto ch = QubitChannel::dephased_amplitude_damping(k, g);
      if (std::abs(k - g / (1 - g)) < 1e-3) continue;
      const double ref = mawer_closed_form(ch, MawerFlavor::kLocal);
      CHECK(std::abs(mawer_numeric(ch) - ref) < 1e-6);
      CHECK(std::abs(mawer_numeric(ch, envelope) - ref) < 1e-6);
    }
  }
  MawerNumericOptions bad;
  bad.start = 0.0;
  CHECK_THROWS_AS(mawer_numeric(QubitChannel::amplitude_damping(0.5), bad), ValidationError);
}

TEST_CASE("chi is linear near zero with the closed-form slope") {
  for (double g : {0.2, 0.5, 0.8}) {
    const auto ch = QubitChannel::generalized_amplitude_damping(g, 0.3);
    const double slope = mawer_closed_form(ch, MawerFlavor::kLocalSeparable);
    // least-squares fit of chi(e) = a e + b e^2 on e <= 1e-2
    double s22 = 0, s23 = 0, s33 = 0, s2y = 0, s3y = 0;
    for (double e : oracle::linspace(1e-4, 1e-2, 50)) {
      const double y = chi(ch, e);
      s22 += e * e;
      s23 += e * e * e;
      s33 += e * e * e * e;
      s2y += e * y;
      s3y += e * e * y;
    }
    const double a = (s2y * s33 - s3y * s23) / (s22 * s33 - s23 * s23);
    CHECK(std::abs(a - slope) < 1e-4);
  }
}

TEST_CASE("classical strategies") {
  const auto adc = QubitChannel::amplitude_damping(0.3);
  CHECK(classical_strategy_ratio(adc, Extraction::kLocal) == doctest::Approx(0.4));
  CHECK(classical_strategy_ratio(adc, Extraction::kNonlocal) == doctest::Approx(0.7));
  CHECK(classical_strategy_ratio(QubitChannel::amplitude_damping(0.7), Extraction::kLocal) ==
        doctest::Approx(0.0));

  const auto gadc = QubitChannel::generalized_amplitude_damping(0.5, 0.3);
  const double w = classical_strategy_ratio(gadc);
  CHECK(w < 5.0 / 7.0);
  CHECK(w > 0.0);
  // independent evaluation: output of |1> has excited population 1 - g(1 - eta)
  const double p1 = 1 - 0.5 * 0.7;
  const double beta = std::log((1 - 0.5 * 0.3) / (0.5 * 0.3));
  const double entropy = -p1 * std::log(p1) - (1 - p1) * std::log(1 - p1);
  const double z = 1 + std::exp(-beta);
  CHECK(w == doctest::Approx(p1 - (entropy - std::log(z)) / beta).epsilon(1e-12));

  for (double g : {0.1, 0.4, 0.9})
    for (double eta : {0.05, 0.25, 0.5}) {
      const auto ch = QubitChannel::generalized_amplitude_damping(g, eta);
      CHECK(mawer_closed_form(ch, MawerFlavor::kLocalSeparable) - classical_strategy_ratio(ch) > 0.0);
    }
  CHECK(classical_strategy_ratio(QubitChannel::generalized_amplitude_damping(1.0, 0.5)) == 0.0);
  CHECK_THROWS_AS(classical_strategy_ratio(QubitChannel::dephased_amplitude_damping(0.2, 0.2)), ValidationError);
}

TEST_CASE("thermal noise raises the ratio") {
  for (double g : {0.1, 0.5, 0.9})
    for (double eta : {0.01, 0.2, 0.5})
      CHECK(mawer_closed_form(QubitChannel::generalized_amplitude_damping(g, eta), MawerFlavor::kLocalSeparable) >
            1.0 - g);
}

TEST_CASE("dephasing decides whether coherence helps") {
  for (double g : {0.1, 0.2, 0.3, 0.4}) {
    const double boundary = g / (1 - g);
    auto diff = [&](double k) {
      return (1 - g) * (1 - k) - std::max(0.0, 1 - 2 * g);
    };
    CHECK(diff(boundary * 0.9) > 0.0);
    CHECK(diff(std::min(1.0, boundary * 1.1)) < 0.0);
    CHECK(std::abs(diff(boundary)) < 1e-14);
  }
}

TEST_CASE("relative gap") {
  CHECK(relative_gap(QubitChannel::generalized_amplitude_damping(0.0, 0.3)).value() == doctest::Approx(0.0));
  CHECK_FALSE(relative_gap(QubitChannel::generalized_amplitude_damping(1.0, 0.2)).has_value());
  const auto ch = QubitChannel::generalized_amplitude_damping(0.5, 0.5);
  const double r = max_output_ergotropy(ch, 1.0) / optimal_input_energy(ch, 1.0);
  CHECK(relative_gap(ch).value() == doctest::Approx((1.0 - r) / r));
  CHECK_THROWS_AS(relative_gap(QubitChannel::amplitude_damping(0.5)), ValidationError);
}

TEST_CASE("analysis bundle") {
  const auto r = analyze_mawer(QubitChannel::generalized_amplitude_damping(0.4, 0.2));
  CHECK(r.flavor == MawerFlavor::kLocalSeparable);
  CHECK(std::abs(r.numeric_limit - r.closed_form) < 1e-6);
  REQUIRE(r.classical_ratio.has_value());
  CHECK(*r.classical_ratio <= r.closed_form + 1e-9);
  CHECK_FALSE(analyze_mawer(QubitChannel::dephased_amplitude_damping(0.2, 0.3), MawerFlavor::kLocal)
                  .classical_ratio.has_value());
  CHECK(to_string(MawerFlavor::kLocalSeparable) == "loc_sep");
}
