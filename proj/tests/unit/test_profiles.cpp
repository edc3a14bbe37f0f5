#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scpulse/profiles.hpp"

using namespace scpulse;

TEST_CASE("profile family names round trip") {
  for (auto f : {ProfileFamily::zero, ProfileFamily::constant, ProfileFamily::sine, ProfileFamily::multisine}) {
    CHECK(parse_profile_family(to_string(f)) == f);
  }
  CHECK_THROWS_AS(parse_profile_family("gauss"), std::invalid_argument);
}

TEST_CASE("profile parameters are range checked") {
  CHECK_THROWS_AS(Profile(ProfileSpec::sine(-0.1)), std::invalid_argument);
  CHECK_THROWS_AS(Profile(ProfileSpec::sine(0.1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(Profile(ProfileSpec::multisine({0.1, 0.2}, {1})), std::invalid_argument);
  CHECK_THROWS_AS(Profile(ProfileSpec::multisine({}, {})), std::invalid_argument);
  CHECK_THROWS_AS(Profile(ProfileSpec::constant_value(NAN)), std::invalid_argument);
  CHECK_NOTHROW(Profile(ProfileSpec::sine(0.0)));
}

TEST_CASE("closed-form values and slopes") {
  const double pi = std::numbers::pi;
  const Profile s(ProfileSpec::sine(0.3, 2));
  CHECK(s.value(0.1) == doctest::Approx(0.3 * std::sin(0.4 * pi)));
  CHECK(s.slope(0.1) == doctest::Approx(0.3 * 4 * pi * std::cos(0.4 * pi)));

  const Profile m(ProfileSpec::multisine({0.1, 0.05}, {1, 3}));
  CHECK(m.value(0.2) == doctest::Approx(0.1 * std::sin(0.4 * pi) + 0.05 * std::sin(1.2 * pi)));
  CHECK(m.slope(0.2) == doctest::Approx(0.1 * 2 * pi * std::cos(0.4 * pi) + 0.05 * 6 * pi * std::cos(1.2 * pi)));

  const Profile c(ProfileSpec::constant_value(0.7));
  CHECK(c.value(0.3) == 0.7);
  CHECK(c.slope(0.3) == 0.0);
  const Profile z(ProfileSpec::zero());
  CHECK(z.value(0.3) == 0.0);
}

TEST_CASE("descriptions use the shortest round-trip numbers") {
  CHECK(ProfileSpec::sine(0.1).describe() == "sine(0.1*sin(2pi*1x))");
  CHECK(ProfileSpec::multisine({0.5, 0.3}, {1, 2}).describe() == "multisine(0.5*sin(2pi*1x) + 0.3*sin(2pi*2x))");
  CHECK(ProfileSpec::constant_value(0.25).describe() == "constant(c=0.25)");
  CHECK(ProfileSpec::zero().describe() == "zero");
}
