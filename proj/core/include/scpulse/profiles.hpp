#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace scpulse {

enum class ProfileFamily { zero, constant, sine, multisine };

std::string_view to_string(ProfileFamily f) noexcept;
ProfileFamily parse_profile_family(std::string_view name);

/// Closed-form periodic initial profile:
///   zero:      u0 = 0
///   constant:  u0 = c
///   sine:      u0 = a sin(2 pi k x)
///   multisine: u0 = sum_i a_i sin(2 pi k_i x)
struct ProfileSpec {
  ProfileFamily family = ProfileFamily::zero;
  std::vector<double> amplitudes;
  std::vector<int> modes;
  double constant = 0.0;

  static ProfileSpec zero() { return {}; }
  static ProfileSpec constant_value(double c) { return {ProfileFamily::constant, {}, {}, c}; }
  static ProfileSpec sine(double amplitude, int mode = 1) {
    return {ProfileFamily::sine, {amplitude}, {mode}, 0.0};
  }
  static ProfileSpec multisine(std::vector<double> amplitudes, std::vector<int> modes) {
    return {ProfileFamily::multisine, std::move(amplitudes), std::move(modes), 0.0};
  }

  /// Throws std::invalid_argument on negative amplitudes, modes < 1, or
  /// mismatched list lengths.
  void validate() const;
  std::string describe() const;
};

class Profile {
 public:
  explicit Profile(ProfileSpec spec);

  double value(double x) const;
  double slope(double x) const;
  const ProfileSpec& spec() const noexcept { return spec_; }

 private:
  ProfileSpec spec_;
};

}  // namespace scpulse
