#include "scpulse/profiles.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace scpulse {

std::string_view to_string(ProfileFamily f) noexcept {
  switch (f) {
    case ProfileFamily::zero: return "zero";
    case ProfileFamily::constant: return "constant";
    case ProfileFamily::sine: return "sine";
    case ProfileFamily::multisine: return "multisine";
  }
  return "unknown";
}

ProfileFamily parse_profile_family(std::string_view name) {
  if (name == "zero") return ProfileFamily::zero;
  if (name == "constant") return ProfileFamily::constant;
  if (name == "sine") return ProfileFamily::sine;
  if (name == "multisine") return ProfileFamily::multisine;
  throw std::invalid_argument("unknown profile family '" + std::string(name) + "'");
}

void ProfileSpec::validate() const {
  if (!std::isfinite(constant)) throw std::invalid_argument("constant must be finite");
  const bool periodic = family == ProfileFamily::sine || family == ProfileFamily::multisine;
  if (!periodic) return;
  if (amplitudes.empty()) throw std::invalid_argument("profile needs at least one amplitude");
  if (family == ProfileFamily::sine && amplitudes.size() != 1) {
    throw std::invalid_argument("sine profile takes exactly one amplitude");
  }
  if (modes.size() != amplitudes.size()) {
    throw std::invalid_argument("amplitude and mode lists differ in length");
  }
  for (double a : amplitudes) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("amplitude must be >= 0");
  }
  for (int k : modes) {
    if (k < 1) throw std::invalid_argument("mode numbers must be >= 1");
  }
}

namespace {

// shortest text that reads back to the same double
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string ProfileSpec::describe() const {
  std::ostringstream os;
  os << to_string(family);
  switch (family) {
    case ProfileFamily::zero: break;
    case ProfileFamily::constant: os << "(c=" << shortest(constant) << ")"; break;
    case ProfileFamily::sine:
    case ProfileFamily::multisine:
      os << "(";
      for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (i) os << " + ";
        os << shortest(amplitudes[i]) << "*sin(2pi*" << modes[i] << "x)";
      }
      os << ")";
      break;
  }
  return os.str();
}

Profile::Profile(ProfileSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

double Profile::value(double x) const {
  switch (spec_.family) {
    case ProfileFamily::zero: return 0.0;
    case ProfileFamily::constant: return spec_.constant;
    case ProfileFamily::sine:
    case ProfileFamily::multisine: {
      double v = 0.0;
      for (std::size_t i = 0; i < spec_.amplitudes.size(); ++i) {
        v += spec_.amplitudes[i] * std::sin(2.0 * std::numbers::pi * spec_.modes[i] * x);
      }
      return v;
    }
  }
  return 0.0;
}

double Profile::slope(double x) const {
  switch (spec_.family) {
    case ProfileFamily::zero:
    case ProfileFamily::constant: return 0.0;
    case ProfileFamily::sine:
    case ProfileFamily::multisine: {
      double v = 0.0;
      for (std::size_t i = 0; i < spec_.amplitudes.size(); ++i) {
        const double w = 2.0 * std::numbers::pi * spec_.modes[i];
        v += spec_.amplitudes[i] * w * std::cos(w * x);
      }
      return v;
    }
  }
  return 0.0;
}

}  // namespace scpulse
