#include "scpulse/app/output.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "scpulse/app/config.hpp"

namespace scpulse::app {
namespace {

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const char* header) : out_(path, std::ios::binary) {
    if (!out_) throw ConfigError("cannot write " + path.string());
    out_ << header << '\n';
  }

  template <typename... Values>
  void row(Values... values) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(values), first = false), ...);
    out_ << '\n';
  }

 private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }

  std::ofstream out_;
};

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_lagrangian_csv(const std::filesystem::path& path, const LagrangianState& s) {
  CsvFile f(path, "xi,y,U,V,W,Q");
  for (std::size_t j = 0; j < s.size(); ++j) {
    f.row(s.U.node(j), s.y[j], s.U[j], s.V[j], s.W[j], s.Q[j]);
  }
}

void write_eulerian_csv(const std::filesystem::path& path, const EulerianField& e) {
  CsvFile f(path, "x,u,ux,ux_valid");
  for (std::size_t i = 0; i < e.size(); ++i) {
    f.row(e.u.node(i), e.u[i], e.ux[i], static_cast<int>(e.ux_valid[i]));
  }
}

void write_conserved_csv(const std::filesystem::path& path, std::span<const StepRecord> log) {
  CsvFile f(path, "t,E_tilde,F_tilde,inv_WV,inv_yxi,inv_Uxi,minV,minQ");
  for (const StepRecord& r : log) {
    f.row(r.t, r.Etilde, r.Ftilde, r.invariants.wv, r.invariants.yxi, r.invariants.uxi,
          r.invariants.min_v, r.invariants.min_q);
  }
}

void write_trace_csv(const std::filesystem::path& path, const CharTrace& trace,
                     const CharacteristicCheck& check) {
  CsvFile f(path, "t,beta,y_char,ode_residual");
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    f.row(trace.times[k], trace.beta[k], trace.ychar[k], check.ode_residuals[k]);
  }
}

void write_diff_csv(const std::filesystem::path& path, std::span<const DiffRow> rows) {
  CsvFile f(path, "t,linf_u,linf_ux");
  for (const DiffRow& r : rows) f.row(r.t, r.linf_u, r.linf_ux);
}

}  // namespace scpulse::app
