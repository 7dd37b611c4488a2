#include "breatherlab/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace breatherlab::report {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void attach_meta(json& j, const MetaList& meta) {
  if (meta.empty()) return;
  json m = json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  j["config"] = m;
}

std::string meta_lines(const MetaList& meta) {
  std::string out;
  for (const auto& [k, v] : meta) out += "# " + k + " = " + v + "\n";
  return out;
}

}  // namespace

std::string to_json(const functionals::FunctionalReport& r, const MetaList& meta) {
  json j;
  j["M"] = r.M;
  j["P"] = r.P;
  j["E"] = r.E;
  j["F"] = r.F;
  j["frame"] = to_string(r.frame);
  j["t"] = r.t;
  attach_meta(j, meta);
  return j.dump(2);
}

std::string to_json(const variation::ResidualReport& r, const MetaList& meta) {
  json j;
  j["sup_residual"] = r.sup_residual;
  j["l2_residual"] = r.l2_residual;
  j["equation"] = variation::to_string(r.equation);
  j["resolution"] = {{"L", r.resolution.L}, {"N", r.resolution.N}};
  attach_meta(j, meta);
  return j.dump(2);
}

std::string to_json(const variation::HessianRestriction& h, const MetaList& meta) {
  json j;
  j["basis_size"] = h.basis_size;
  j["min_eigenvalue"] = h.min_eigenvalue;
  j["max_abs_eigenvalue"] = h.max_abs_eigenvalue;
  j["kernel_residuals"] = h.kernel_residuals;
  j["projected_action"] = h.projected_action;
  j["kernel_coordinates"] = h.kernel_coordinates;
  attach_meta(j, meta);
  return j.dump(2);
}

std::string to_json(const evolve::DiagnosticSeries& s, const MetaList& meta) {
  json j;
  j["times"] = s.times;
  j["M"] = s.M;
  j["E"] = s.E;
  if (!s.F.empty()) j["F"] = s.F;
  j["hs_norm"] = s.hs_norm;
  if (!s.orbital_distance.empty()) j["orbital_distance"] = s.orbital_distance;
  if (!s.mode_amplitudes.empty()) j["mode_amplitudes"] = s.mode_amplitudes;
  j["overflow"] = s.overflow;
  if (s.overflow) j["overflow_time"] = s.overflow_time;
  j["boundary_flagged"] = s.boundary_flagged;
  if (s.boundary_flagged) j["boundary_flag_time"] = s.boundary_flag_time;
  attach_meta(j, meta);
  return j.dump(2);
}

std::string diagnostics_csv(const evolve::DiagnosticSeries& s, const std::vector<int>& tracked,
                            const MetaList& meta) {
  std::string out = meta_lines(meta);
  out += "t,M,E";
  if (!s.F.empty()) out += ",F";
  out += ",hs_norm";
  if (!s.orbital_distance.empty()) out += ",orbital_distance";
  for (int m : tracked) out += ",mode_k" + std::to_string(m);
  out += "\n";
  for (size_t i = 0; i < s.records(); ++i) {
    out += format_double(s.times[i]) + "," + format_double(s.M[i]) + "," + format_double(s.E[i]);
    if (!s.F.empty()) out += "," + format_double(s.F[i]);
    out += "," + format_double(s.hs_norm[i]);
    if (!s.orbital_distance.empty()) out += "," + format_double(s.orbital_distance[i]);
    for (const auto& amps : s.mode_amplitudes) out += "," + format_double(amps[i]);
    out += "\n";
  }
  if (s.overflow) out += "# halted: overflow at t = " + format_double(s.overflow_time) + "\n";
  return out;
}

std::string field_csv(const ComplexField& f, const MetaList& meta) {
  std::string out = meta_lines(meta);
  out += "x,re_u,im_u,abs_u\n";
  for (int j = 0; j < f.size(); ++j) {
    const cplx v = f.values[j];
    out += format_double(f.grid.node(j)) + "," + format_double(v.real()) + "," +
           format_double(v.imag()) + "," + format_double(std::abs(v)) + "\n";
  }
  return out;
}

std::string matrix_csv(const SymmetricMatrix& m) {
  std::string out;
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      if (j) out += ",";
      out += format_double(m.at(i, j));
    }
    out += "\n";
  }
  return out;
}

}  // namespace breatherlab::report
