// Copyright 2026 cstarlab contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>

#include "dilation.hpp"
#include "io.hpp"

namespace cstarlab {

// ---------------------------------------------------------------------
// Curated end-to-end scenarios. Each one builds a fixed example in
// code, runs the relevant pipeline, asserts the expected structure, and
// renders a deterministic plain-text report (plus CSV when there is a
// numeric sweep worth plotting). Reports are byte-stable for a fixed
// seed.
// ---------------------------------------------------------------------

struct ScenarioSpec {
  std::string name;
  std::map<std::string, double> parameters;
};

struct ScenarioResult {
  std::string name;
  std::string report;
  std::string csv;
  bool pass = false;
};

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "t2_in_m2",        "pi_oplus_id_t2",      "t2_twist_chain",
      "toeplitz_finite", "semidirichlet_probe", "lattice_maps_roundtrip"};
  return names;
}

namespace detail {

// Parameter handling: fixed defaults per scenario, overrides must name
// a known parameter.
class ParamReader {
 public:
  ParamReader(const ScenarioSpec& spec,
              std::map<std::string, double> defaults)
      : values_(std::move(defaults)) {
    for (const auto& [key, value] : spec.parameters) {
      auto it = values_.find(key);
      if (it == values_.end())
        throw ParseError("scenario " + spec.name +
                         ": unknown parameter '" + key + "'");
      it->second = value;
    }
  }
  double get(const std::string& key) const { return values_.at(key); }
  Eigen::Index get_index(const std::string& key) const {
    double v = values_.at(key);
    if (v < 0 || v != std::floor(v))
      throw ParseError("parameter '" + key + "' must be a nonnegative integer");
    return static_cast<Eigen::Index>(v);
  }

 private:
  std::map<std::string, double> values_;
};

inline OperatorAlgebra triangular_in_m2(const ToleranceConfig& tol) {
  BlockShape amb;
  amb.sizes = {2};
  std::vector<BlockElement> gens{BlockElement::unit(amb, 0, 0, 0),
                                 BlockElement::unit(amb, 0, 0, 1),
                                 BlockElement::unit(amb, 0, 1, 1)};
  return generate_algebra(amb, gens, tol);
}

inline OperatorAlgebra compressed_triangular(const ToleranceConfig& tol) {
  BlockShape amb;
  amb.sizes = {1, 2};
  BlockElement g0 = BlockElement::zero(amb);
  g0.blocks[0](0, 0) = 1.0;
  g0.blocks[1](0, 0) = 1.0;
  BlockElement g1 = BlockElement::zero(amb);
  g1.blocks[1](0, 1) = 1.0;
  BlockElement g2 = BlockElement::zero(amb);
  g2.blocks[1](1, 1) = 1.0;
  return generate_algebra(amb, {g0, g1, g2}, tol);
}

inline std::string shape_string(const BlockShape& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.sizes.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.sizes[i]);
  }
  return out + "]";
}

inline std::string ideal_string(const Ideal& ideal) {
  if (ideal.members.empty()) return "empty";
  std::string out;
  for (std::size_t b : ideal.members) {
    if (!out.empty()) out += ",";
    out += "block " + std::to_string(b + 1);  // report text is 1-indexed
  }
  return out;
}

inline const char* yn(bool b) { return b ? "yes" : "no"; }

class ReportBuilder {
 public:
  void line(const std::string& s) { text_ += s + "\n"; }
  void check(const std::string& what, bool ok) {
    pass_ = pass_ && ok;
    text_ += std::string("  [") + (ok ? "ok" : "FAIL") + "] " + what + "\n";
  }
  std::string finish() {
    text_ += std::string("RESULT: ") + (pass_ ? "PASS" : "FAIL") + "\n";
    return text_;
  }
  bool pass() const { return pass_; }

 private:
  std::string text_;
  bool pass_ = true;
};

// ----------------------------------------------------------------- //

inline ScenarioResult scenario_t2_in_m2(const ScenarioSpec& spec,
                                        const ToleranceConfig& tol) {
  ParamReader params(spec, {});
  (void)params;
  ScenarioResult out;
  out.name = spec.name;
  ReportBuilder rb;
  rb.line("scenario: t2_in_m2");
  OperatorAlgebra A = triangular_in_m2(tol);
  rb.line("algebra dimension: " + std::to_string(A.dim()));
  rb.check("dimension is 3", A.dim() == 3);
  Ideal s = shilov_ideal(A, tol);
  rb.line("shilov ideal: " + ideal_string(s));
  rb.check("shilov ideal is empty", s.members.empty());
  Cover env = envelope(A, tol);
  rb.line("envelope target: " + shape_string(env.target));
  rb.check("envelope is M2",
           env.target.sizes == std::vector<Eigen::Index>{2});
  bool dir = is_dirichlet(A, tol), semi = is_semi_dirichlet(A, tol),
       sa = is_selfadjoint(A);
  rb.line(std::string("dirichlet: ") + yn(dir) + " | semi-dirichlet: " +
          yn(semi) + " | selfadjoint: " + yn(sa));
  rb.check("dirichlet but not selfadjoint", dir && semi && !sa);
  out.report = rb.finish();
  out.pass = rb.pass();
  return out;
}

inline ScenarioResult scenario_pi_oplus_id_t2(const ScenarioSpec& spec,
                                              const ToleranceConfig& tol) {
  ParamReader params(spec, {});
  (void)params;
  ScenarioResult out;
  out.name = spec.name;
  ReportBuilder rb;
  rb.line("scenario: pi_oplus_id_t2");
  OperatorAlgebra A = compressed_triangular(tol);
  rb.check("algebra dimension is 3", A.dim() == 3);

  Ideal s = shilov_ideal(A, tol);
  rb.line("shilov ideal: " + ideal_string(s));
  bool shilov_ok = s.members == std::set<std::size_t>{0};
  rb.check("shilov ideal is the scalar block", shilov_ok);

  Cover env = envelope(A, tol);
  rb.line("envelope target: " + shape_string(env.target));
  bool env_ok = env.target.sizes == std::vector<Eigen::Index>{2};
  rb.check("envelope is M2", env_ok);

  ShilovExtension ext = extend_by_shilov(A, tol);
  rb.line("extended dimension: " + std::to_string(ext.extended.dim()));
  bool ext_ok = ext.extended.dim() == 4 &&
                ext.extended.dim() ==
                    A.dim() + static_cast<Eigen::Index>(ext.ideal_units.size());
  rb.check("extension is 4-dimensional with trivial intersection", ext_ok);
  rb.check("extension is not selfadjoint", !is_selfadjoint(ext.extended));
  rb.check("extension is dirichlet (scalar plus triangular)",
           is_dirichlet(ext.extended, tol));
  rb.check("extension has empty shilov ideal",
           shilov_ideal(ext.extended, tol).members.empty());

  // One roundtrip in each direction through the cover maps.
  Cover d_env = envelope(ext.base, tol);
  Cover qnd = map_Q(ext, map_N(ext, d_env, tol), tol);
  CompareResult r1 = compare(qnd, d_env, tol);
  rb.check("Q(N(envelope)) equivalent to envelope",
           r1.order == CoverOrder::equal);
  Cover c_amb = generated_cover(ext.extended, tol);
  Cover nqc = map_N(ext, map_Q(ext, c_amb, tol), tol);
  CompareResult r2 = compare(nqc, c_amb, tol);
  rb.check("N(Q(generated)) equivalent to generated",
           r2.order == CoverOrder::equal);

  rb.line(std::string("summary: Shilov = ") + ideal_string(s) +
          "; envelope = M2; A+I = C(+)T2; QN=NQ=id: " +
          ((shilov_ok && env_ok && ext_ok && r1.order == CoverOrder::equal &&
            r2.order == CoverOrder::equal)
               ? "PASS"
               : "FAIL"));
  out.report = rb.finish();
  out.pass = rb.pass();
  return out;
}

inline ScenarioResult scenario_t2_twist_chain(const ScenarioSpec& spec,
                                              const ToleranceConfig& tol) {
  ParamReader params(spec, {{"s", 0.5}, {"grid", 101}});
  const double s = params.get("s");
  const Eigen::Index grid = params.get_index("grid");
  if (grid < 2) throw ParseError("t2_twist_chain: grid must be at least 2");
  if (s < 0.0 || s > 1.0)
    throw ParseError("t2_twist_chain: s must lie in [0, 1]");

  ScenarioResult out;
  out.name = spec.name;
  ReportBuilder rb;
  rb.line("scenario: t2_twist_chain");
  rb.line("s = " + csv_number(s) + ", grid = " + std::to_string(grid));

  CsvTable csv;
  csv.columns = {"t", "eigenvalue"};
  const double lo = std::pow(s, 4.0);
  double min_seen = 1.0, max_seen = 0.0;
  bool in_range = true;
  BlockShape amb;
  amb.sizes = {2};
  BlockElement corner_gen = BlockElement::unit(amb, 0, 0, 1);
  for (Eigen::Index j = 0; j < grid; ++j) {
    double t = static_cast<double>(j) / static_cast<double>(grid - 1);
    TwistFamily f = t2_sarason_family(t, tol);
    Representation rep = twist(f, Complex(s, 0.0), tol);
    CMatrix img = rep_apply(f.base, rep, corner_gen);
    CMatrix corner = img.block(0, 2, 2, 2);
    CMatrix gram = corner.adjoint() * corner;
    gram = 0.5 * (gram + gram.adjoint().eval());
    Eigen::VectorXd ev = herm_eigs(gram, tol);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      csv.add_row({csv_number(t), csv_number(ev(i))});
      min_seen = std::min(min_seen, ev(i));
      max_seen = std::max(max_seen, ev(i));
      if (ev(i) < lo - 1e-8 || ev(i) > 1.0 + 1e-8) in_range = false;
    }
  }
  rb.line("eigenvalue range: [" + csv_number(min_seen) + ", " +
          csv_number(max_seen) + "]");
  rb.check("gram spectrum within [s^4, 1]", in_range);
  rb.line("summary: spectrum of |A_s| within [" + csv_number(s * s) + ", 1]");

  // At full twist weight the endpoints are attained exactly.
  TwistFamily f1 = t2_sarason_family(1.0, tol);
  Representation rep1 = twist(f1, Complex(s, 0.0), tol);
  CMatrix c1 = rep_apply(f1.base, rep1, corner_gen).block(0, 2, 2, 2);
  CMatrix g1 = c1.adjoint() * c1;
  g1 = 0.5 * (g1 + g1.adjoint().eval());
  Eigen::VectorXd ev1 = herm_eigs(g1, tol);
  rb.check("endpoints attained at full weight",
           std::abs(ev1(0) - lo) <= 1e-6 &&
               std::abs(ev1(ev1.size() - 1) - 1.0) <= 1e-6);

  out.csv = csv.str();
  out.report = rb.finish();
  out.pass = rb.pass();
  return out;
}

inline ScenarioResult scenario_toeplitz_finite(const ScenarioSpec& spec,
                                               const ToleranceConfig& tol) {
  ParamReader params(spec,
                     {{"n", 8}, {"z1", 0.3}, {"z2", 0.6}, {"z3", 0.9}});
  const Eigen::Index n = params.get_index("n");
  if (n < 2) throw ParseError("toeplitz_finite: n must be at least 2");
  const std::vector<double> zs = {params.get("z1"), params.get("z2"),
                                  params.get("z3")};

  ScenarioResult out;
  out.name = spec.name;
  ReportBuilder rb;
  rb.line("scenario: toeplitz_finite");
  rb.line("n = " + std::to_string(n));

  CsvTable csv;
  csv.columns = {"z_re", "z_im", "fingerprint_value"};

  BlockShape amb;
  amb.sizes = {2 * n};
  std::vector<Cover> covers;
  for (double z : zs) {
    BlockElement gen = BlockElement::zero(amb);
    gen.blocks[0] = truncated_shift_pair(n, Complex(z, 0.0));
    OperatorAlgebra A = generate_algebra(amb, {gen}, tol);
    Cover c = generated_cover(A, tol, "shift(" + csv_number(z) + ")");
    auto fp = cover_fingerprint(c);
    bool fp_ok = fp.size() == 1 && fp[0].size() == 3 &&
                 std::abs(fp[0][0] - 0.0) <= 1e-9 &&
                 std::abs(fp[0][1] - z * z) <= 1e-9 &&
                 std::abs(fp[0][2] - 1.0) <= 1e-9;
    std::string vals;
    for (std::size_t i = 0; fp.size() == 1 && i < fp[0].size(); ++i) {
      // Values are certified above to 1e-9, so print them rounded to
      // nine decimals rather than with floating-point dust.
      double v = std::round(fp[0][i] * 1e9) / 1e9;
      if (v == 0.0) v = 0.0;
      if (i) vals += ", ";
      vals += csv_number(v);
      csv.add_row({csv_number(z), csv_number(0.0), csv_number(v)});
    }
    rb.line("z = " + csv_number(z) + ": fingerprint {" + vals + "}");
    rb.check("fingerprint is {0, z^2, 1} at z = " + csv_number(z), fp_ok);
    covers.push_back(std::move(c));
  }

  for (std::size_t i = 0; i < covers.size(); ++i)
    for (std::size_t j = i + 1; j < covers.size(); ++j) {
      CompareResult r = compare(covers[i], covers[j], tol);
      rb.check("covers at z = " + csv_number(zs[i]) + " and z = " +
                   csv_number(zs[j]) + " are incomparable",
               r.order == CoverOrder::incomparable);
    }

  out.csv = csv.str();
  out.report = rb.finish();
  out.pass = rb.pass();
  return out;
}

inline ScenarioResult scenario_semidirichlet_probe(const ScenarioSpec& spec,
                                                   const ToleranceConfig& tol) {
  ParamReader params(spec, {{"t", 0.5}});
  const double t = params.get("t");
  if (t <= 0.0 || t >= 1.0)
    throw ParseError(
        "semidirichlet_probe: t must lie strictly inside (0, 1) so the "
        "corner is genuinely twisted");

  ScenarioResult out;
  out.name = spec.name;
  ReportBuilder rb;
  rb.line("scenario: semidirichlet_probe");
  rb.line("t = " + csv_number(t));

  OperatorAlgebra T2 = triangular_in_m2(tol);
  rb.check("triangular algebra in M2 is dirichlet", is_dirichlet(T2, tol));

  TwistFamily f = t2_sarason_family(t, tol);
  Representation sigma = twist(f, Complex(1.0, 0.0), tol);
  ScalingProbeReport probe = semidirichlet_scaling_probe(f.base, sigma, 3, tol);
  rb.line(std::string("phi semi-dirichlet: ") + yn(probe.phi_semidirichlet));
  rb.line(std::string("phi' semi-dirichlet: ") +
          yn(probe.phi_prime_semidirichlet));
  rb.line("corner norm: " + csv_number(probe.corner_norm));
  rb.check("corner is nontrivial", probe.corner_norm > 1e-6);
  rb.check("at least one of phi, phi' fails semi-dirichlet",
           !(probe.phi_semidirichlet && probe.phi_prime_semidirichlet));

  out.report = rb.finish();
  out.pass = rb.pass();
  return out;
}

inline ScenarioResult scenario_lattice_maps_roundtrip(
    const ScenarioSpec& spec, const ToleranceConfig& tol) {
  ParamReader params(spec, {});
  (void)params;
  ScenarioResult out;
  out.name = spec.name;
  ReportBuilder rb;
  rb.line("scenario: lattice_maps_roundtrip");

  OperatorAlgebra A = compressed_triangular(tol);
  ShilovExtension ext = extend_by_shilov(A, tol);

  Cover d_amb = generated_cover(ext.base, tol);
  Cover d_env = envelope(ext.base, tol);
  Cover c_amb = generated_cover(ext.extended, tol);
  Cover c_model = cmax_plus_model(ext, tol).cover;

  CsvTable csv;
  csv.columns = {"check", "residual"};
  auto residual_of = [](const CompareResult& r) {
    double res = 0.0;
    if (r.first_to_second) res = std::max(res, r.first_to_second->residual);
    if (r.second_to_first) res = std::max(res, r.second_to_first->residual);
    return res;
  };

  for (const auto& [label, d] :
       {std::pair<std::string, const Cover*>{"generated", &d_amb},
        {"envelope", &d_env}}) {
    Cover qnd = map_Q(ext, map_N(ext, *d, tol), tol);
    CompareResult r = compare(qnd, *d, tol);
    csv.add_row({"QN_" + label, csv_number(residual_of(r))});
    rb.check("Q(N(" + label + ")) equivalent to " + label +
                 " (residual " + csv_number(residual_of(r)) + ")",
             r.order == CoverOrder::equal &&
                 residual_of(r) <= tol.eps_eq);
  }
  for (const auto& [label, c] :
       {std::pair<std::string, const Cover*>{"generated", &c_amb},
        {"model", &c_model}}) {
    Cover nqc = map_N(ext, map_Q(ext, *c, tol), tol);
    CompareResult r = compare(nqc, *c, tol);
    csv.add_row({"NQ_" + label, csv_number(residual_of(r))});
    rb.check("N(Q(" + label + ")) equivalent to " + label +
                 " (residual " + csv_number(residual_of(r)) + ")",
             r.order == CoverOrder::equal &&
                 residual_of(r) <= tol.eps_eq);
  }

  Cover rn = map_R(ext, map_N(ext, d_env, tol), tol);
  Cover jn = join(d_env, d_amb, tol);
  CompareResult rjoin = compare(rn, jn, tol);
  csv.add_row({"RN_join", csv_number(residual_of(rjoin))});
  rb.check("R(N(envelope)) equals join(envelope, generated)",
           rjoin.order == CoverOrder::equal);

  CompareResult rq = compare(map_R(ext, c_amb, tol), map_Q(ext, c_amb, tol),
                             tol);
  csv.add_row({"R_vs_Q", csv_number(residual_of(rq))});
  rb.check("restriction dominates quotient on the generated cover",
           rq.order == CoverOrder::first_above);

  out.csv = csv.str();
  out.report = rb.finish();
  out.pass = rb.pass();
  return out;
}

}  // namespace detail

inline ScenarioResult run_scenario(
    const ScenarioSpec& spec,
    const ToleranceConfig& tol = default_tolerances()) {
  if (spec.name == "t2_in_m2") return detail::scenario_t2_in_m2(spec, tol);
  if (spec.name == "pi_oplus_id_t2")
    return detail::scenario_pi_oplus_id_t2(spec, tol);
  if (spec.name == "t2_twist_chain")
    return detail::scenario_t2_twist_chain(spec, tol);
  if (spec.name == "toeplitz_finite")
    return detail::scenario_toeplitz_finite(spec, tol);
  if (spec.name == "semidirichlet_probe")
    return detail::scenario_semidirichlet_probe(spec, tol);
  if (spec.name == "lattice_maps_roundtrip")
    return detail::scenario_lattice_maps_roundtrip(spec, tol);
  throw UnknownScenario("no scenario named '" + spec.name + "'");
}

// Run every registered scenario with default parameters.
inline std::vector<ScenarioResult> run_all_scenarios(
    const ToleranceConfig& tol = default_tolerances()) {
  std::vector<ScenarioResult> out;
  for (const auto& name : scenario_names())
    out.push_back(run_scenario(ScenarioSpec{name, {}}, tol));
  return out;
}

}  // namespace cstarlab
