#include "jlip/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jlip/alphaharmonic.hpp"
#include "jlip/coeffio.hpp"
#include "jlip/errors.hpp"
#include "jlip/metrics.hpp"
#include "jlip/quasiconformal.hpp"
#include "jlip/registry.hpp"
#include "jlip/specfun.hpp"

namespace jlip::cli {

namespace {

using nlohmann::ordered_json;
using Complex = std::complex<double>;

constexpr const char* kVersion = "0.1.0";

Complex parse_complex(const std::string& text, const std::string& flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw LoadError(flag + ": expected 're,im', got '" + text + "'");
  try {
    std::size_t ur = 0, ui = 0;
    const std::string re = text.substr(0, comma);
    const std::string im = text.substr(comma + 1);
    const double r = std::stod(re, &ur);
    const double i = std::stod(im, &ui);
    if (ur != re.size() || ui != im.size()) throw std::invalid_argument(text);
    return {r, i};
  } catch (const std::exception&) {
    throw LoadError(flag + ": expected 're,im', got '" + text + "'");
  }
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw LoadError("--radii: bad number '" + item + "'");
    }
  }
  return out;
}

std::vector<double> default_radii() {
  std::vector<double> r;
  for (int t = 1; t <= 20; ++t) r.push_back(1.0 - std::pow(2.0, -t));
  return r;
}

// --tol wins, then JLIP_TOL, then the operation default.
double effective_tol(const std::optional<double>& flag, double fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("JLIP_TOL")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw LoadError(std::string("JLIP_TOL: bad number '") + env + "'");
    }
  }
  return fallback;
}

ordered_json complex_json(Complex z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

ordered_json report_json(const VerificationReport& r) {
  ordered_json j;
  j["check"] = r.check;
  j["samples"] = r.samples;
  j["passes"] = r.passes;
  j["violations"] = r.violations;
  j["skips"] = r.skips;
  j["flagged"] = r.flagged;
  j["max_value"] = r.max_value;
  j["witness"] = {{"z", complex_json(r.witness.z)}, {"w", complex_json(r.witness.w)}};
  j["tolerance"] = r.tolerance;
  j["seed"] = r.seed;
  j["pass"] = r.pass;
  return j;
}

void write_plot(const std::string& path, const std::vector<RatioSample>& trace) {
  std::ofstream f(path);
  if (!f) throw LoadError("--plot: cannot open '" + path + "' for writing");
  f << "index,z_re,z_im,w_re,w_im,ratio\n";
  f.precision(17);
  for (const auto& s : trace)
    f << s.index << ',' << s.z.real() << ',' << s.z.imag() << ',' << s.w.real()
      << ',' << s.w.imag() << ',' << s.ratio << '\n';
}

struct DocumentOut {
  std::ostream& out;
  void emit(const std::string& command, ordered_json inputs,
            ordered_json tolerances, std::uint64_t seed, ordered_json result) {
    ordered_json doc;
    doc["command"] = command;
    doc["version"] = kVersion;
    doc["inputs"] = std::move(inputs);
    doc["tolerances"] = std::move(tolerances);
    doc["seed"] = seed;
    doc["result"] = std::move(result);
    out << doc.dump(2) << "\n";
  }
};

metrics::MapFn resolve_map(const std::string& map_file, const std::string& builtin,
                           std::string* label) {
  if (!map_file.empty() && !builtin.empty())
    throw LoadError("give either --map or --builtin, not both");
  if (!map_file.empty()) {
    auto m = coeffio::load_coefficient_file(map_file);
    if (label) *label = "alphaharm:" + map_file;
    return m.fn();
  }
  if (!builtin.empty()) {
    auto b = registry::make_builtin(builtin);
    if (label) *label = b.label;
    return b.fn;
  }
  throw LoadError("a map is required: --map FILE or --builtin NAME");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"distance-ratio Lipschitz verification toolkit"};
  app.require_subcommand(1);
  DocumentOut doc{out};

  int exit_code = 0;

  // ---- hyp2f1 ----------------------------------------------------------
  double h_a = 0, h_b = 0, h_c = 1, h_x = 0;
  std::optional<double> tol_flag;
  auto* hyp = app.add_subcommand("hyp2f1", "evaluate F(a,b;c;x)");
  hyp->add_option("--a", h_a)->required();
  hyp->add_option("--b", h_b)->required();
  hyp->add_option("--c", h_c)->required();
  hyp->add_option("--x", h_x)->required();
  hyp->add_option("--tol", tol_flag);
  hyp->callback([&] {
    const double tol = effective_tol(tol_flag, 1e-14);
    specfun::HypParams p{h_a, h_b, h_c, h_x, tol, 100000};
    const double value = specfun::gauss_2f1(p);
    doc.emit("hyp2f1",
             {{"a", h_a}, {"b", h_b}, {"c", h_c}, {"x", h_x}},
             {{"series", tol}}, 0, {{"value", value}});
  });

  // ---- eval ------------------------------------------------------------
  std::string e_map, e_z;
  std::optional<double> e_alpha;
  auto* ev = app.add_subcommand(
      "eval", "evaluate a coefficient map at z (plus operator residual)");
  ev->add_option("--map", e_map)->required();
  ev->add_option("--z", e_z)->required();
  ev->add_option("--alpha", e_alpha,
                 "weight of the residual operator (default: the map's alpha)");
  ev->callback([&] {
    auto m = coeffio::load_coefficient_file(e_map);
    const metrics::DiskPoint z(parse_complex(e_z, "--z"));
    const Complex v = alphaharmonic::evaluate(m, z);
    const double alpha = e_alpha.value_or(m.alpha());
    const double h = std::min(1e-3, (1.0 - std::abs(z.value())) / 20.0);
    const Complex res = alphaharmonic::operator_residual(m.fn(), alpha, z, h);
    doc.emit("eval",
             {{"map", e_map}, {"z", complex_json(z.value())}, {"alpha", alpha}},
             {{"residual_step", h}}, 0,
             {{"value", complex_json(v)},
              {"residual", complex_json(res)},
              {"residual_norm", std::abs(res)}});
  });

  // ---- check-condition ---------------------------------------------------
  std::string c_map;
  auto* cond = app.add_subcommand("check-condition",
                                  "coefficient condition for the j-contraction");
  cond->add_option("--map", c_map)->required();
  cond->callback([&] {
    auto m = coeffio::load_coefficient_file(c_map);
    const auto res = alphaharmonic::contraction_condition(m);
    const double majorant = alphaharmonic::majorant_condition(m);
    doc.emit("check-condition", {{"map", c_map}, {"alpha", m.alpha()}},
             {{"condition", 1e-12}}, 0,
             {{"S", res.value},
              {"satisfied", res.satisfied},
              {"majorant_S", majorant},
              {"majorant_satisfied", majorant <= 1.0 + 1e-12}});
    if (!res.satisfied) exit_code = 1;
  });

  // ---- verify-lipschitz --------------------------------------------------
  std::string v_map, v_builtin, v_plot;
  double v_constant = 1.0;
  std::uint64_t v_seed = 1;
  std::size_t v_samples = 10000;
  double v_margin = 1e-3;
  bool v_skip_condition = false;
  auto* ver = app.add_subcommand("verify-lipschitz",
                                 "seeded j-ratio sweep against a constant");
  ver->add_option("--map", v_map);
  ver->add_option("--builtin", v_builtin);
  ver->add_option("--constant", v_constant)->required();
  ver->add_option("--samples", v_samples);
  ver->add_option("--seed", v_seed);
  ver->add_option("--margin", v_margin);
  ver->add_option("--plot", v_plot);
  ver->add_flag("--skip-condition", v_skip_condition);
  ver->callback([&] {
    std::string label;
    ordered_json inputs{{"constant", v_constant},
                        {"samples", v_samples},
                        {"seed", v_seed},
                        {"margin", v_margin}};
    metrics::MapFn fn;
    if (!v_map.empty()) {
      auto m = coeffio::load_coefficient_file(v_map);
      label = "alphaharm:" + v_map;
      if (!v_skip_condition) {
        const auto res = alphaharmonic::contraction_condition(m);
        if (!res.satisfied) {
          std::ostringstream msg;
          msg << "coefficient condition S = " << res.value
              << " exceeds 1; pass --skip-condition to sweep anyway";
          throw LoadError(msg.str());
        }
      }
      fn = m.fn();
    } else {
      fn = resolve_map(v_map, v_builtin, &label);
    }
    inputs["map"] = label;
    std::vector<RatioSample> trace;
    auto rep = alphaharmonic::verify_lipschitz_j(
        fn, v_constant, SampleSpec{v_seed, v_samples, v_margin},
        v_plot.empty() ? nullptr : &trace);
    if (!v_plot.empty()) write_plot(v_plot, trace);
    doc.emit("verify-lipschitz", inputs, {{"ratio", 1e-9}}, v_seed,
             report_json(rep));
    if (!rep.pass) exit_code = 1;
  });

  // ---- bound-decomp ------------------------------------------------------
  std::string b_map, b_z, b_w;
  auto* bd = app.add_subcommand("bound-decomp",
                                "increment/clearance majorants at a pair");
  bd->add_option("--map", b_map)->required();
  bd->add_option("--z", b_z)->required();
  bd->add_option("--w", b_w)->required();
  bd->callback([&] {
    auto m = coeffio::load_coefficient_file(b_map);
    metrics::DiskPoint z(parse_complex(b_z, "--z"));
    metrics::DiskPoint w(parse_complex(b_w, "--w"));
    // order the pair by image modulus, as the decomposition requires
    if (std::abs(m(z.value())) < std::abs(m(w.value()))) std::swap(z, w);
    const auto res = alphaharmonic::bound_decomposition(m, z, w);
    doc.emit("bound-decomp",
             {{"map", b_map},
              {"z", complex_json(z.value())},
              {"w", complex_json(w.value())}},
             {{"bounds", 1e-10}}, 0,
             {{"num_bound", res.num_bound},
              {"den_bound", res.den_bound},
              {"holds", res.holds},
              {"majorant_num", res.majorant_num},
              {"majorant_den", res.majorant_den},
              {"majorant_holds", res.majorant_holds},
              {"lhs_increment", res.lhs_increment},
              {"lhs_clearance", res.lhs_clearance}});
    if (!res.holds) exit_code = 1;
  });

  // ---- sharpness-scan ----------------------------------------------------
  int s_p = 2, s_m = 1;
  bool s_conj = false;
  std::string s_radii, s_plot;
  auto* sc = app.add_subcommand("sharpness-scan",
                                "radial j-ratio scan of |z|^{2(p-1)} z^m");
  sc->add_option("--p", s_p);
  sc->add_option("--m", s_m);
  sc->add_flag("--conjugated", s_conj);
  sc->add_option("--radii", s_radii);
  sc->add_option("--plot", s_plot);
  sc->callback([&] {
    const auto radii = s_radii.empty() ? default_radii() : parse_radii(s_radii);
    const auto scan = alphaharmonic::sharpness_scan(s_p, s_m, s_conj, radii);
    if (!s_plot.empty()) {
      std::vector<RatioSample> trace;
      for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        trace.push_back({i, {radii[i], 0.0}, {radii[i + 1], 0.0}, scan.ratios[i]});
      write_plot(s_plot, trace);
    }
    doc.emit("sharpness-scan",
             {{"p", s_p},
              {"m", s_m},
              {"conjugated", s_conj},
              {"radii", radii}},
             {{"ratio", 1e-9}}, 0,
             {{"ratios", scan.ratios},
              {"max_ratio", scan.max_ratio},
              {"monotone", scan.monotone},
              {"pass", scan.pass}});
    if (!scan.pass) exit_code = 1;
  });

  // ---- qc-audit ----------------------------------------------------------
  std::string q_map, q_builtin, q_plot;
  double q_K = 1.0, q_Kp = 0.0, q_B = 0.0, q_C = 0.0;
  int q_grid = 101;
  double q_margin = 1e-2;
  std::uint64_t q_seed = 1;
  std::size_t q_samples = 10000;
  std::optional<double> q_tol;
  auto* qa = app.add_subcommand("qc-audit",
                                "certificates plus distance-ratio audit");
  qa->add_option("--map", q_map);
  qa->add_option("--builtin", q_builtin);
  qa->add_option("--K", q_K);
  qa->add_option("--Kprime", q_Kp);
  qa->add_option("--B", q_B);
  qa->add_option("--C", q_C);
  qa->add_option("--grid", q_grid);
  qa->add_option("--margin", q_margin);
  qa->add_option("--seed", q_seed);
  qa->add_option("--samples", q_samples);
  qa->add_option("--tol", q_tol);
  qa->add_option("--plot", q_plot);
  qa->callback([&] {
    std::string label;
    auto fn = resolve_map(q_map, q_builtin, &label);
    const double tol = effective_tol(q_tol, 1e-6);
    quasiconformal::PlanarMap pm(fn);
    quasiconformal::QCParams params{q_K, q_Kp, q_B, q_C};
    GridSpec grid{q_grid, q_margin};
    SampleSpec samples{q_seed, q_samples, 1e-3};
    std::vector<RatioSample> trace;
    auto audit = quasiconformal::qc_audit(
        pm, params, samples, grid, q_plot.empty() ? nullptr : &trace, tol);
    if (!q_plot.empty()) write_plot(q_plot, trace);
    doc.emit("qc-audit",
             {{"map", label},
              {"K", q_K},
              {"Kprime", q_Kp},
              {"B", q_B},
              {"C", q_C},
              {"grid", q_grid},
              {"margin", q_margin},
              {"samples", q_samples},
              {"seed", q_seed}},
             {{"certificate", tol}, {"ratio", 1e-9}}, q_seed,
             {{"M", audit.sup_df},
              {"C", audit.stretch_sup},
              {"L", audit.constant},
              {"kk_certificate", report_json(audit.kk)},
              {"poisson_certificate", report_json(audit.poisson)},
              {"sweep", report_json(audit.sweep)}});
    if (!audit.sweep.pass) exit_code = 1;
  });

  // ---- choose-a ----------------------------------------------------------
  double a_K = 1.0, a_Kp = 0.0, a_B = 0.0, a_M = 1.0;
  auto* ca = app.add_subcommand("choose-a",
                                "feasible subharmonicity exponent");
  ca->add_option("--K", a_K);
  ca->add_option("--Kprime", a_Kp);
  ca->add_option("--B", a_B);
  ca->add_option("--M", a_M)->required();
  ca->callback([&] {
    quasiconformal::QCParams params{a_K, a_Kp, a_B, 0.0};
    const double A = quasiconformal::choose_exponent(params, a_M);
    const double value = quasiconformal::exponent_quadratic(params, a_M, A);
    doc.emit("choose-a",
             {{"K", a_K}, {"Kprime", a_Kp}, {"B", a_B}, {"M", a_M}},
             {{"quadratic", 1e-9}}, 0,
             {{"A", A}, {"quadratic_value", value}, {"feasible", value >= -1e-9}});
    if (value < -1e-9) exit_code = 1;
  });

  // ---- mobius-sweep ------------------------------------------------------
  std::string m_a = "0,0";
  double m_theta = 0.0, m_margin = 1e-3;
  std::uint64_t m_seed = 1;
  std::size_t m_samples = 10000;
  std::string m_plot;
  auto* ms = app.add_subcommand("mobius-sweep",
                                "factor-2 sweep of a disk automorphism");
  ms->add_option("--a", m_a);
  ms->add_option("--theta", m_theta);
  ms->add_option("--samples", m_samples);
  ms->add_option("--seed", m_seed);
  ms->add_option("--margin", m_margin);
  ms->add_option("--plot", m_plot);
  ms->callback([&] {
    const Complex a = parse_complex(m_a, "--a");
    std::vector<RatioSample> trace;
    auto rep = metrics::mobius_factor_sweep(
        a, m_theta, SampleSpec{m_seed, m_samples, m_margin},
        m_plot.empty() ? nullptr : &trace);
    if (!m_plot.empty()) write_plot(m_plot, trace);
    doc.emit("mobius-sweep",
             {{"a", complex_json(a)},
              {"theta", m_theta},
              {"samples", m_samples},
              {"seed", m_seed},
              {"margin", m_margin}},
             {{"ratio", 1e-9}}, m_seed, report_json(rep));
    if (!rep.pass) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace jlip::cli
