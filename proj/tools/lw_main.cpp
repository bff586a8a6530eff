// Command-line front end: builds surfaces from gallery names or expression
// data, runs the analyzers and verification suites, and exports meshes and
// reports. Exit codes: 0 ok, 1 verification failure, 2 usage/input error.

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lw/gallery.hpp"
#include "lw/geometry.hpp"
#include "lw/mesh_io.hpp"
#include "lw/verify.hpp"
#include "lw/weierstrass.hpp"
#include "lw/worldsheet.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct JobConfig {
  std::string gallery;
  std::string q, f, r, g;
  std::vector<double> domain;  // u0 u1 v0 v1
  int nu = 129;
  int nv = 129;
  std::string out;
  std::string report;
  std::string format = "obj";
  double tension = 1.0 / (2.0 * kPi);
  double alpha_prime = 1.0;
};

void load_config_file(const std::string& path, JobConfig* cfg) {
  std::ifstream in(path);
  if (!in) throw lw::Error("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw lw::Error(std::string("malformed config JSON: ") + e.what());
  }
  auto get_str = [&](const char* key, std::string* dst) {
    if (j.contains(key)) *dst = j[key].get<std::string>();
  };
  get_str("gallery", &cfg->gallery);
  get_str("q", &cfg->q);
  get_str("f", &cfg->f);
  get_str("r", &cfg->r);
  get_str("g", &cfg->g);
  get_str("out", &cfg->out);
  get_str("report", &cfg->report);
  get_str("format", &cfg->format);
  if (j.contains("domain")) cfg->domain = j["domain"].get<std::vector<double>>();
  if (j.contains("nu")) cfg->nu = j["nu"].get<int>();
  if (j.contains("nv")) cfg->nv = j["nv"].get<int>();
  if (j.contains("T")) cfg->tension = j["T"].get<double>();
  if (j.contains("alpha_prime")) cfg->alpha_prime = j["alpha_prime"].get<double>();
}

void add_common_options(CLI::App* cmd, JobConfig* cfg) {
  cmd->add_option("--gallery", cfg->gallery, "gallery entry name");
  cmd->add_option("--q", cfg->q, "expression q(u)");
  cmd->add_option("--f", cfg->f, "expression f(u)");
  cmd->add_option("--r", cfg->r, "expression r(v)");
  cmd->add_option("--g", cfg->g, "expression g(v)");
  cmd->add_option("--domain", cfg->domain, "domain rectangle u0 u1 v0 v1")->expected(4);
  cmd->add_option("--nu", cfg->nu, "lattice size along u");
  cmd->add_option("--nv", cfg->nv, "lattice size along v");
  cmd->add_option("--out", cfg->out, "output file");
  cmd->add_option("--report", cfg->report, "report file (JSON)");
  cmd->add_option("--format", cfg->format, "output format: obj|csv|json")
      ->check(CLI::IsMember({"obj", "csv", "json"}));
  cmd->add_option("--T", cfg->tension, "string tension");
  cmd->add_option("--alpha-prime", cfg->alpha_prime, "Regge slope 1/(2 pi T)");
}

void validate(const JobConfig& cfg) {
  if (cfg.nu < 2 || cfg.nu > 4097 || cfg.nv < 2 || cfg.nv > 4097) {
    throw lw::Error("nu and nv must lie in [2, 4097]");
  }
  for (double d : cfg.domain) {
    if (!std::isfinite(d)) throw lw::Error("domain must be finite");
  }
  if (cfg.domain.size() == 4 && (cfg.domain[0] >= cfg.domain[1] || cfg.domain[2] >= cfg.domain[3])) {
    throw lw::Error("domain must satisfy u0 < u1 and v0 < v1");
  }
}

bool has_data_exprs(const JobConfig& cfg) {
  return !cfg.q.empty() || !cfg.f.empty() || !cfg.r.empty() || !cfg.g.empty();
}

lw::WeierstrassData data_from_cfg(const JobConfig& cfg) {
  if (cfg.q.empty() || cfg.f.empty() || cfg.r.empty() || cfg.g.empty()) {
    throw lw::Error("data surfaces need all four of --q --f --r --g");
  }
  return lw::WeierstrassData::from_strings(cfg.q, cfg.f, cfg.r, cfg.g);
}

lw::Rect rect_from_cfg(const JobConfig& cfg, const lw::Rect& fallback) {
  if (cfg.domain.size() == 4) {
    return {cfg.domain[0], cfg.domain[1], cfg.domain[2], cfg.domain[3]};
  }
  return fallback;
}

/// Builds the surface described by the config (gallery entry or raw data).
lw::SurfaceGrid build_surface(const JobConfig& cfg) {
  validate(cfg);
  if (!cfg.gallery.empty()) {
    const auto& entry = lw::gallery::get(cfg.gallery);
    return entry.build(rect_from_cfg(cfg, entry.default_domain), cfg.nu, cfg.nv);
  }
  if (!has_data_exprs(cfg)) {
    throw lw::Error("specify --gallery NAME or the four data expressions");
  }
  lw::WeierstrassData d = data_from_cfg(cfg);
  return lw::integrate_surface(d, rect_from_cfg(cfg, {-1.0, 1.0, -1.0, 1.0}), cfg.nu, cfg.nv);
}

void write_mesh(const lw::SurfaceGrid& grid, const JobConfig& cfg) {
  std::string out = cfg.out.empty() ? ("surface." + cfg.format) : cfg.out;
  if (cfg.format == "obj") {
    lw::write_obj(grid, out);
  } else if (cfg.format == "csv") {
    lw::write_csv(grid, out);
  } else {
    lw::write_json(grid, out);
  }
}

int cmd_generate(const JobConfig& cfg) {
  write_mesh(build_surface(cfg), cfg);
  return 0;
}

int cmd_conjugate(const JobConfig& cfg) {
  write_mesh(lw::conjugate(build_surface(cfg)), cfg);
  return 0;
}

struct AnalyzeRow {
  double u, v, H, K, Q, R, omega;
  int flag;
};

AnalyzeRow analyze_node(const lw::SurfaceGrid& grid, int i, int j) {
  AnalyzeRow row{};
  row.u = grid.u_at(i);
  row.v = grid.v_at(j);
  row.flag = grid.flag(i, j);
  lw::AnalyzerOptions opt;
  opt.richardson = grid.has_closures();
  try {
    lw::FundamentalForms ff = lw::fundamental_forms(grid, i, j, opt);
    lw::HopfPair qr = lw::hopf_differential(grid, i, j, opt);
    row.H = lw::mean_curvature(grid, i, j, opt);
    row.K = lw::gaussian_curvature(grid, i, j, opt);
    row.Q = qr.Q;
    row.R = qr.R;
    row.omega = ff.omega;
  } catch (const lw::Error&) {
    row.H = row.K = row.Q = row.R = row.omega = std::nan("");
    row.flag |= lw::kFlagDegenerate;
  }
  return row;
}

int cmd_analyze(const JobConfig& cfg, const std::vector<double>& at, bool use_grid) {
  if (cfg.format == "obj") {
    throw lw::Error("analyze writes a table; use --format csv or json");
  }
  lw::SurfaceGrid grid = build_surface(cfg);
  std::vector<AnalyzeRow> rows;
  if (!use_grid && !at.empty()) {
    if (at.size() % 2 != 0) throw lw::Error("--at needs (u, v) pairs");
    for (std::size_t k = 0; k + 1 < at.size(); k += 2) {
      // Snap to the nearest lattice node.
      int i = static_cast<int>(std::lround((at[k] - grid.rect.u0) / grid.du()));
      int j = static_cast<int>(std::lround((at[k + 1] - grid.rect.v0) / grid.dv()));
      i = std::clamp(i, 0, grid.nu - 1);
      j = std::clamp(j, 0, grid.nv - 1);
      rows.push_back(analyze_node(grid, i, j));
    }
  } else {
    for (int i = 0; i < grid.nu; ++i) {
      for (int j = 0; j < grid.nv; ++j) rows.push_back(analyze_node(grid, i, j));
    }
  }

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary);
    if (!file) throw lw::Error("cannot open output file '" + cfg.out + "'");
    os = &file;
  }
  if (cfg.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      j.push_back({{"u", r.u},
                   {"v", r.v},
                   {"H", r.H},
                   {"K", r.K},
                   {"Q", r.Q},
                   {"R", r.R},
                   {"omega", r.omega},
                   {"flag", r.flag}});
    }
    *os << j.dump(0) << "\n";
  } else {
    *os << "u,v,H,K,Q,R,omega,flag\n";
    for (const auto& r : rows) {
      *os << lw::format_double(r.u) << "," << lw::format_double(r.v) << ","
          << lw::format_double(r.H) << "," << lw::format_double(r.K) << ","
          << lw::format_double(r.Q) << "," << lw::format_double(r.R) << ","
          << lw::format_double(r.omega) << "," << r.flag << "\n";
    }
  }
  return 0;
}

void write_suite_report(const std::vector<lw::verify::SuiteResult>& results,
                        const std::string& path) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    suites.push_back({{"name", r.name},
                      {"applicable", r.applicable},
                      {"pass", r.pass},
                      {"measured", r.measured},
                      {"tolerance", r.tolerance},
                      {"note", r.note}});
  }
  j["suites"] = std::move(suites);
  j["pass"] = lw::verify::all_pass(results);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lw::Error("cannot open report file '" + path + "'");
  out << j.dump(2) << "\n";
}

int cmd_verify(const JobConfig& cfg) {
  validate(cfg);
  std::vector<lw::verify::SuiteResult> results;
  if (!cfg.gallery.empty()) {
    results = lw::verify::run_entry_suites(lw::gallery::get(cfg.gallery), cfg.nu, cfg.nv);
  } else if (has_data_exprs(cfg)) {
    lw::WeierstrassData d = data_from_cfg(cfg);
    results = lw::verify::run_data_suites(d, rect_from_cfg(cfg, {-1.0, 1.0, -1.0, 1.0}), cfg.nu,
                                          cfg.nv);
  } else {
    throw lw::Error("specify --gallery NAME or the four data expressions");
  }
  for (const auto& r : results) {
    std::string status = r.pass ? "PASS" : (r.applicable ? "FAIL" : "FAIL (expected)");
    std::cout << status << " " << r.name << " measured=" << sig12(r.measured)
              << " tol=" << sig12(r.tolerance);
    if (!r.note.empty()) std::cout << " [" << r.note << "]";
    std::cout << "\n";
  }
  if (!cfg.report.empty()) write_suite_report(results, cfg.report);
  return lw::verify::all_pass(results) ? 0 : 1;
}

int cmd_worldsheet(const JobConfig& cfg, const std::string& action, const std::string& init,
                   double tau_max, int ntau) {
  if (action == "evolve") {
    if (init.empty()) throw lw::Error("worldsheet evolve needs --init FILE");
    lw::StringState st = lw::read_string_state(init);
    lw::SurfaceGrid sheet = lw::dalembert_evolve(st, tau_max, ntau);
    write_mesh(sheet, cfg);
    std::cout << "wave_residual = " << sig12(lw::wave_residual(sheet)) << "\n";
    return 0;
  }
  lw::SurfaceGrid grid = build_surface(cfg);
  if (action == "action") {
    std::cout << "action = " << sig12(lw::nambu_goto_action(grid, cfg.tension)) << "\n";
  } else if (action == "wave") {
    std::cout << "wave_residual = " << sig12(lw::wave_residual(grid)) << "\n";
  } else if (action == "eh") {
    lw::EinsteinHilbert eh = lw::einstein_hilbert_interior(grid, cfg.alpha_prime);
    std::cout << "einstein_hilbert_interior = " << sig12(eh.value) << " (skipped " << eh.skipped
              << " nodes)\n";
  } else {
    throw lw::Error("unknown worldsheet action '" + action + "'");
  }
  return 0;
}

int cmd_gallery(bool as_json) {
  if (as_json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& name : lw::gallery::list()) {
      const auto& e = lw::gallery::get(name);
      j.push_back({{"name", e.name},
                   {"minimal", e.minimal},
                   {"totally_umbilic", e.totally_umbilic},
                   {"domain", {e.default_domain.u0, e.default_domain.u1, e.default_domain.v0,
                               e.default_domain.v1}}});
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& name : lw::gallery::list()) std::cout << name << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timelike minimal and CMC surfaces in Minkowski 3-space from Weierstrass data"};
  app.require_subcommand(1);

  JobConfig cfg;

  // --config applies before flag parsing so flags override the file.
  for (int k = 1; k + 1 < argc; ++k) {
    if (std::string(argv[k]) == "--config") {
      try {
        load_config_file(argv[k + 1], &cfg);
      } catch (const lw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }
    }
  }
  std::string config_path;

  auto* gen = app.add_subcommand("generate", "integrate a surface and write a mesh");
  add_common_options(gen, &cfg);
  gen->add_option("--config", config_path, "JSON config file (flags override it)");

  auto* ana = app.add_subcommand("analyze", "curvature/metric table over the lattice");
  add_common_options(ana, &cfg);
  ana->add_option("--config", config_path, "JSON config file (flags override it)");
  std::vector<double> at;
  bool use_grid = false;
  ana->add_option("--at", at, "sample points u v [u v ...]");
  ana->add_flag("--grid", use_grid, "tabulate the full lattice (default)");

  auto* ver = app.add_subcommand("verify", "run the verification suites");
  add_common_options(ver, &cfg);
  ver->add_option("--config", config_path, "JSON config file (flags override it)");

  auto* con = app.add_subcommand("conjugate", "conjugate surface X(u) - Y(v)");
  add_common_options(con, &cfg);
  con->add_option("--config", config_path, "JSON config file (flags override it)");

  auto* ws = app.add_subcommand("worldsheet", "Nambu-Goto action, wave residual, evolution");
  std::string ws_action;
  std::string ws_init;
  double tau_max = 0.5;
  int ntau = 129;
  ws->add_option("action", ws_action, "action|wave|evolve|eh")->required();
  add_common_options(ws, &cfg);
  ws->add_option("--config", config_path, "JSON config file (flags override it)");
  ws->add_option("--init", ws_init, "initial-data JSON for evolve");
  ws->add_option("--tau-max", tau_max, "evolution horizon");
  ws->add_option("--ntau", ntau, "evolution lattice resolution");

  auto* gal = app.add_subcommand("gallery", "list built-in examples");
  bool gal_json = false;
  gal->add_flag("--json", gal_json, "JSON metadata listing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(cfg);
    if (ana->parsed()) return cmd_analyze(cfg, at, use_grid || at.empty());
    if (ver->parsed()) return cmd_verify(cfg);
    if (con->parsed()) return cmd_conjugate(cfg);
    if (ws->parsed()) return cmd_worldsheet(cfg, ws_action, ws_init, tau_max, ntau);
    if (gal->parsed()) return cmd_gallery(gal_json);
  } catch (const lw::SyntaxError& e) {
    std::cerr << "error: syntax error: " << e.what() << "\n";
    return 2;
  } catch (const lw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
