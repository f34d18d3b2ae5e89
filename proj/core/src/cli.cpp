#include "rodlif/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "rodlif/analysis.hpp"
#include "rodlif/material_card.hpp"

namespace rodlif::cli {

namespace {

std::string fmt(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

std::string sanitize_label(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == ' ' || c == '\t') c = '_';
  }
  return s;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_num(const std::string& field, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::runtime_error("config field '" + field + "': cannot parse number '" + v + "'");
  }
}

int parse_int(const std::string& field, const std::string& v) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::runtime_error("config field '" + field + "': cannot parse integer '" + v + "'");
  }
}

struct SystemBundle {
  RodSystem system;
  std::vector<std::shared_ptr<const DielectricModel>> materials;  // loaded in flag order
  std::vector<std::string> labels;
};

SystemBundle load_materials(const RunConfig& cfg, bool need_all_three) {
  SystemBundle b;
  auto load = [&](const std::string& path) {
    auto m = std::make_shared<DielectricModel>(load_material_card(path));
    b.materials.push_back(m);
    b.labels.push_back(sanitize_label(m->label()));
    return m;
  };
  std::shared_ptr<const DielectricModel> m1, m2, m3;
  if (!cfg.mat1.empty()) m1 = load(cfg.mat1);
  if (!cfg.mat2.empty()) m2 = load(cfg.mat2);
  if (!cfg.mat3.empty()) m3 = load(cfg.mat3);
  if (need_all_three) {
    if (!m1) throw std::runtime_error("config field 'mat1': rod 1 material card is required");
    if (!m2) throw std::runtime_error("config field 'mat2': rod 2 material card is required");
    if (!m3) throw std::runtime_error("config field 'mat3': medium material card is required");
    b.system.radius_a = cfg.radius1;
    b.system.radius_b = cfg.radius2;
    b.system.rod_a = m1;
    b.system.rod_b = m2;
    b.system.medium = m3;
    b.system.validate();
  }
  return b;
}

void validate_common(const RunConfig& cfg) {
  if (!(cfg.radius1 > 0.0)) throw std::runtime_error("config field 'radius1' must be > 0");
  if (!(cfg.radius2 > 0.0)) throw std::runtime_error("config field 'radius2' must be > 0");
  if (!(cfg.temperature > 0.0)) throw std::runtime_error("config field 'temperature' must be > 0");
  if (!(cfg.rmin > 0.0)) throw std::runtime_error("config field 'rmin' must be > 0");
  if (!(cfg.rmin < cfg.rmax)) throw std::runtime_error("config field 'rmin' must be < rmax");
  if (cfg.points_per_decade < 4) {
    throw std::runtime_error("config field 'points_per_decade' must be >= 4");
  }
  if (cfg.mode != "retarded" && cfg.mode != "nonretarded" && cfg.mode != "n0" &&
      cfg.mode != "all") {
    throw std::runtime_error("config field 'mode' must be retarded, nonretarded, n0 or all");
  }
  if (!(cfg.xi_min >= 0.0) || !(cfg.xi_min < cfg.xi_max)) {
    throw std::runtime_error("config field 'xi_min' must satisfy 0 <= xi_min < xi_max");
  }
  if (cfg.xi_points_per_decade < 2) {
    throw std::runtime_error("config field 'xi_points_per_decade' must be >= 2");
  }
  if (!(cfg.separation > 0.0)) throw std::runtime_error("config field 'separation' must be > 0");
  IntegrationSettings s;
  s.rel_tol = cfg.rel_tol;
  s.abs_floor = cfg.abs_floor;
  s.max_matsubara_n = cfg.max_matsubara_n;
  s.k_upper_multiplier = cfg.k_upper_multiplier;
  s.threads = cfg.threads;
  try {
    s.validate();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
}

IntegrationSettings settings_from(const RunConfig& cfg) {
  IntegrationSettings s;
  s.rel_tol = cfg.rel_tol;
  s.abs_floor = cfg.abs_floor;
  s.max_matsubara_n = cfg.max_matsubara_n;
  s.k_upper_multiplier = cfg.k_upper_multiplier;
  s.threads = cfg.threads;
  return s;
}

class OutputStream {
 public:
  explicit OutputStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("config field 'out': cannot open '" + path + "'");
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_sweep(const RunConfig& cfg) {
  validate_common(cfg);
  SystemBundle b = load_materials(cfg, true);
  const ThermalEnvironment env(cfg.temperature);
  const SweepReport report =
      sweep(b.system, env, cfg.rmin, cfg.rmax, cfg.points_per_decade, settings_from(cfg));

  OutputStream out(cfg.out);
  std::ostream& os = out.get();
  os << "R_m,F_ret_J_per_m,F_nonret_J_per_m,F_n0_J_per_m,ratio_abs,converged\n";
  bool all_ok = true;
  for (size_t i = 0; i < report.points.size(); ++i) {
    const SweepPoint& p = report.points[i];
    const bool ok = p.conv_ret && p.conv_nonret && p.conv_n0;
    all_ok = all_ok && ok;
    os << fmt(p.R) << ',' << fmt(p.F_ret) << ',' << fmt(p.F_nonret) << ',' << fmt(p.F_n0) << ','
       << fmt(report.ratio[i].second) << ',' << (ok ? '1' : '0') << '\n';
  }
  for (double bdry : report.boundaries) {
    os << "# boundary R_m = " << fmt(bdry) << '\n';
  }
  for (const Extremum& e : report.extrema) {
    os << "# extremum kind=" << (e.is_maximum ? "max" : "min") << " R_m = " << fmt(e.R)
       << " F_J_per_m = " << fmt(e.F) << '\n';
  }
  if (cfg.rmin < b.system.thin_rod_min_separation()) {
    os << "# warning: thin-rod approximation marginal below R_m = "
       << fmt(b.system.thin_rod_min_separation()) << '\n';
  }
  for (const std::string& w : report.warnings) {
    os << "# warning: " << w << '\n';
  }
  return all_ok ? 0 : 2;
}

int cmd_crossings(const RunConfig& cfg) {
  validate_common(cfg);
  SystemBundle b = load_materials(cfg, false);
  if (b.materials.size() < 2) {
    throw std::runtime_error("config: crossings needs at least two material cards (mat1, mat2)");
  }
  OutputStream out(cfg.out);
  std::ostream& os = out.get();
  const double lo = cfg.xi_min > 0.0 ? cfg.xi_min : 1e6;
  for (size_t i = 0; i < b.materials.size(); ++i) {
    for (size_t j = i + 1; j < b.materials.size(); ++j) {
      const DielectricModel& A = *b.materials[i];
      const DielectricModel& B = *b.materials[j];
      const CrossingReport rep = find_crossings(A, B, lo, cfg.xi_max);
      os << "pair " << b.labels[i] << "/" << b.labels[j] << ": ";
      if (rep.crossings.empty()) {
        os << "no crossings\n";
      } else {
        os << rep.crossings.size() << (rep.crossings.size() == 1 ? " crossing\n" : " crossings\n");
        for (const Crossing& c : rep.crossings) {
          const std::string hi_lo = c.sign_below > 0 ? b.labels[i] : b.labels[j];
          const std::string lo_hi = c.sign_below > 0 ? b.labels[j] : b.labels[i];
          os << "  xi_rad_s = " << fmt(c.xi) << "  below: " << hi_lo << " > " << lo_hi
             << "  above: " << lo_hi << " > " << hi_lo << '\n';
        }
      }
      for (const std::string& note : rep.notes) {
        os << "  note: " << note << '\n';
      }
    }
  }
  return 0;
}

int cmd_epsilon(const RunConfig& cfg) {
  validate_common(cfg);
  SystemBundle b = load_materials(cfg, false);
  if (b.materials.empty()) {
    throw std::runtime_error("config: epsilon needs at least one material card");
  }
  OutputStream out(cfg.out);
  std::ostream& os = out.get();
  os << "xi_rad_s";
  for (const std::string& l : b.labels) os << ',' << l;
  os << '\n';
  const double lo = cfg.xi_min > 0.0 ? cfg.xi_min : 1e6;
  const int npts = static_cast<int>(std::ceil(std::log10(cfg.xi_max / lo) *
                                              cfg.xi_points_per_decade)) +
                   1;
  const double dl = std::log(cfg.xi_max / lo) / (npts - 1);
  for (int i = 0; i < npts; ++i) {
    const double xi = (i == npts - 1) ? cfg.xi_max : lo * std::exp(i * dl);
    os << fmt(xi);
    for (const auto& m : b.materials) os << ',' << fmt(m->eval(xi));
    os << '\n';
  }
  return 0;
}

int cmd_energy(const RunConfig& cfg) {
  validate_common(cfg);
  SystemBundle b = load_materials(cfg, true);
  const ThermalEnvironment env(cfg.temperature);
  const IntegrationSettings settings = settings_from(cfg);
  OutputStream out(cfg.out);
  std::ostream& os = out.get();
  os << "mode,R_m,F_J_per_m,n_terms,k_evals,converged\n";
  bool all_ok = true;
  auto one = [&](SummationMode mode, const char* name) {
    const EnergyResult r = free_energy(b.system, env, cfg.separation, mode, settings);
    all_ok = all_ok && r.converged;
    os << name << ',' << fmt(r.R) << ',' << fmt(r.F) << ',' << r.n_terms_used << ',' << r.k_evals
       << ',' << (r.converged ? '1' : '0') << '\n';
    for (const std::string& w : r.warnings) os << "# warning: " << w << '\n';
  };
  if (cfg.mode == "retarded" || cfg.mode == "all") one(SummationMode::retarded, "retarded");
  if (cfg.mode == "nonretarded" || cfg.mode == "all") {
    one(SummationMode::nonretarded, "nonretarded");
  }
  if (cfg.mode == "n0" || cfg.mode == "all") one(SummationMode::zero_frequency_only, "n0");
  return all_ok ? 0 : 2;
}

}  // namespace

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config file '" + path + "': cannot open");
  const size_t slash = path.find_last_of("/\\");
  const std::string base = slash == std::string::npos ? "." : path.substr(0, slash);
  auto resolve = [&](const std::string& p) {
    return (p.empty() || p.front() == '/') ? p : base + "/" + p;
  };
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    const std::string body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '[' && body.back() == ']') {
      section = trim(body.substr(1, body.size() - 2));
      if (section != "rod1" && section != "rod2" && section != "medium" && section != "sweep" &&
          section != "run" && section != "xi") {
        throw std::runtime_error("config file '" + path + "' line " + std::to_string(lineno) +
                                 ": unknown section [" + section + "]");
      }
      continue;
    }
    const size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config file '" + path + "' line " + std::to_string(lineno) +
                               ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    const std::string field = section.empty() ? key : section + "." + key;

    if (section == "rod1" && key == "material") cfg.mat1 = resolve(value);
    else if (section == "rod1" && key == "radius") cfg.radius1 = parse_num(field, value);
    else if (section == "rod2" && key == "material") cfg.mat2 = resolve(value);
    else if (section == "rod2" && key == "radius") cfg.radius2 = parse_num(field, value);
    else if (section == "medium" && key == "material") cfg.mat3 = resolve(value);
    else if (section == "sweep" && key == "rmin") cfg.rmin = parse_num(field, value);
    else if (section == "sweep" && key == "rmax") cfg.rmax = parse_num(field, value);
    else if (section == "sweep" && key == "points_per_decade") {
      cfg.points_per_decade = parse_int(field, value);
    } else if (section == "run" && key == "temperature") {
      cfg.temperature = parse_num(field, value);
    } else if (section == "run" && key == "mode") cfg.mode = value;
    else if (section == "run" && key == "rel_tol") cfg.rel_tol = parse_num(field, value);
    else if (section == "run" && key == "abs_floor") cfg.abs_floor = parse_num(field, value);
    else if (section == "run" && key == "max_matsubara_n") {
      cfg.max_matsubara_n = parse_int(field, value);
    } else if (section == "run" && key == "k_upper_multiplier") {
      cfg.k_upper_multiplier = parse_num(field, value);
    } else if (section == "run" && key == "threads") cfg.threads = parse_int(field, value);
    else if (section == "run" && key == "out") cfg.out = value;
    else if (section == "run" && key == "separation") cfg.separation = parse_num(field, value);
    else if (section == "xi" && key == "min") cfg.xi_min = parse_num(field, value);
    else if (section == "xi" && key == "max") cfg.xi_max = parse_num(field, value);
    else if (section == "xi" && key == "points_per_decade") {
      cfg.xi_points_per_decade = parse_int(field, value);
    } else {
      throw std::runtime_error("config file '" + path + "' line " + std::to_string(lineno) +
                               ": unknown field '" + field + "'");
    }
  }
}

int run(int argc, const char* const* argv) {
  CLI::App app{
      "rodlif: Casimir-Lifshitz interaction free energy per unit length between two "
      "parallel thin dielectric nanorods in a fluid medium"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "sectioned key-value run configuration file");
    sub->add_option("--mat1", cfg.mat1, "rod 1 material card");
    sub->add_option("--mat2", cfg.mat2, "rod 2 material card");
    sub->add_option("--mat3", cfg.mat3, "medium material card");
    sub->add_option("--radius1", cfg.radius1, "rod 1 radius, m")->capture_default_str();
    sub->add_option("--radius2", cfg.radius2, "rod 2 radius, m")->capture_default_str();
    sub->add_option("--temperature", cfg.temperature, "temperature, K")->capture_default_str();
    sub->add_option("--rmin", cfg.rmin, "smallest separation, m")->capture_default_str();
    sub->add_option("--rmax", cfg.rmax, "largest separation, m")->capture_default_str();
    sub->add_option("--points-per-decade", cfg.points_per_decade, "sweep grid density")
        ->capture_default_str();
    sub->add_option("--rel-tol", cfg.rel_tol, "relative tolerance")->capture_default_str();
    sub->add_option("--abs-floor", cfg.abs_floor, "absolute energy floor, J/m")
        ->capture_default_str();
    sub->add_option("--max-matsubara-n", cfg.max_matsubara_n, "Matsubara term cap")
        ->capture_default_str();
    sub->add_option("--k-upper-multiplier", cfg.k_upper_multiplier, "k cutoff in units of 1/R")
        ->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker count (results are identical for any value)")
        ->capture_default_str();
    sub->add_option("--mode", cfg.mode,
                    "retarded | nonretarded | n0 | all (energy command; sweep always "
                    "reports all three)")
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "output path (default: stdout)");
    sub->add_option("--xi-min", cfg.xi_min, "lowest imaginary frequency, rad/s")
        ->capture_default_str();
    sub->add_option("--xi-max", cfg.xi_max, "highest imaginary frequency, rad/s")
        ->capture_default_str();
    sub->add_option("--xi-points-per-decade", cfg.xi_points_per_decade, "epsilon grid density")
        ->capture_default_str();
    sub->add_option("--separation", cfg.separation, "separation for the energy command, m")
        ->capture_default_str();
  };

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "separation sweep: CSV of F_ret, F_nonret, F_n0, sign boundaries and extrema");
  CLI::App* cross_cmd = app.add_subcommand(
      "crossings", "dielectric-function crossings xi* for each material pair");
  CLI::App* eps_cmd =
      app.add_subcommand("epsilon", "CSV of eps(i xi) per material on a log frequency grid");
  CLI::App* energy_cmd =
      app.add_subcommand("energy", "free energy per unit length at one separation");
  for (CLI::App* sub : {sweep_cmd, cross_cmd, eps_cmd, energy_cmd}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (!config_path.empty()) {
      // config provides defaults, explicit flags win
      RunConfig file_cfg;
      apply_config_file(config_path, file_cfg);
      CLI::App* sub = app.get_subcommands().front();
      auto keep_if_set = [&](const char* flag, auto member) {
        if (sub->count(flag) == 0) cfg.*member = file_cfg.*member;
      };
      keep_if_set("--mat1", &RunConfig::mat1);
      keep_if_set("--mat2", &RunConfig::mat2);
      keep_if_set("--mat3", &RunConfig::mat3);
      keep_if_set("--radius1", &RunConfig::radius1);
      keep_if_set("--radius2", &RunConfig::radius2);
      keep_if_set("--temperature", &RunConfig::temperature);
      keep_if_set("--rmin", &RunConfig::rmin);
      keep_if_set("--rmax", &RunConfig::rmax);
      keep_if_set("--points-per-decade", &RunConfig::points_per_decade);
      keep_if_set("--rel-tol", &RunConfig::rel_tol);
      keep_if_set("--abs-floor", &RunConfig::abs_floor);
      keep_if_set("--max-matsubara-n", &RunConfig::max_matsubara_n);
      keep_if_set("--k-upper-multiplier", &RunConfig::k_upper_multiplier);
      keep_if_set("--threads", &RunConfig::threads);
      keep_if_set("--mode", &RunConfig::mode);
      keep_if_set("--out", &RunConfig::out);
      keep_if_set("--xi-min", &RunConfig::xi_min);
      keep_if_set("--xi-max", &RunConfig::xi_max);
      keep_if_set("--xi-points-per-decade", &RunConfig::xi_points_per_decade);
      keep_if_set("--separation", &RunConfig::separation);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(cfg);
    if (cross_cmd->parsed()) return cmd_crossings(cfg);
    if (eps_cmd->parsed()) return cmd_epsilon(cfg);
    if (energy_cmd->parsed()) return cmd_energy(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace rodlif::cli
