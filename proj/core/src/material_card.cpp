#include "rodlif/material_card.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace rodlif {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  size_t h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

bool parse_double(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::string dirname(const std::string& path) {
  size_t s = path.find_last_of("/\\");
  return s == std::string::npos ? std::string(".") : path.substr(0, s);
}

}  // namespace

TabulatedLossData load_loss_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw CardError("loss table '" + path + "': cannot open file");
  }
  TabulatedLossData data;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    if (body.find(',') != std::string::npos) {
      throw CardError("loss table '" + path + "' line " + std::to_string(lineno) +
                      ": comma-separated input is not a loss table. Expected two "
                      "whitespace-separated columns (omega_rad_s, eps''); epsilon-command "
                      "CSV output cannot be re-ingested.");
    }
    std::istringstream ss(body);
    std::string t1, t2, extra;
    ss >> t1 >> t2;
    if (ss >> extra) {
      throw CardError("loss table '" + path + "' line " + std::to_string(lineno) +
                      ": expected exactly two columns");
    }
    double w, l;
    if (t2.empty() || !parse_double(t1, w) || !parse_double(t2, l)) {
      throw CardError("loss table '" + path + "' line " + std::to_string(lineno) +
                      ": expected two decimal numbers (omega_rad_s, eps'')");
    }
    data.omega.push_back(w);
    data.loss.push_back(l);
  }
  try {
    data.validate();
  } catch (const std::exception& e) {
    throw CardError("loss table '" + path + "': " + e.what());
  }
  return data;
}

DielectricModel load_material_card(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw CardError("material card '" + path + "': cannot open file");
  }
  std::string name;
  std::string source_type;
  std::string loss_path;
  std::vector<OscillatorTerm> terms;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    const size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw CardError("material card '" + path + "' line " + std::to_string(lineno) +
                      ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key == "name") {
      name = value;
    } else if (key == "source_type") {
      source_type = value;
    } else if (key == "oscillator") {
      std::istringstream ss(value);
      std::string c, w, g;
      ss >> c >> w >> g;
      OscillatorTerm t;
      if (g.empty() || !parse_double(c, t.strength) || !parse_double(w, t.resonance) ||
          !parse_double(g, t.damping)) {
        throw CardError("material card '" + path + "': field 'oscillator' (line " +
                        std::to_string(lineno) + ") expects three numbers: C omega_rad_s g_rad_s");
      }
      if (!(t.strength >= 0.0)) {
        throw CardError("material card '" + path + "': field 'oscillator' (line " +
                        std::to_string(lineno) + "): strength C must be >= 0");
      }
      if (!(t.resonance > 0.0)) {
        throw CardError("material card '" + path + "': field 'oscillator' (line " +
                        std::to_string(lineno) + "): resonance omega must be > 0");
      }
      if (!(t.damping >= 0.0)) {
        throw CardError("material card '" + path + "': field 'oscillator' (line " +
                        std::to_string(lineno) + "): damping g must be >= 0");
      }
      terms.push_back(t);
    } else if (key == "loss_table") {
      loss_path = value;
    } else {
      throw CardError("material card '" + path + "': unknown field '" + key + "' (line " +
                      std::to_string(lineno) + ")");
    }
  }

  if (name.empty()) {
    throw CardError("material card '" + path + "': field 'name' is required");
  }
  if (source_type == "oscillators") {
    if (!loss_path.empty()) {
      throw CardError("material card '" + path +
                      "': field 'loss_table' is not valid for source_type = oscillators");
    }
    return DielectricModel::from_oscillators(name, std::move(terms));
  }
  if (source_type == "tabulated") {
    if (!terms.empty()) {
      throw CardError("material card '" + path +
                      "': field 'oscillator' is not valid for source_type = tabulated");
    }
    if (loss_path.empty()) {
      throw CardError("material card '" + path +
                      "': field 'loss_table' is required for source_type = tabulated");
    }
    std::string full = loss_path;
    if (full.front() != '/') full = dirname(path) + "/" + loss_path;
    return DielectricModel::from_loss_table(name, load_loss_table(full));
  }
  throw CardError("material card '" + path +
                  "': field 'source_type' must be 'oscillators' or 'tabulated'");
}

}  // namespace rodlif
