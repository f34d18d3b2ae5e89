#pragma once

#include <cstdlib>
#include <memory>
#include <string>
#include <utility>

#include "rodlif/dielectric.hpp"
#include "rodlif/kernel.hpp"

namespace testsup {

inline std::string data_dir() {
  if (const char* env = std::getenv("RODLIF_DATA")) return env;
#ifdef RODLIF_DATA_DIR
  return RODLIF_DATA_DIR;
#else
  return "data";
#endif
}

inline std::string card(const std::string& name) { return data_dir() + "/materials/" + name; }

// Frequency-independent response over any xi of interest: a single
// oscillator parked twelve decades above the optical range.
inline std::shared_ptr<const rodlif::DielectricModel> constant_eps(double eps,
                                                                   std::string label) {
  return std::make_shared<rodlif::DielectricModel>(rodlif::DielectricModel::from_oscillators(
      std::move(label), {{eps - 1.0, 1e30, 0.0}}));
}

inline rodlif::RodSystem constant_system(double e1, double e2, double e3, double a = 1e-9,
                                         double b = 1e-9) {
  rodlif::RodSystem s;
  s.radius_a = a;
  s.radius_b = b;
  s.rod_a = constant_eps(e1, "rod-a");
  s.rod_b = constant_eps(e2, "rod-b");
  s.medium = constant_eps(e3, "medium");
  return s;
}

}  // namespace testsup
