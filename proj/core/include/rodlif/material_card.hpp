#pragma once

#include <stdexcept>
#include <string>

#include "rodlif/dielectric.hpp"

namespace rodlif {

// Error while parsing a material card or loss table; the message names the
// file and, where applicable, the offending field.
class CardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Key-value material card:
//
//   name = silica
//   source_type = oscillators          # or: tabulated
//   oscillator = <C> <omega_rad_s> <g_rad_s>   # repeatable
//   loss_table = relative/or/absolute/path     # tabulated cards
//
// '#' starts a comment. Loss-table paths are resolved relative to the card.
DielectricModel load_material_card(const std::string& path);

// Two-column loss table: omega_rad_s and eps'' per line, whitespace
// separated, '#' comments. This is the only tabulated ingestion format;
// CSV-style files (e.g. epsilon-command output) are rejected.
TabulatedLossData load_loss_table(const std::string& path);

}  // namespace rodlif
