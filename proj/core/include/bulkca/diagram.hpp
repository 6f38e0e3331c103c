#pragma once

#include <string>
#include <vector>

#include "bulkca/automaton.hpp"

namespace bulkca {

// Space-time diagram: row 0 is the initial configuration, row t the
// configuration after t steps.
struct Diagram {
  int n = 1;
  int width = 0;
  int height = 0;
  std::vector<State> cells;  // row-major

  State at(int row, int col) const {
    return cells[static_cast<std::size_t>(row) * width + col];
  }
};

Diagram run_diagram(const Automaton& a, const PeriodicConfig& c, int steps,
                    int replicate_factor = 1);

// Binary PGM (P5), one byte per cell, state scaled onto 0..255.
// time_up reverses the row order at render time only.
std::string render_pgm(const Diagram& d, bool time_up = false);

// One text line per row; at most 62 states.
std::string render_ascii(const Diagram& d, bool time_up = false);

}  // namespace bulkca
