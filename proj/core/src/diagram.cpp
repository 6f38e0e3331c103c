#include "bulkca/diagram.hpp"

#include <sstream>
#include <string>

namespace bulkca {

Diagram run_diagram(const Automaton& a, const PeriodicConfig& c, int steps,
                    int replicate_factor) {
  if (steps < 0) throw DomainError("step count must be non-negative");
  if (replicate_factor < 1)
    throw DomainError("replication factor must be >= 1");
  if (c.n != a.n) throw DomainError("configuration alphabet mismatch");
  PeriodicConfig cur = replicate(c, replicate_factor);
  Diagram d;
  d.n = a.n;
  d.width = cur.size();
  d.height = steps + 1;
  const std::uint64_t cells = static_cast<std::uint64_t>(d.width) *
                              static_cast<std::uint64_t>(d.height);
  if (cells > (1ull << 30)) throw InfeasibleError("diagram too large");
  d.cells.reserve(cells);
  for (int t = 0;; ++t) {
    d.cells.insert(d.cells.end(), cur.word.begin(), cur.word.end());
    if (t == steps) break;
    cur = step(a, cur);
  }
  return d;
}

std::string render_pgm(const Diagram& d, bool time_up) {
  std::ostringstream os;
  os << "P5\n" << d.width << " " << d.height << "\n255\n";
  for (int row = 0; row < d.height; ++row) {
    const int src = time_up ? d.height - 1 - row : row;
    for (int col = 0; col < d.width; ++col) {
      const State s = d.at(src, col);
      const int byte = d.n > 1 ? static_cast<int>(s) * 255 / (d.n - 1) : 0;
      os.put(static_cast<char>(byte));
    }
  }
  return os.str();
}

std::string render_ascii(const Diagram& d, bool time_up) {
  static const char* kGlyphs =
      "0123456789abcdefghijklmnopqrstuvwxyz"
      "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  if (d.n > 62)
    throw DomainError(
        "ascii rendering supports at most 62 states; render to pgm instead");
  std::string out;
  out.reserve(static_cast<std::size_t>(d.height) * (d.width + 1));
  for (int row = 0; row < d.height; ++row) {
    const int src = time_up ? d.height - 1 - row : row;
    for (int col = 0; col < d.width; ++col) {
      const State s = d.at(src, col);
      out += d.n <= 2 ? (s ? '#' : '.') : kGlyphs[s];
    }
    out += '\n';
  }
  return out;
}

}  // namespace bulkca
