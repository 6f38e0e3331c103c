#include "bulkca/simsearch.hpp"

#include <algorithm>
#include <exception>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace bulkca {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Injective:
      return "inj";
    case Relation::Surjective:
      return "surj";
    case Relation::Mixed:
      return "mixed";
  }
  return "?";
}

std::string SimulationWitness::format() const {
  std::ostringstream os;
  os << to_string(rel) << " alpha=<" << alpha.m << "," << alpha.tau << ","
     << alpha.T << "," << alpha.s << "> t=" << group_t;
  if (!subset.empty()) {
    os << " subset={";
    for (std::size_t i = 0; i < subset.size(); ++i)
      os << (i ? "," : "") << subset[i];
    os << "}";
  }
  os << " " << map.format();
  return os.str();
}

namespace {

struct Cell {
  int t = 1;
  Transform alpha;
};

// Canonical cell order: group t, block m, steps T, |s| with the negative
// sign first, mirror last. The first witness in this order wins.
std::vector<Cell> enumerate_cells(const SearchBounds& b, bool pin_alpha) {
  if (b.max_m < 1 || b.max_T < 1 || b.max_shift < 0 || b.max_group < 1)
    throw DomainError("search bounds out of range");
  std::vector<Cell> cells;
  for (int t = 1; t <= b.max_group; ++t) {
    if (pin_alpha) {
      cells.push_back({t, identity_transform()});
      continue;
    }
    for (int m = 1; m <= b.max_m; ++m)
      for (int T = 1; T <= b.max_T; ++T)
        for (int as = 0; as <= b.max_shift; ++as)
          for (int sign = 0; sign < (as == 0 ? 1 : 2); ++sign) {
            const long long s = sign == 0 ? -static_cast<long long>(as)
                                          : static_cast<long long>(as);
            for (const int tau : {1, -1}) {
              if (tau < 0 && !b.allow_mirror) continue;
              cells.push_back({t, Transform{m, tau, T, s}});
            }
          }
  }
  return cells;
}

struct CellResult {
  enum class Disp {
    kPrunedStates,
    kPrunedDiv,
    kPrunedQuiescence,
    kCutoff,
    kGuard,
    kNoWitness,
    kWitness
  } disp = Disp::kNoWitness;
  std::optional<SimulationWitness> wit;
  bool exhaustive = true;
  std::uint64_t evals = 0;
  std::uint64_t subsets_pruned = 0;
  std::string note;
};

int grouped_radius(int r, int t) {
  return transformed_radius(r, Transform{t, 1, t, 0});
}

CellResult process_cell(Relation rel, const Automaton& a, const Automaton& b,
                        const Cell& cell, bool b_lr_perm) {
  using Disp = CellResult::Disp;
  CellResult res;
  const std::uint64_t n_ap =
      checked_pow(static_cast<std::uint64_t>(a.n),
                  static_cast<unsigned>(cell.alpha.m));
  const std::uint64_t n_bp = checked_pow(static_cast<std::uint64_t>(b.n),
                                         static_cast<unsigned>(cell.t));
  if (n_ap > n_bp) {
    res.disp = Disp::kPrunedStates;
    return res;
  }
  if (b_lr_perm && rel == Relation::Surjective && n_bp % n_ap != 0) {
    res.disp = Disp::kPrunedDiv;
    return res;
  }
  const int R = std::max(transformed_radius(a.r, cell.alpha),
                         grouped_radius(b.r, cell.t));
  const std::uint64_t scan_states =
      rel == Relation::Injective ? n_ap : n_bp;
  if (checked_pow(scan_states, static_cast<unsigned>(2 * R + 1)) >
      kScanCutoff) {
    res.disp = Disp::kCutoff;
    return res;
  }
  try {
    const Automaton ap = apply_transform(a, cell.alpha);
    const Automaton bp = grouping(b, cell.t);
    if (rel == Relation::Injective && !quiescent_states(ap).empty() &&
        quiescent_states(bp).empty()) {
      res.disp = Disp::kPrunedQuiescence;
      return res;
    }
    const FindLimits limits;
    std::optional<StateMap> map;
    std::vector<State> subset;
    if (rel == Relation::Injective) {
      FindResult fr = find_subautomaton(ap, bp, limits);
      res.evals = fr.evaluations;
      res.exhaustive = fr.exhaustive;
      map = std::move(fr.map);
    } else if (rel == Relation::Surjective) {
      FindResult fr = find_quotient(ap, bp, limits);
      res.evals = fr.evaluations;
      res.exhaustive = fr.exhaustive;
      map = std::move(fr.map);
    } else {
      std::uint64_t budget = limits.eval_budget;
      for (const auto& q : stable_subsets(bp)) {
        if (q.size() < n_ap) continue;
        if (b_lr_perm && q.size() % n_ap != 0) {
          ++res.subsets_pruned;
          continue;
        }
        const Automaton restr = restrict_to(bp, q);
        FindResult fr = find_quotient(ap, restr, FindLimits{budget});
        res.evals += fr.evaluations;
        budget = budget > fr.evaluations ? budget - fr.evaluations : 0;
        if (fr.map) {
          map = std::move(fr.map);
          subset = q;
          break;
        }
        if (!fr.exhaustive || budget == 0) {
          res.exhaustive = false;
          break;
        }
      }
    }
    if (map) {
      SimulationWitness w;
      w.rel = rel;
      w.alpha = cell.alpha;
      w.group_t = cell.t;
      w.map = std::move(*map);
      w.subset = std::move(subset);
      res.wit = std::move(w);
      res.disp = Disp::kWitness;
    }
  } catch (const InfeasibleError& e) {
    res.disp = Disp::kGuard;
    res.note = e.what();
  }
  return res;
}

void add_note(std::vector<std::string>& notes, const std::string& note) {
  if (std::find(notes.begin(), notes.end(), note) == notes.end())
    notes.push_back(note);
}

void merge_cell(SearchOutcome& out, const CellResult& res) {
  using Disp = CellResult::Disp;
  out.stats.evaluations += res.evals;
  out.stats.subsets_pruned_divisibility += res.subsets_pruned;
  if (!res.exhaustive) {
    ++out.stats.budget_aborts;
    add_note(out.notes, "evaluation budget hit; some cells not exhausted");
  }
  switch (res.disp) {
    case Disp::kPrunedStates:
      ++out.stats.cells_pruned_state_count;
      break;
    case Disp::kPrunedDiv:
      ++out.stats.cells_pruned_divisibility;
      break;
    case Disp::kPrunedQuiescence:
      ++out.stats.cells_pruned_quiescence;
      break;
    case Disp::kCutoff:
      ++out.stats.cells_skipped_cutoff;
      add_note(out.notes, "window scan above cutoff; cells skipped");
      break;
    case Disp::kGuard:
      ++out.stats.cells_skipped_guard;
      add_note(out.notes, res.note);
      break;
    case Disp::kNoWitness:
    case Disp::kWitness:
      ++out.stats.cells_searched;
      break;
  }
}

SearchOutcome run_search(Relation rel, const Automaton& a, const Automaton& b,
                         const SearchBounds& bounds, int jobs,
                         bool pin_alpha) {
  const std::vector<Cell> cells = enumerate_cells(bounds, pin_alpha);
  const bool b_lr_perm =
      rel != Relation::Injective && try_lr_permutative(b).value_or(false);
  SearchOutcome out;
  out.stats.cells_total = cells.size();
  const std::size_t batch = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t base = 0; base < cells.size(); base += batch) {
    const std::size_t cnt = std::min(batch, cells.size() - base);
    std::vector<CellResult> results(cnt);
    if (cnt == 1) {
      results[0] = process_cell(rel, a, b, cells[base], b_lr_perm);
    } else {
      std::vector<std::thread> workers;
      std::vector<std::exception_ptr> errs(cnt);
      workers.reserve(cnt);
      for (std::size_t i = 0; i < cnt; ++i)
        workers.emplace_back([&, i] {
          try {
            results[i] = process_cell(rel, a, b, cells[base + i], b_lr_perm);
          } catch (...) {
            errs[i] = std::current_exception();
          }
        });
      for (auto& w : workers) w.join();
      for (const auto& e : errs)
        if (e) std::rethrow_exception(e);
    }
    // Merge in canonical order; stats past the winning cell are dropped
    // so the outcome never depends on the worker count.
    for (std::size_t i = 0; i < cnt; ++i) {
      merge_cell(out, results[i]);
      if (results[i].disp == CellResult::Disp::kWitness) {
        out.status = Status::Holds;
        out.witness = results[i].wit;
        if (!verify_witness(*out.witness, a, b))
          throw BulkcaError("search produced a witness that fails replay");
        return out;
      }
    }
  }
  out.status = Status::Unknown;
  return out;
}

}  // namespace

SearchOutcome search(Relation rel, const Automaton& a, const Automaton& b,
                     const SearchBounds& bounds, int jobs) {
  return run_search(rel, a, b, bounds, jobs, false);
}

SearchOutcome search_strong(Relation rel, const Automaton& a,
                            const Automaton& b, const SearchBounds& bounds,
                            int jobs) {
  return run_search(rel, a, b, bounds, jobs, true);
}

bool verify_witness(const SimulationWitness& w, const Automaton& a,
                    const Automaton& b) {
  try {
    if (w.group_t < 1 || w.alpha.m < 1 || w.alpha.T < 1 ||
        (w.alpha.tau != 1 && w.alpha.tau != -1))
      return false;
    const Automaton ap = apply_transform(a, w.alpha);
    const Automaton bp = grouping(b, w.group_t);
    switch (w.rel) {
      case Relation::Injective:
        return w.subset.empty() && check_subautomaton(ap, bp, w.map);
      case Relation::Surjective:
        return w.subset.empty() && check_quotient(ap, bp, w.map);
      case Relation::Mixed: {
        if (w.subset.empty()) return false;
        for (std::size_t i = 0; i < w.subset.size(); ++i) {
          if (static_cast<int>(w.subset[i]) >= bp.n) return false;
          if (i && w.subset[i - 1] >= w.subset[i]) return false;
        }
        const Automaton restr = restrict_to(bp, w.subset);
        return check_quotient(ap, restr, w.map);
      }
    }
    return false;
  } catch (const BulkcaError&) {
    return false;
  }
}

}  // namespace bulkca
