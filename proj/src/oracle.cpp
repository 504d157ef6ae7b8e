#include "wittsat/oracle.hpp"

#include <stdexcept>

#include "wittsat/kernels.hpp"

namespace wittsat {

BruteForceResult brute_force(const CnfFormula &f, int limit) {
  BruteForceResult r;
  r.models = kernels::enumerate_models(f, limit);
  r.satisfiable = !r.models.empty();
  return r;
}

namespace {

enum : std::int8_t { kFalse = 0, kTrue = 1, kUnset = -1 };

class Dpll {
public:
  explicit Dpll(const CnfFormula &f) : f_(f) {}

  bool solve(std::vector<std::int8_t> vals) {
    if (!simplify(vals))
      return false;
    // Lowest-index unassigned variable of an open clause; variables absent
    // from every open clause are irrelevant.
    int var = -1;
    for (const auto &c : f_.clauses) {
      if (satisfied(c, vals))
        continue;
      for (const auto &l : c.literals())
        if (vals[static_cast<std::size_t>(l.var)] == kUnset &&
            (var < 0 || l.var < var))
          var = l.var;
    }
    if (var < 0) {
      for (auto &v : vals)
        if (v == kUnset)
          v = kFalse;
      model = std::move(vals);
      return true;
    }
    ++decisions;
    for (std::int8_t choice : {kTrue, kFalse}) {
      auto next = vals;
      next[static_cast<std::size_t>(var)] = choice;
      if (solve(std::move(next)))
        return true;
    }
    return false;
  }

  std::vector<std::int8_t> model;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;

private:
  static std::int8_t value_of(const Literal &l, const std::vector<std::int8_t> &vals) {
    std::int8_t v = vals[static_cast<std::size_t>(l.var)];
    if (v == kUnset)
      return kUnset;
    return (v == kTrue) != l.negated ? kTrue : kFalse;
  }

  static bool satisfied(const Clause &c, const std::vector<std::int8_t> &vals) {
    for (const auto &l : c.literals())
      if (value_of(l, vals) == kTrue)
        return true;
    return false;
  }

  // Unit propagation and pure literals to a fixpoint; false on conflict.
  bool simplify(std::vector<std::int8_t> &vals) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto &c : f_.clauses) {
        if (satisfied(c, vals))
          continue;
        const Literal *unit = nullptr;
        int open = 0;
        for (const auto &l : c.literals())
          if (value_of(l, vals) == kUnset) {
            ++open;
            unit = &l;
          }
        if (open == 0)
          return false;
        if (open == 1) {
          vals[static_cast<std::size_t>(unit->var)] = unit->negated ? kFalse : kTrue;
          ++propagations;
          changed = true;
        }
      }
      if (changed)
        continue;

      // polarity bits: 1 = positive occurrence, 2 = negative
      std::vector<std::uint8_t> polarity(vals.size(), 0);
      for (const auto &c : f_.clauses) {
        if (satisfied(c, vals))
          continue;
        for (const auto &l : c.literals())
          if (vals[static_cast<std::size_t>(l.var)] == kUnset)
            polarity[static_cast<std::size_t>(l.var)] |= l.negated ? 2 : 1;
      }
      for (std::size_t v = 0; v < vals.size(); ++v) {
        if (polarity[v] == 1 || polarity[v] == 2) {
          vals[v] = polarity[v] == 1 ? kTrue : kFalse;
          changed = true;
        }
      }
    }
    return true;
  }

  const CnfFormula &f_;
};

} // namespace

DpllResult dpll(const CnfFormula &f) {
  DpllResult r;
  if (f.empty_clauses > 0)
    return r;
  Dpll solver(f);
  std::vector<std::int8_t> vals(static_cast<std::size_t>(f.n), kUnset);
  r.satisfiable = solver.solve(std::move(vals));
  r.decisions = solver.decisions;
  r.propagations = solver.propagations;
  if (r.satisfiable) {
    Assignment a(f.n, false);
    for (int i = 0; i < f.n; ++i)
      a.set(i, solver.model[static_cast<std::size_t>(i)] == kTrue);
    if (!f.satisfied_by(a))
      throw std::logic_error("DPLL produced a non-model");
    r.model = std::move(a);
  }
  return r;
}

} // namespace wittsat
