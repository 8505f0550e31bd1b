#include "cyclemetrics/tables.hpp"

#include "cyclemetrics/errors.hpp"
#include "cyclemetrics/parallel.hpp"

namespace cyclemetrics {

namespace {

struct Spec {
  const char* caption;
  int u_min;
  const char* lead;  // leading column label, or nullptr
  const char* lead_kind;
  const char* kind;
  int v_min;
  int v_end_offset;  // v runs to u + offset
};

Spec spec_for(int id) {
  switch (id) {
    case 1: return {"I0(1/u) and I1(1/u,1/v) for 2 <= u <= 6, 1 <= v < u", 2, "I0", "i0", "i1", 1, -1};
    case 2: return {"J1(1/u,1/v) for 2 <= u <= 6, 1 <= v <= u", 2, nullptr, nullptr, "j1", 1, 0};
    case 3: return {"I2(1/u,1/v) for 3 <= u <= 6, 1 <= v < u", 3, nullptr, nullptr, "i2", 1, -1};
    case 4: return {"J2(1/u,1/v) for 3 <= u <= 6, 1 <= v <= u", 3, nullptr, nullptr, "j2", 1, 0};
    case 5: return {"I3(1/u,1/v) for 4 <= u <= 6, 1 <= v < u", 4, nullptr, nullptr, "i3", 1, -1};
    case 6: return {"J3(1/u,1/v) for 4 <= u <= 6, 1 <= v <= u", 4, nullptr, nullptr, "j3", 1, 0};
    case 7: return {"K0(1/u) and K1(1/u,1/v) for 4 <= u <= 6, 3 <= v < u", 4, "K0", "k0", "k1", 3, -1};
    case 8: return {"L1(1/u,1/v) for 3 <= u <= 6, 2 <= v <= u", 3, nullptr, nullptr, "l1", 2, 0};
    default: throw DomainError("table id must be 1..8");
  }
}

}  // namespace

const TableCell* Table::find(int u, const std::string& column) const {
  for (const auto& c : cells) {
    if (c.u == u && c.column == column) return &c;
  }
  return nullptr;
}

Table table_layout(int id) {
  const Spec s = spec_for(id);
  Table t{id, s.caption, {}, {}, {}};
  if (s.lead) t.columns.push_back(s.lead);
  const int v_max = 6 + s.v_end_offset;
  for (int v = s.v_min; v <= v_max; ++v) t.columns.push_back(std::to_string(v));
  for (int u = s.u_min; u <= 6; ++u) {
    t.rows.push_back(u);
    const double a = 1.0 / u;
    if (s.lead) {
      JointProbQuery q = parse_prob_kind(s.lead_kind);
      q.args[0] = a;
      t.cells.push_back({u, s.lead, 0, q, s.lead_kind, 0.0, false, std::nullopt});
    }
    for (int v = s.v_min; v <= u + s.v_end_offset; ++v) {
      JointProbQuery q = parse_prob_kind(s.kind);
      q.args[0] = a;
      q.args[1] = 1.0 / v;
      t.cells.push_back({u, std::to_string(v), v, q, s.kind, 0.0, false, std::nullopt});
    }
  }
  return t;
}

Table compute_table(int id, int threads) {
  Table t = table_layout(id);
  parallel_for(t.cells.size(), threads, [&](std::size_t i) {
    const ProbResult r = evaluate(t.cells[i].query);
    t.cells[i].value = r.value;
    t.cells[i].provisional = r.provisional;
  });
  return t;
}

void simulate_table(Table& table, const SimConfig& config) {
  if (table.id != 7 && table.id != 8) return;
  std::vector<TableCell*> targets;
  std::vector<Statistic> stats;
  const double n = static_cast<double>(config.n);
  for (auto& c : table.cells) {
    if (!c.provisional) continue;
    const double a = c.query.args[0];
    const double b = c.query.args[1];
    targets.push_back(&c);
    if (table.id == 7) {
      stats.push_back([=](const CycleType& ct) {
        const double l2 = static_cast<double>(ct.largest(2));
        return ct.largest(3) <= a * n && l2 > a * n && l2 <= b * n ? 1.0 : 0.0;
      });
    } else {
      stats.push_back([=](const CycleType& ct) {
        return ct.largest(3) <= a * n && ct.largest(2) <= b * n ? 1.0 : 0.0;
      });
    }
  }
  const auto est = estimate_statistics(config, stats);
  for (std::size_t i = 0; i < targets.size(); ++i) targets[i]->simulated = est[i];
}

}  // namespace cyclemetrics
