#include "cyclemetrics/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "cyclemetrics/densities.hpp"
#include "cyclemetrics/dickman.hpp"
#include "cyclemetrics/errors.hpp"
#include "cyclemetrics/moments.hpp"
#include "cyclemetrics/montecarlo.hpp"
#include "cyclemetrics/parallel.hpp"
#include "cyclemetrics/semismooth.hpp"
#include "cyclemetrics/shortcycles.hpp"
#include "cyclemetrics/specfun.hpp"
#include "cyclemetrics/tables.hpp"
#include "json.hpp"

namespace cyclemetrics {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double number_arg(const std::string& text) {
  try {
    return parse_number(text);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

template <class F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::vector<double> number_args(const std::vector<std::string>& text, std::size_t expected,
                                const std::string& what) {
  if (text.size() != expected) {
    throw UsageError(what + " takes " + std::to_string(expected) + " argument(s), got " +
                     std::to_string(text.size()));
  }
  std::vector<double> v;
  for (const auto& t : text) v.push_back(number_arg(t));
  return v;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

// ---- eval -----------------------------------------------------------------

double eval_function(const std::string& fn, const std::vector<std::string>& raw) {
  const auto& d = dickman();
  auto args = [&](std::size_t k) { return number_args(raw, k, fn); };
  if (fn == "rho1" || fn == "rho2" || fn == "rho3" || fn == "rho4") {
    return d.rho(fn[3] - '0')(args(1)[0]);
  }
  if (fn == "sigma") return d.sigma(args(1)[0]);
  if (fn == "E") return exp_integral(args(1)[0]);
  if (fn == "dilog") return dilog(args(1)[0]);
  if (fn == "f1") return f1(args(1)[0]);
  if (fn == "f2") return f2(args(1)[0]);
  if (fn == "f12") {
    const auto a = args(2);
    return f12(a[0], a[1]);
  }
  if (fn == "f123") {
    const auto a = args(3);
    return f123(a[0], a[1], a[2]);
  }
  if (fn == "f1234") {
    const auto a = args(4);
    return f1234(a[0], a[1], a[2], a[3]);
  }
  if (fn == "f13") {
    const auto a = args(2);
    return f13(a[0], a[1]);
  }
  if (fn == "f14") {
    const auto a = args(2);
    return f14(a[0], a[1]);
  }
  if (fn == "f23") {
    const auto a = args(2);
    return f23(a[0], a[1]);
  }
  if (fn == "g1") return g1(args(1)[0]);
  if (fn == "g12") {
    const auto a = args(2);
    return g12(a[0], a[1]);
  }
  if (fn == "g1234") {
    const auto a = args(4);
    return g1234(a[0], a[1], a[2], a[3]);
  }
  throw UsageError("unknown function '" + fn + "'");
}

void print_scalar(std::ostream& os, const RunConfig& cfg, const std::string& name,
                  const std::vector<std::string>& args, double value,
                  const bool* provisional = nullptr) {
  switch (cfg.format) {
    case OutputFormat::plain:
      os << format_fixed(value, cfg.precision);
      if (provisional && *provisional) os << " PROVISIONAL";
      os << '\n';
      break;
    case OutputFormat::csv:
      os << "name,args,value" << (provisional ? ",provisional" : "") << '\n';
      os << name << ',' << csv_field(join(args, " ")) << ',' << format_fixed(value, cfg.precision);
      if (provisional) os << ',' << (*provisional ? "true" : "false");
      os << '\n';
      break;
    case OutputFormat::json: {
      json j{{"name", name}, {"args", args}, {"value", value}};
      if (provisional) j["provisional"] = *provisional;
      os << j.dump() << '\n';
      break;
    }
  }
}

// ---- table ----------------------------------------------------------------

json estimate_json(const EstimateWithCI& e) {
  return {{"estimate", e.mean}, {"std_err", e.std_err}, {"n", e.n}, {"reps", e.reps},
          {"seed", e.seed}};
}

void print_table(std::ostream& os, const RunConfig& cfg, const Table& t) {
  if (cfg.format == OutputFormat::json) {
    json cells = json::array();
    for (const auto& c : t.cells) {
      json j{{"u", c.u},         {"v", c.v},         {"column", c.column},
             {"kind", c.kind},   {"value", c.value}, {"provisional", c.provisional}};
      if (c.simulated) j["simulated"] = estimate_json(*c.simulated);
      cells.push_back(j);
    }
    os << json{{"table", t.id}, {"caption", t.caption}, {"cells", cells}}.dump() << '\n';
    return;
  }
  if (cfg.format == OutputFormat::csv) {
    os << "u,column,kind,value,provisional,sim_estimate,sim_std_err\n";
    for (const auto& c : t.cells) {
      os << c.u << ',' << c.column << ',' << c.kind << ',' << format_fixed(c.value, cfg.precision)
         << ',' << (c.provisional ? "true" : "false") << ',';
      if (c.simulated) {
        os << format_fixed(c.simulated->mean, cfg.precision) << ','
           << format_fixed(c.simulated->std_err, cfg.precision);
      } else {
        os << ',';
      }
      os << '\n';
    }
    return;
  }
  bool any_sim = false;
  bool any_provisional = false;
  for (const auto& c : t.cells) {
    any_sim = any_sim || c.simulated.has_value();
    any_provisional = any_provisional || c.provisional;
  }
  const std::size_t width = static_cast<std::size_t>(cfg.precision) + 4 + (any_sim ? 9 : 0);
  os << "Table " << t.id << ": " << t.caption << '\n';
  os << pad("u\\v", 4);
  for (const auto& col : t.columns) os << ' ' << pad(col, width);
  os << '\n';
  for (int u : t.rows) {
    os << pad(std::to_string(u), 4);
    for (const auto& col : t.columns) {
      const TableCell* c = t.find(u, col);
      std::string s;
      if (c) {
        s = format_fixed(c->value, cfg.precision) + (c->provisional ? "*" : " ");
        if (c->simulated) s += " sim " + format_fixed(c->simulated->mean, 2);
      }
      os << ' ' << pad(s, width);
    }
    os << '\n';
  }
  if (any_provisional) {
    os << "* provisional: computed from the box formula with its a + b + c <= 1 condition "
          "dropped\n";
  }
  if (any_sim) {
    for (const auto& c : t.cells) {
      if (!c.simulated) continue;
      os << "  (u=" << c.u << ", v=" << c.v << ") simulated "
         << format_fixed(c.simulated->mean, 6) << " +- " << format_fixed(c.simulated->std_err, 6)
         << " (n=" << c.simulated->n << ", reps=" << c.simulated->reps
         << ", seed=" << c.simulated->seed << ")\n";
    }
  }
}

// ---- moments --------------------------------------------------------------

void print_moments(std::ostream& os, const RunConfig& cfg) {
  struct Row {
    std::string quantity;
    int i;
    int j;
    double value;
  };
  std::vector<Row> rows;
  for (int r = 1; r <= 4; ++r) {
    for (int h = 1; h <= 2; ++h) rows.push_back({"moment", r, h, 0.0});
  }
  const int pairs[4][2] = {{1, 2}, {1, 3}, {1, 4}, {2, 3}};
  for (const auto& p : pairs) rows.push_back({"cross_moment", p[0], p[1], 0.0});
  parallel_for(rows.size(), cfg.threads, [&](std::size_t k) {
    Row& row = rows[k];
    row.value = row.quantity == "moment" ? moment(row.i, row.j) : cross_moment(row.i, row.j);
  });
  auto find = [&](const std::string& q, int i, int j) {
    for (const auto& row : rows) {
      if (row.quantity == q && row.i == i && row.j == j) return row.value;
    }
    return 0.0;
  };
  for (const auto& p : pairs) {
    const double mr = find("moment", p[0], 1);
    const double ms = find("moment", p[1], 1);
    const double vr = find("moment", p[0], 2) - mr * mr;
    const double vs = find("moment", p[1], 2) - ms * ms;
    const double c = find("cross_moment", p[0], p[1]);
    rows.push_back({"correlation", p[0], p[1], (c - mr * ms) / std::sqrt(vr * vs)});
  }

  switch (cfg.format) {
    case OutputFormat::json: {
      json j{{"moments", json::array()}, {"cross_moments", json::array()},
             {"correlations", json::array()}};
      for (const auto& row : rows) {
        if (row.quantity == "moment") {
          j["moments"].push_back({{"r", row.i}, {"h", row.j}, {"value", row.value}});
        } else {
          j[row.quantity == "cross_moment" ? "cross_moments" : "correlations"].push_back(
              {{"r", row.i}, {"s", row.j}, {"value", row.value}});
        }
      }
      os << j.dump() << '\n';
      break;
    }
    case OutputFormat::csv:
      os << "quantity,i,j,value\n";
      for (const auto& row : rows) {
        os << row.quantity << ',' << row.i << ',' << row.j << ','
           << format_fixed(row.value, cfg.precision) << '\n';
      }
      break;
    case OutputFormat::plain:
      for (const auto& row : rows) {
        if (row.quantity == "moment") {
          os << "E(L" << row.i << "^" << row.j << ")/n^" << row.j << "  ";
        } else if (row.quantity == "cross_moment") {
          os << "E(L" << row.i << " L" << row.j << ")/n^2  ";
        } else {
          os << "corr(L" << row.i << ", L" << row.j << ")  ";
        }
        os << format_fixed(row.value, cfg.precision) << '\n';
      }
      break;
  }
}

// ---- sim ------------------------------------------------------------------

void print_estimates(std::ostream& os, const RunConfig& cfg, const std::vector<std::string>& names,
                     const std::vector<EstimateWithCI>& est) {
  if (cfg.format == OutputFormat::json) {
    json arr = json::array();
    for (std::size_t i = 0; i < est.size(); ++i) {
      json j = estimate_json(est[i]);
      j["event"] = names[i];
      arr.push_back(j);
    }
    os << arr.dump() << '\n';
    return;
  }
  os << "event,n,reps,estimate,std_err,seed\n";
  for (std::size_t i = 0; i < est.size(); ++i) {
    os << csv_field(names[i]) << ',' << est[i].n << ',' << est[i].reps << ','
       << format_fixed(est[i].mean, cfg.precision) << ','
       << format_fixed(est[i].std_err, cfg.precision) << ',' << est[i].seed << '\n';
  }
}

// ---- short ----------------------------------------------------------------

void print_short(std::ostream& os, const RunConfig& cfg, long max, bool joint,
                 const std::vector<long>& growth, long reps) {
  const int p = cfg.precision;
  json j;
  if (cfg.format == OutputFormat::json) {
    j["laws"] = json::array();
    for (long i = 1; i <= max; ++i) {
      j["laws"].push_back({{"i", i}, {"p_s1", p_s1(i)}, {"p_s2", p_s2(i)}});
    }
    if (joint) {
      j["joint"] = json::array();
      for (long a = 1; a <= max; ++a) {
        for (long b = a; b <= max; ++b) {
          j["joint"].push_back({{"i", a}, {"j", b}, {"p", p_s1_s2(a, b)}});
        }
      }
    }
  } else {
    os << (cfg.format == OutputFormat::csv ? "i,p_s1,p_s2\n" : "i  P{S1=i}  P{S2=i}\n");
    const char* sep = cfg.format == OutputFormat::csv ? "," : "  ";
    for (long i = 1; i <= max; ++i) {
      os << i << sep << format_fixed(p_s1(i), p) << sep << format_fixed(p_s2(i), p) << '\n';
    }
    if (joint) {
      os << (cfg.format == OutputFormat::csv ? "i,j,p_s1_s2\n" : "i  j  P{S1=i & S2=j}\n");
      for (long a = 1; a <= max; ++a) {
        for (long b = a; b <= max; ++b) {
          os << a << sep << b << sep << format_fixed(p_s1_s2(a, b), p) << '\n';
        }
      }
    }
  }
  if (!growth.empty()) {
    const GrowthReport g = s1s2_growth_experiment(growth, reps, cfg.seed, cfg.threads);
    if (cfg.format == OutputFormat::json) {
      json rows = json::array();
      for (std::size_t k = 0; k < g.rows.size(); ++k) {
        rows.push_back({{"n", g.rows[k].n},
                        {"mean", g.rows[k].mean},
                        {"std_err", g.rows[k].std_err},
                        {"residual", g.residuals[k]}});
      }
      j["growth"] = {{"rows", rows}, {"c", g.c}, {"r_squared", g.r_squared},
                     {"reps", reps},  {"seed", cfg.seed},
                     {"note", "S2 = 0 when the permutation has a single cycle"}};
    } else {
      os << "# E(S1 S2) growth, S2 = 0 when the permutation has a single cycle; reps=" << reps
         << " seed=" << cfg.seed << '\n';
      os << "n,mean,std_err,residual\n";
      for (std::size_t k = 0; k < g.rows.size(); ++k) {
        os << g.rows[k].n << ',' << format_fixed(g.rows[k].mean, p) << ','
           << format_fixed(g.rows[k].std_err, p) << ',' << format_fixed(g.residuals[k], p) << '\n';
      }
      os << "# fit mean = c ln(n)^3: c=" << format_fixed(g.c, p)
         << " R^2=" << format_fixed(g.r_squared, p) << '\n';
    }
  }
  if (cfg.format == OutputFormat::json) os << j.dump() << '\n';
}

// ---- grid -----------------------------------------------------------------

void print_grid(std::ostream& os, const RunConfig& cfg, const Grid& g) {
  if (cfg.format == OutputFormat::json) {
    json pts = json::array();
    for (const auto& p : g.points) pts.push_back({p.x, p.y, p.value});
    os << json{{"density", to_string(g.density)},
               {"step", g.step},
               {"clamp", g.clamp},
               {"coordinates", {g.first, g.second}},
               {"points", pts}}
              .dump()
       << '\n';
    return;
  }
  os << "# density=" << to_string(g.density) << " coordinates=(" << g.first << "," << g.second
     << ") step=" << g.step << " clamp: " << g.second << " >= " << g.clamp
     << " (lattice rows below are evaluated at the clamp)\n";
  os << "x,y,value\n";
  for (const auto& p : g.points) {
    os << format_fixed(p.x, 6) << ',' << format_fixed(p.y, 6) << ','
       << format_fixed(p.value, cfg.precision) << '\n';
  }
}

}  // namespace

std::string format_fixed(double v, int precision) {
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  if (res.ec != std::errc()) return "nan";
  std::string s(buf, res.ptr);
  // avoid printing "-0.000..."
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limiting distributions of the longest and shortest cycle lengths of random "
               "permutations and mappings",
               "cyclemetrics"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  cfg.threads = default_threads();
  std::string format = "plain";
  app.add_option("--precision", cfg.precision, "Decimals in printed values")
      ->check(CLI::Range(1, 12));
  app.add_option("--format", format, "csv, json or plain")
      ->check(CLI::IsMember({"csv", "json", "plain"}));
  app.add_option("--seed", cfg.seed, "Simulation seed");
  app.add_option("--threads", cfg.threads, "Worker threads (default $CYCLEMETRICS_THREADS or 1)")
      ->check(CLI::Range(1, 4096));
  app.add_option("--out", cfg.out, "Write output to this file instead of stdout");

  int table_id = 0;
  bool table_sim = false;
  long sim_n = 100000;
  long sim_reps = 1000000;
  auto* table = app.add_subcommand("table", "Print reference table 1..8");
  table->add_option("id", table_id, "Table number")->required()->check(CLI::Range(1, 8));
  table->add_flag("--sim", table_sim, "Add simulated values to provisional cells (tables 7, 8)");
  table->add_option("--sim-n", sim_n, "Permutation size for --sim");
  table->add_option("--sim-reps", sim_reps, "Replicates for --sim");

  std::string fn;
  std::vector<std::string> fn_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a function or density");
  eval->add_option("function", fn,
                   "rho1..rho4, sigma, E, dilog, f1, f2, f12, f123, f1234, f13, f14, f23, g1, g12, "
                   "g1234")
      ->required();
  eval->add_option("args", fn_args, "Arguments (fractions like 1/3 allowed)");

  std::string kind;
  std::vector<std::string> prob_args;
  auto* prob = app.add_subcommand("prob", "Evaluate a joint probability");
  prob->add_option("kind", kind, "i0 i1 i2 i3 j1 j2 j3 k0 k1 l1 box3 box4")->required();
  prob->add_option("args", prob_args, "Arguments a, b, ... (fractions like 1/3 allowed)");

  auto* moments = app.add_subcommand("moments", "Moments, cross-moments and correlations");

  std::vector<std::string> events;
  long n = 100000;
  long reps = 100000;
  bool mapping = false;
  auto* sim = app.add_subcommand("sim", "Monte Carlo estimates of events");
  sim->add_option("--event", events, "Event such as L3<=1/4,L2>1/4 (repeatable)")->required();
  sim->add_option("--n", n, "Permutation or mapping size")->check(CLI::PositiveNumber);
  sim->add_option("--reps", reps, "Replicates")->check(CLI::PositiveNumber);
  sim->add_flag("--mapping", mapping, "Sample random mappings instead of permutations");

  long short_max = 10;
  bool short_joint = false;
  std::vector<long> growth;
  long growth_reps = 100000;
  auto* shortc = app.add_subcommand("short", "Shortest-cycle laws and E(S1 S2) growth");
  shortc->add_option("--max", short_max, "Largest i, j to print")->check(CLI::PositiveNumber);
  shortc->add_flag("--joint", short_joint, "Also print P{S1=i & S2=j}");
  shortc->add_option("--growth", growth, "Values of n for the E(S1 S2) experiment")
      ->delimiter(',');
  shortc->add_option("--reps", growth_reps, "Replicates per n")->check(CLI::PositiveNumber);

  std::string density;
  std::string step_text = "0.01";
  auto* grid = app.add_subcommand("grid", "Density values on a lattice");
  grid->add_option("density", density, "f12, f13, f14, f23 or g12")->required();
  grid->add_option("--step", step_text, "Lattice step in (0, 0.1]");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }
  cfg.format = format == "csv"    ? OutputFormat::csv
               : format == "json" ? OutputFormat::json
                                  : OutputFormat::plain;

  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "error: cannot open " << cfg.out << " for writing\n";
      return exit_code::failure;
    }
  }
  std::ostream& os = cfg.out.empty() ? out : file;

  try {
    if (table->parsed()) {
      cfg.command = "table";
      Table t = compute_table(table_id, cfg.threads);
      if (table_sim) {
        if (table_id != 7 && table_id != 8) throw UsageError("--sim applies to tables 7 and 8");
        SimConfig sc;
        sc.n = sim_n;
        sc.reps = sim_reps;
        sc.seed = cfg.seed;
        sc.threads = cfg.threads;
        simulate_table(t, sc);
      }
      print_table(os, cfg, t);
    } else if (eval->parsed()) {
      cfg.command = "eval";
      print_scalar(os, cfg, fn, fn_args, eval_function(fn, fn_args));
    } else if (prob->parsed()) {
      cfg.command = "prob";
      JointProbQuery q = as_usage([&] { return parse_prob_kind(kind); });
      const auto v = number_args(prob_args, static_cast<std::size_t>(arity(q)), kind);
      std::copy(v.begin(), v.end(), q.args.begin());
      const ProbResult r = evaluate(q);
      print_scalar(os, cfg, kind, prob_args, r.value, &r.provisional);
    } else if (moments->parsed()) {
      cfg.command = "moments";
      print_moments(os, cfg);
    } else if (sim->parsed()) {
      cfg.command = "sim";
      std::vector<Statistic> stats;
      for (const auto& e : events) {
        stats.push_back([ev = as_usage([&] { return parse_event(e); })](const CycleType& c) { return ev(c) ? 1.0 : 0.0; });
      }
      SimConfig sc;
      sc.n = n;
      sc.reps = reps;
      sc.seed = cfg.seed;
      sc.threads = cfg.threads;
      sc.model = mapping ? SampleModel::mapping : SampleModel::permutation;
      print_estimates(os, cfg, events, estimate_statistics(sc, stats));
    } else if (shortc->parsed()) {
      cfg.command = "short";
      print_short(os, cfg, short_max, short_joint, growth, growth_reps);
    } else if (grid->parsed()) {
      cfg.command = "grid";
      const GridDensity which = as_usage([&] { return parse_grid_density(density); });
      print_grid(os, cfg, density_grid(which, number_arg(step_text), cfg.threads));
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const QuadratureError& e) {
    err << "quadrature error: " << e.what() << '\n';
    return exit_code::quadrature;
  } catch (const ConstructionError& e) {
    err << "construction error: " << e.what() << '\n';
    return exit_code::quadrature;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return exit_code::domain;
  } catch (const ValidityError& e) {
    err << "domain error: " << e.what() << '\n';
    return exit_code::domain;
  } catch (const OutOfRangeError& e) {
    err << "domain error: " << e.what() << '\n';
    return exit_code::domain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::failure;
  }
  os.flush();
  return exit_code::ok;
}

}  // namespace cyclemetrics
