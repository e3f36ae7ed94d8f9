#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bench/bench.hpp"
#include "mcfrac/error.hpp"
#include "mcfrac/fnls.hpp"
#include "mcfrac/io.hpp"

namespace mcfrac::bench {
namespace {

template <class T>
T opt(const Json& c, const char* key, T def) {
  if (!c.contains(key) || c.at(key).is_null()) return def;
  try {
    return c.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string("config key '") + key + "' has the wrong type");
  }
}

std::vector<std::size_t> parse_n_list(const Json& c) {
  std::vector<std::size_t> out;
  if (!c.contains("N_list")) return out;
  const auto& v = c.at("N_list");
  if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const long n = std::stol(item, &used);
        if (used != item.size() || n < 1) throw std::invalid_argument(item);
        out.push_back(static_cast<std::size_t>(n));
      } catch (const std::logic_error&) {
        throw InvalidArgument("N_list entry '" + item + "' is not a positive integer");
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number_integer() || e.get<long>() < 1) throw InvalidArgument("N_list entries must be positive integers");
      out.push_back(e.get<std::size_t>());
    }
  } else {
    throw InvalidArgument("N_list must be an array or a comma-separated string");
  }
  return out;
}

std::vector<double> parse_double_list(const Json& c, const char* key, std::vector<double> def) {
  if (!c.contains(key)) return def;
  const auto& v = c.at(key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw InvalidArgument(std::string(key) + " must be a number or an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw InvalidArgument(std::string(key) + " entries must be numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::size_t get_dims(const Json& c) {
  const int d = opt<int>(c, "d", 1);
  if (d < 1 || d > 3) throw InvalidArgument("d must be 1, 2 or 3 (got " + std::to_string(d) + ")");
  return static_cast<std::size_t>(d);
}

void check_degree(std::size_t dims, std::size_t n) {
  const std::size_t cap = dims == 1 ? 8192 : dims == 2 ? 256 : 64;
  if (n < 1 || n > cap)
    throw InvalidArgument("N = " + std::to_string(n) + " outside the supported range [1, " + std::to_string(cap) +
                          "] for d = " + std::to_string(dims));
}

double get_nu(const Json& c, double def) {
  const double nu = opt<double>(c, "nu", def);
  if (!(nu > 0.0) || !std::isfinite(nu)) throw InvalidArgument("nu must be positive");
  return nu;
}

double get_s(const Json& c, double def) {
  const double s = opt<double>(c, "s", def);
  if (!(s > 0.0 && s <= 1.0)) throw InvalidArgument("s must lie in (0, 1] (got " + std::to_string(s) + ")");
  return s;
}

const std::vector<FracTerm>& multiterm_defaults() {
  static const std::vector<FracTerm> t = {{1.0, 0.77}, {2.0, 0.33}, {std::numbers::sqrt2, 0.21}, {1.0, 0.0}};
  return t;
}

FracOperatorSpec get_operator(const Json& c, const std::string& family) {
  FracOperatorSpec op;
  op.gamma = opt<double>(c, "gamma", family == "multiterm" ? 0.0 : 1.0);
  if (!std::isfinite(op.gamma)) throw InvalidArgument("gamma must be finite");
  if (c.contains("terms") && !c.at("terms").is_null()) {
    const auto& t = c.at("terms");
    if (t.is_string()) {
      op.terms = parse_terms(t.get<std::string>());
    } else if (t.is_array()) {
      for (const auto& e : t) {
        if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
          op.terms.push_back({e[0].get<double>(), e[1].get<double>()});
        else if (e.is_object())
          op.terms.push_back({opt<double>(e, "rho", 1.0), opt<double>(e, "s", 0.5)});
        else
          throw InvalidArgument("terms entries must be [rho, s] pairs or {rho, s} objects");
      }
    } else {
      throw InvalidArgument("terms must be a string or an array");
    }
    for (const auto& term : op.terms)
      if (!(term.s >= 0.0 && term.s <= 1.0)) throw InvalidArgument("term order s must lie in [0, 1]");
  } else if (family == "multiterm") {
    op.terms = multiterm_defaults();
  } else {
    op.terms = {{1.0, get_s(c, 0.5)}};
  }
  if (op.terms.empty()) throw InvalidArgument("operator has no terms");
  return op;
}

double get_r(const Json& c, const std::string& family) {
  const double r = opt<double>(c, "r", family == "multiterm" ? 0.75 * std::numbers::pi : 2.3);
  if (!(r > 0.0)) throw InvalidArgument("r must be positive");
  return r;
}

std::string get_family(const Json& c, const char* def) {
  const auto f = opt<std::string>(c, "family", def);
  if (f != "gaussian" && f != "rational" && f != "multiterm")
    throw InvalidArgument("unknown family '" + f + "' (expected gaussian, rational or multiterm)");
  return f;
}

std::filesystem::path out_dir(const Json& c) {
  const auto out = opt<std::string>(c, "out", "");
  if (out.empty()) return {};
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory '" + out + "': " + ec.message());
  return out;
}

std::ofstream open_file(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw IoError("cannot open '" + p.string() + "' for writing");
  return os;
}

Json fit_json(const OrderFit& f) {
  return {{"slope", f.slope}, {"order", f.order}, {"first", f.first}, {"count", f.count}};
}

Json record_json(const ConvergenceRecord& r) {
  return {{"N", r.n}, {"error_max", r.error_max}, {"error_l2", r.error_l2}, {"error_hs", r.error_hs}};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

std::string fmt_order(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

Json cmd_solve(const Json& c) {
  const auto dims = get_dims(c);
  const auto n = opt<std::size_t>(c, "N", 64);
  check_degree(dims, n);
  const double nu = get_nu(c, 2.5);
  const auto family = get_family(c, "gaussian");
  const auto op = get_operator(c, family);
  const double r = get_r(c, family);
  const Problem problem = make_problem(family, op, r);

  const auto basis = TensorBasis::create(dims, n, nu);
  const Expansion u = solve_problem(problem, basis);
  const ConvergenceRecord rec = measure(problem, u);

  Json report = {{"command", "solve"}, {"config", c}, {"errors", record_json(rec)}};
  if (const auto dir = out_dir(c); !dir.empty()) {
    save((dir / "solution_fourier_like.mcft").string(), u);
    save((dir / "solution_grid.mcft").string(), synthesize(u));
    ConvergenceReport cr{{rec}, c.dump()};
    auto os = open_file(dir / "errors.csv");
    write_csv(os, cr);
    report["files"] = {"solution_fourier_like.mcft", "solution_grid.mcft", "errors.csv"};
  }
  return report;
}

Json cmd_converge(const Json& c) {
  const auto dims = get_dims(c);
  const auto ns = parse_n_list(c);
  if (ns.size() < 2) throw InvalidArgument("converge needs at least two values in N_list");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    check_degree(dims, ns[i]);
    if (i > 0 && ns[i] <= ns[i - 1]) throw InvalidArgument("N_list must be strictly increasing");
  }
  const double nu = get_nu(c, 2.5);
  const auto family = get_family(c, "gaussian");
  const auto op = get_operator(c, family);
  const double r = get_r(c, family);
  const Problem problem = make_problem(family, op, r);
  const auto window = opt<std::size_t>(c, "window", 0);

  ConvergenceReport rep;
  rep.config_json = c.dump();
  for (auto n : ns) rep.records.push_back(measure(problem, dims, n, nu));

  Json records = Json::array();
  for (const auto& rec : rep.records) records.push_back(record_json(rec));
  Json report = {{"command", "converge"},
                 {"config", c},
                 {"records", records},
                 {"fit", {{"max", fit_json(fit_order(rep, Metric::max, window))},
                          {"l2", fit_json(fit_order(rep, Metric::l2, window))},
                          {"hs", fit_json(fit_order(rep, Metric::hs, window))}}}};
  if (op.terms.size() == 1 && family != "multiterm") {
    const auto fam = parse_family(family);
    report["predicted_rate"] = predicted_rate(fam, op.terms[0].s, static_cast<int>(dims), r);
  } else {
    report["predicted_rate"] = nullptr;
  }
  if (const auto dir = out_dir(c); !dir.empty()) {
    auto os = open_file(dir / "converge.csv");
    write_csv(os, rep);
    report["files"] = {"converge.csv"};
  }
  return report;
}

Json cmd_table1(const Json& c) {
  if (opt<int>(c, "d", 1) != 1) throw InvalidArgument("table1 is one-dimensional only");
  const double nu = get_nu(c, 2.5);
  const double gamma = opt<double>(c, "gamma", 1.0);
  if (!(gamma >= 0.0)) throw InvalidArgument("gamma must be >= 0");
  auto ns = parse_n_list(c);
  if (ns.empty())
    for (std::size_t n = 80; n <= 240; n += 20) ns.push_back(n);
  if (ns.size() < 2) throw InvalidArgument("table1 needs at least two values in N_list");
  const auto n_ref = opt<std::size_t>(c, "N_ref", 600);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    check_degree(1, ns[i]);
    if (i > 0 && ns[i] <= ns[i - 1]) throw InvalidArgument("N_list must be strictly increasing");
  }
  check_degree(1, n_ref);
  if (n_ref <= ns.back()) throw InvalidArgument("N_ref must exceed every N in N_list");
  const auto s_list = parse_double_list(c, "s", {0.6, 0.9});
  for (double s : s_list)
    if (!(s > 0.0 && s <= 1.0)) throw InvalidArgument("s must lie in (0, 1]");

  // error_l2 is the discrete norm on the N-point grid against the reference
  // evaluated there; error_l2_full is the exact L^2 norm of u_N - u_ref.
  Json tables = Json::array();
  std::ostringstream csv;
  csv << "# config: " << c.dump() << '\n' << "s,N,error_l2,order,error_l2_full,order_full\n";
  for (double s : s_list) {
    const Problem problem = make_problem("table1", FracOperatorSpec{{{1.0, s}}, gamma}, 0.0);
    const auto ref_basis = TensorBasis::create(1, n_ref, nu);
    const Expansion ref = from_fourier_like(solve_problem(problem, ref_basis));
    std::vector<double> nd, err, full;
    for (auto n : ns) {
      const auto basis = TensorBasis::create(1, n, nu);
      const Expansion u = from_fourier_like(solve_problem(problem, basis));
      std::vector<double> nodes(basis->size());
      for (std::size_t j = 0; j < nodes.size(); ++j) basis->node(j, std::span<double>(&nodes[j], 1));
      const GridField ref_on_grid{basis, evaluate(ref, nodes)};
      err.push_back(error_l2(synthesize(u), ref_on_grid));
      double acc = 0.0;
      for (std::size_t k = 0; k <= n_ref; ++k) {
        const double d = (k <= n ? u.coeffs[k] : 0.0) - ref.coeffs[k];
        acc += d * d;
      }
      full.push_back(std::sqrt(acc));
      nd.push_back(static_cast<double>(n));
    }
    const auto orders = successive_orders(nd, err);
    const auto orders_full = successive_orders(nd, full);
    Json rows = Json::array();
    for (std::size_t i = 0; i < ns.size(); ++i) {
      Json row = {{"N", ns[i]}, {"error_l2", err[i]}, {"error_l2_full", full[i]}};
      row["order"] = i == 0 ? Json(nullptr) : Json(orders[i - 1]);
      row["order_full"] = i == 0 ? Json(nullptr) : Json(orders_full[i - 1]);
      rows.push_back(row);
      csv << s << ',' << ns[i] << ',' << fmt(err[i]) << ',' << (i == 0 ? std::string() : fmt_order(orders[i - 1])) << ','
          << fmt(full[i]) << ',' << (i == 0 ? std::string() : fmt_order(orders_full[i - 1])) << '\n';
    }
    tables.push_back({{"s", s}, {"rows", rows}});
  }
  Json report = {{"command", "table1"}, {"config", c}, {"tables", tables}};
  if (const auto dir = out_dir(c); !dir.empty()) {
    auto os = open_file(dir / "table1.csv");
    os << csv.str();
    report["files"] = {"table1.csv"};
  }
  return report;
}

namespace {

FnlsConfig fnls_config(const Json& c) {
  FnlsConfig f;
  f.dims = get_dims(c);
  f.degree = opt<std::size_t>(c, "N", 128);
  check_degree(f.dims, f.degree);
  f.nu = get_nu(c, 2.5);
  f.s = get_s(c, 0.7);
  f.gamma = opt<double>(c, "gamma", 1.0);
  f.p = opt<double>(c, "p", 1.0);
  f.dt = opt<double>(c, "dt", 0.01);
  f.T = opt<double>(c, "T", 1.0);
  f.snapshot_times = parse_double_list(c, "snapshots", {});
  validate(f);
  return f;
}

Json run_json(const SimulationResult& r) {
  Json j = {{"steps", r.steps},
            {"dt_used", r.dt_used},
            {"dt_adjusted", r.dt_adjusted},
            {"final_time", r.state.time},
            {"max_mass_drift", r.max_mass_drift},
            {"blow_up", r.blow_up}};
  if (r.blow_up) {
    j["blow_up_step"] = r.blow_up_step;
    j["blow_up_reason"] = r.blow_up_reason;
  }
  return j;
}

double max_amplitude(const ComplexGridField& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

Json cmd_fnls(const Json& c) {
  const FnlsConfig base = fnls_config(c);
  const auto basis = TensorBasis::create(base.dims, base.degree, base.nu);
  const WaveState init{sample(ComplexPointFunction(sech_wave), basis), 0.0};
  const auto dir = out_dir(c);
  Json report = {{"command", "fnls"}, {"config", c}, {"initial_mass", discrete_mass(init.psi)},
                 {"initial_max_amplitude", max_amplitude(init.psi)}};

  if (!opt<bool>(c, "dt_study", false)) {
    const SimulationResult r = run_simulation(base, init);
    report["run"] = run_json(r);
    report["final_max_amplitude"] = max_amplitude(r.state.psi);
    if (!dir.empty()) {
      write_mass_trace((dir / "mass.jsonl").string(), r.trace);
      save((dir / "final.mcft").string(), r.state.psi);
      Json files = {"mass.jsonl", "final.mcft"};
      for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
        const auto name = "snapshot_" + std::to_string(k) + ".mcft";
        save((dir / name).string(), r.snapshots[k].psi);
        files.push_back(name);
      }
      report["files"] = files;
    }
    return report;
  }

  auto dts = parse_double_list(c, "dt_list", {0.1, 0.05, 0.025, 0.0125, 0.00625});
  if (dts.size() < 2) throw InvalidArgument("dt_list needs at least two step sizes");
  for (std::size_t i = 0; i < dts.size(); ++i) {
    if (!(dts[i] > 0.0)) throw InvalidArgument("dt_list entries must be positive");
    if (i > 0 && dts[i] >= dts[i - 1]) throw InvalidArgument("dt_list must be strictly decreasing");
  }
  FnlsConfig ref_cfg = base;
  ref_cfg.dt = dts.back() / 10.0;
  ref_cfg.snapshot_times.clear();
  const SimulationResult ref = run_simulation(ref_cfg, init);
  report["reference"] = run_json(ref);
  if (ref.blow_up) {
    report["blow_up"] = true;
    return report;
  }

  std::vector<double> emax, el2;
  Json rows = Json::array();
  double drift = ref.max_mass_drift;
  bool blow_up = false;
  for (double dt : dts) {
    FnlsConfig cfg = base;
    cfg.dt = dt;
    cfg.snapshot_times.clear();
    const SimulationResult r = run_simulation(cfg, init);
    drift = std::max(drift, r.max_mass_drift);
    if (r.blow_up) {
      blow_up = true;
      rows.push_back({{"dt", dt}, {"run", run_json(r)}});
      break;
    }
    emax.push_back(error_max(r.state.psi, ref.state.psi));
    el2.push_back(error_l2(r.state.psi, ref.state.psi));
    rows.push_back({{"dt", dt}, {"error_max", emax.back()}, {"error_l2", el2.back()}, {"run", run_json(r)}});
  }
  report["blow_up"] = blow_up;
  report["max_mass_drift"] = drift;
  std::vector<double> inv;
  for (std::size_t i = 0; i < emax.size(); ++i) inv.push_back(1.0 / dts[i]);
  const auto omax = successive_orders(inv, emax);
  const auto ol2 = successive_orders(inv, el2);
  for (std::size_t i = 1; i < emax.size(); ++i) {
    rows[i]["order_max"] = omax[i - 1];
    rows[i]["order_l2"] = ol2[i - 1];
  }
  report["dt_study"] = rows;
  if (!dir.empty()) {
    auto os = open_file(dir / "dt_study.csv");
    os << "# config: " << c.dump() << '\n' << "dt,error_max,error_l2,order_max,order_l2\n";
    for (std::size_t i = 0; i < emax.size(); ++i) {
      os << fmt(dts[i]) << ',' << fmt(emax[i]) << ',' << fmt(el2[i]) << ','
         << (i == 0 ? std::string() : fmt_order(omax[i - 1])) << ',' << (i == 0 ? std::string() : fmt_order(ol2[i - 1]))
         << '\n';
    }
    write_mass_trace((dir / "mass_reference.jsonl").string(), ref.trace);
    report["files"] = {"dt_study.csv", "mass_reference.jsonl"};
  }
  return report;
}

Json run_command(const std::string& command, const Json& config) {
  if (!config.is_object()) throw InvalidArgument("configuration must be a JSON object");
  if (command == "solve") return cmd_solve(config);
  if (command == "converge") return cmd_converge(config);
  if (command == "table1") return cmd_table1(config);
  if (command == "fnls") return cmd_fnls(config);
  if (command == "validate") return cmd_validate(config);
  throw InvalidArgument("unknown command '" + command + "'");
}

}  // namespace mcfrac::bench
