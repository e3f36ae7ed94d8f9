// Command-line driver. Options given on the command line override values
// read from --config; the merged JSON object is passed to mcf_run_command.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcfrac/mcfrac.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string config;
  std::optional<int> d;
  std::optional<long> n;
  std::optional<std::string> n_list;
  std::optional<long> n_ref;
  std::optional<double> s;
  std::optional<std::string> terms;
  std::optional<double> gamma;
  std::optional<double> nu;
  std::optional<std::string> family;
  std::optional<double> r;
  std::optional<double> p;
  std::optional<double> t_final;
  std::optional<double> dt;
  std::optional<std::string> out;
  bool dt_study = false;
  std::optional<std::string> filter;
  std::optional<double> perturb;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON configuration file");
  sub->add_option("--d", o.d, "spatial dimension (1, 2 or 3)");
  sub->add_option("--N", o.n, "polynomial degree per axis");
  sub->add_option("--nu", o.nu, "mapping scale");
  sub->add_option("--s", o.s, "fractional order");
  sub->add_option("--gamma", o.gamma, "zeroth-order coefficient");
  sub->add_option("--out", o.out, "output directory");
}

template <class T>
void set(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

Json read_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file '" + path + "'");
  Json j = Json::parse(is);
  if (!j.is_object()) throw std::runtime_error("config file must hold a JSON object");
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for the integral fractional Laplacian on R^d"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mcf_version()));
  Options o;

  auto* solve = app.add_subcommand("solve", "solve one manufactured problem");
  add_common(solve, o);
  solve->add_option("--family", o.family, "gaussian, rational, multiterm or table1");
  solve->add_option("--r", o.r, "decay exponent of the rational family");
  solve->add_option("--terms", o.terms, "multi-term operator as rho:s,rho:s,...");

  auto* converge = app.add_subcommand("converge", "convergence study over a list of N");
  add_common(converge, o);
  converge->add_option("--N-list", o.n_list, "comma-separated degrees, ascending");
  converge->add_option("--family", o.family, "gaussian, rational or multiterm");
  converge->add_option("--r", o.r, "decay exponent of the rational family");
  converge->add_option("--terms", o.terms, "multi-term operator as rho:s,rho:s,...");

  auto* table1 = app.add_subcommand("table1", "L2 errors against a fine reference solution");
  add_common(table1, o);
  table1->add_option("--N-list", o.n_list, "comma-separated degrees, ascending");
  table1->add_option("--N-ref", o.n_ref, "degree of the reference solution");

  auto* fnls = app.add_subcommand("fnls", "fractional NLS with TS4 time stepping");
  add_common(fnls, o);
  fnls->add_option("--T", o.t_final, "final time");
  fnls->add_option("--dt", o.dt, "time step");
  fnls->add_option("--p", o.p, "nonlinearity exponent");
  fnls->add_flag("--dt-study", o.dt_study, "error and order against a fine-step reference");

  auto* validate = app.add_subcommand("validate", "run the built-in consistency checks");
  validate->add_option("--config", o.config, "JSON configuration file");
  validate->add_option("--nu", o.nu, "mapping scale");
  validate->add_option("--filter", o.filter, "run only checks whose name contains this text");
  validate->add_option("--perturb-stiffness", o.perturb, "add this value to one stiffness entry (sensitivity test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  Json config;
  try {
    config = read_config(o.config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  set(config, "d", o.d);
  set(config, "N", o.n);
  set(config, "N_list", o.n_list);
  set(config, "N_ref", o.n_ref);
  set(config, "s", o.s);
  set(config, "terms", o.terms);
  set(config, "gamma", o.gamma);
  set(config, "nu", o.nu);
  set(config, "family", o.family);
  set(config, "r", o.r);
  set(config, "p", o.p);
  set(config, "T", o.t_final);
  set(config, "dt", o.dt);
  set(config, "out", o.out);
  set(config, "filter", o.filter);
  set(config, "perturb_stiffness", o.perturb);
  if (o.dt_study) config["dt_study"] = true;

  const std::string command = app.get_subcommands().front()->get_name();
  char* report = nullptr;
  const mcf_status st = mcf_run_command(command.c_str(), config.dump().c_str(), &report);
  if (report) {
    std::cout << report << '\n';
    mcf_free_string(report);
  }
  if (st == MCF_OK) return kExitOk;
  std::cerr << "error (" << mcf_status_name(st) << "): " << mcf_last_error() << '\n';
  return st == MCF_INVALID_ARGUMENT ? kExitUsage : kExitFailure;
}
