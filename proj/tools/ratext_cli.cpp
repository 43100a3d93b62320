// ratext: build, inspect and verify rational extensions of shape invariant
// potentials. Exit status: 0 success, 1 verification failure, 2 bad input or
// refused construction.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ratext.hpp"
#include "ratext/io/run_config.hpp"

namespace {

using namespace ratext;
using ratext::io::Json;
using ratext::io::RunConfig;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kBadInput = 2;

struct Flags {
  std::string family, sign = "plus", omega, l, lambda, mu, alpha = "1", phi0 = "0", branch = "tanh";
  unsigned n = 0, kmax = 4, level = 0;
  std::string grid = "auto", out, format = "csv", suite, config, what = "psi";
  double tol = 0.0;
  bool corrupt = false;
};

void add_family_options(CLI::App* sub, Flags& f) {
  sub->add_option("--family", f.family, "harmonic | isotonic | cat2");
  sub->add_option("--sign", f.sign, "plus | minus (cat2)");
  sub->add_option("--omega", f.omega, "oscillator frequency (rational)");
  sub->add_option("--l", f.l, "centrifugal parameter (rational)");
  sub->add_option("--lambda", f.lambda, "cat2 lambda (rational)");
  sub->add_option("--mu", f.mu, "cat2 mu (rational)");
  sub->add_option("--alpha", f.alpha, "cat2 alpha (rational)");
  sub->add_option("--phi0", f.phi0, "cat2 phase (rational)");
  sub->add_option("--branch", f.branch, "tanh | coth (hyperbolic cat2)");
  sub->add_option("--n", f.n, "level used as superpotential index");
  sub->add_option("--kmax", f.kmax, "highest spectrum index");
  sub->add_option("--grid", f.grid, "LO,HI,N or auto");
  sub->add_option("--tol", f.tol, "relative eigenvalue tolerance");
  sub->add_option("--out", f.out, "output path");
  sub->add_option("--format", f.format, "csv | json");
  sub->add_option("--config", f.config, "JSON run configuration");
}

Rational require_rational(const std::string& flag, const std::string& text) {
  if (text.empty()) throw std::invalid_argument("missing --" + flag);
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument("--" + flag + ": " + e.what());
  }
}

FamilySpec family_from_flags(const Flags& f) {
  if (f.family == "harmonic") return Harmonic{require_rational("omega", f.omega)};
  if (f.family == "isotonic") return Isotonic{require_rational("omega", f.omega), require_rational("l", f.l)};
  if (f.family == "cat2") {
    SecondCategory c;
    c.sign = io::sign_from_string(f.sign);
    c.a = {require_rational("lambda", f.lambda), require_rational("mu", f.mu)};
    c.alpha = require_rational("alpha", f.alpha);
    c.phi0 = require_rational("phi0", f.phi0);
    c.branch = io::branch_from_string(f.branch);
    return c;
  }
  if (f.family.empty()) throw std::invalid_argument("missing --family");
  throw std::invalid_argument("unknown family '" + f.family + "' (expected harmonic, isotonic or cat2)");
}

// Config file first, then any flag given explicitly on the command line.
RunConfig make_config(const std::string& command, const Flags& f, const CLI::App* sub, std::size_t default_points) {
  RunConfig c;
  if (!f.config.empty()) c = io::load_run_config(f.config);
  c.command = command;
  auto given = [&](const char* name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--family") || (!c.spec && !f.family.empty())) c.spec = family_from_flags(f);
  if (given("--n")) c.n = f.n;
  if (given("--kmax")) c.k_max = f.kmax;
  if (given("--grid") || f.config.empty()) c.grid = io::parse_grid(f.grid, default_points);
  if (given("--tol")) {
    if (!(f.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
    c.tol = f.tol;
  }
  if (given("--out")) c.out = f.out;
  if (given("--format")) c.format = f.format;
  if (given("--suite")) c.suite = f.suite;
  if (given("--what")) c.what = f.what;
  if (given("--level")) c.level = f.level;
  if (c.format != "csv" && c.format != "json") throw std::invalid_argument("--format must be csv or json");
  return c;
}

const FamilySpec& require_spec(const RunConfig& c) {
  if (!c.spec) throw std::invalid_argument("no family given (use --family or a config file)");
  return *c.spec;
}

// Written to a sibling temporary first, then renamed into place.
void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot write '" + path + "'");
    os << content;
    if (!os) throw std::invalid_argument("cannot write '" + path + "'");
  }
  std::filesystem::rename(tmp, path);
}

// "cprs" and "cprs.json" both give "cprs.json" and "cprs.csv".
std::string with_extension(const std::string& base, const std::string& ext) {
  std::filesystem::path p(base);
  if (p.extension() == ".json" || p.extension() == ".csv") p.replace_extension();
  return p.string() + ext;
}

std::string spectrum_line(const SpectrumPrediction& s) {
  std::string line;
  for (const auto& e : s) line += (line.empty() ? "" : " ") + e.energy.str();
  return line;
}

// Header "x,<cols>" or "x,y,<cols>" and one row per grid point.
template <class... F>
std::string sample_csv(const ExtendedPotential& ext, const numverify::Grid& grid, const std::string& header,
                       const F&... columns) {
  const VariableMap map = ext.map();
  const bool with_y = map.kind != MapKind::identity;
  std::string out = with_y ? "x,y," + header + "\n" : "x," + header + "\n";
  for (double x : grid.points()) {
    out += io::format15(x);
    if (with_y) out += "," + io::format15(map.y(x));
    ((out += "," + io::format15(columns(x))), ...);
    out += "\n";
  }
  return out;
}

int cmd_extend(const RunConfig& c) {
  const ExtendedPotential ext = build_extension(require_spec(c), c.n);
  const char var = ext.v.variable == Variable::x ? 'x' : 'y';
  std::cout << "extension of " << describe(ext.spec) << " with n = " << ext.n << "\n";
  std::cout << "v_" << ext.n << "(" << var << ") = " << ext.v.value.str(var) << "\n";
  std::cout << "V_forward = " << ext.forward.total().str(var) << "\n";
  std::cout << "V_tilde = " << ext.tilde.total().str(var) << "\n";
  std::cout << "iso_kind " << to_string(ext.iso_kind) << " (" << ext.iso_justification << ")\n";
  try {
    std::cout << "spectrum: " << spectrum_line(predict_spectrum(ext, c.k_max)) << "\n";
  } catch (const ValidationError& e) {
    std::cout << "spectrum: unavailable (" << e.what() << ")\n";
  }
  if (ext.map().kind == MapKind::identity && ext.domain.t_interval().contains(Rational(0))) {
    std::cout << "Vtilde(0) = " << ext.tilde.total()(Rational(0)) << "\n";
  }
  const std::string base = c.out.empty() ? "extension" : c.out;
  const std::string json_path = with_extension(base, ".json");
  const std::string csv_path = with_extension(base, ".csv");
  write_atomically(json_path, io::to_json(ext, c.k_max).dump(2) + "\n");
  const numverify::Grid grid = numverify::resolve_grid(ext, c.grid);
  const PotentialSampler vf = forward_sampler(ext);
  const PotentialSampler vt = tilde_sampler(ext);
  write_atomically(csv_path, sample_csv(ext, grid, "V,Vtilde", vf, vt));
  std::cout << "wrote " << json_path << " and " << csv_path << "\n";
  return kOk;
}

int cmd_spectrum(const RunConfig& c) {
  const ExtendedPotential ext = build_extension(require_spec(c), c.n);
  const SpectrumPrediction s = predict_spectrum(ext, c.k_max);
  if (c.format == "json") {
    Json j;
    j["spec"] = io::to_json(ext.spec);
    j["n"] = ext.n;
    j["iso_kind"] = to_string(ext.iso_kind);
    j["spectrum"] = io::to_json(s);
    const std::string text = j.dump(2) + "\n";
    if (c.out.empty()) std::cout << text;
    else write_atomically(c.out, text);
    return kOk;
  }
  std::cout << "k  energy  source\n";
  for (const auto& e : s) std::cout << e.k << "  " << e.energy << "  " << e.provenance << "\n";
  std::cout << "spectrum: " << spectrum_line(s) << "\n";
  return kOk;
}

int cmd_verify(const RunConfig& c, bool corrupt) {
  std::vector<numverify::VerifyCase> cases;
  if (!c.suite.empty()) {
    if (c.suite != "default") throw std::invalid_argument("unknown suite '" + c.suite + "' (expected default)");
    cases = numverify::default_suite();
  } else {
    const FamilySpec& spec = require_spec(c);
    // Construction problems are input errors here, not verification failures.
    const ExtendedPotential ext = build_extension(spec, c.n);
    numverify::resolve_grid(ext, c.grid);
    predict_spectrum(ext, c.k_max);
    cases.push_back({describe(spec) + " n=" + std::to_string(c.n), spec, c.n, c.k_max, c.grid, c.tol});
  }
  numverify::VerifyOptions opt;
  opt.corrupt = corrupt;
  const auto outcomes = numverify::run_suite(cases, opt);
  bool all = true;
  Json report;
  Json list = Json::array();
  for (const auto& o : outcomes) {
    all = all && o.pass();
    list.push_back(io::to_json(o));
    std::cout << (o.pass() ? "PASS " : "FAIL ") << o.id;
    if (!o.report) {
      std::cout << "  error: " << o.error << "\n";
      continue;
    }
    double worst = 0.0;
    for (const auto& l : o.report->spectrum) worst = std::max(worst, l.error);
    std::cout << "  iso " << to_string(o.report->iso_observed) << "  max_rel_err " << io::format15(worst)
              << "  riccati " << (o.report->riccati_exact ? "exact" : "NONZERO");
    for (const auto& chk : o.report->checks) {
      if (!chk.pass) std::cout << "  [" << chk.name << " failed: " << chk.detail << "]";
    }
    std::cout << "\n";
  }
  report["pass"] = all;
  report["cases"] = list;
  if (!c.out.empty()) write_atomically(c.out, report.dump(2) + "\n");
  std::cout << (all ? "PASS" : "FAIL") << ": " << outcomes.size() << " case(s)\n";
  return all ? kOk : kFail;
}

int cmd_sample(const RunConfig& c) {
  const ExtendedPotential ext = build_extension(require_spec(c), c.n);
  const numverify::Grid grid = numverify::resolve_grid(ext, c.grid);
  std::function<double(double)> f;
  if (c.what == "psi") {
    f = WeightedSampler(partner_eigenfunction(ext, c.level), ext.map());
  } else if (c.what == "psi_forward") {
    f = WeightedSampler(forward_eigenfunction(ext, c.level), ext.map());
  } else if (c.what == "V") {
    f = forward_sampler(ext);
  } else if (c.what == "Vtilde") {
    f = tilde_sampler(ext);
  } else {
    throw std::invalid_argument("--what must be psi, psi_forward, V or Vtilde");
  }
  std::string text;
  if (c.format == "json") {
    Json rows = Json::array();
    for (double x : grid.points()) rows.push_back({{"x", io::number15(x)}, {"value", io::number15(f(x))}});
    text = rows.dump(2) + "\n";
  } else {
    text = sample_csv(ext, grid, "value", f);
  }
  if (c.out.empty()) std::cout << text;
  else write_atomically(c.out, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational extensions of shape invariant potentials"};
  app.require_subcommand(1);
  Flags f;
  CLI::App* extend = app.add_subcommand("extend", "build an extension and export JSON and CSV");
  CLI::App* spectrum = app.add_subcommand("spectrum", "print the predicted partner spectrum");
  CLI::App* verify = app.add_subcommand("verify", "numerically verify one case or a suite");
  CLI::App* sample = app.add_subcommand("sample", "sample a potential or eigenfunction on a grid");
  for (CLI::App* sub : {extend, spectrum, verify, sample}) add_family_options(sub, f);
  verify->add_option("--suite", f.suite, "named suite (default)");
  verify->add_flag("--corrupt", f.corrupt, "perturb v_n before checking")->group("");
  sample->add_option("--what", f.what, "psi | psi_forward | V | Vtilde");
  sample->add_option("--level", f.level, "eigenfunction level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (extend->parsed()) return cmd_extend(make_config("extend", f, extend, 400));
    if (spectrum->parsed()) return cmd_spectrum(make_config("spectrum", f, spectrum, 400));
    if (verify->parsed()) return cmd_verify(make_config("verify", f, verify, 4000), f.corrupt);
    return cmd_sample(make_config("sample", f, sample, 400));
  } catch (const ExtensionRefused& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
}
