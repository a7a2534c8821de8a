#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gcy/cli.hpp"

namespace gcy::cli {

namespace fs = std::filesystem;

namespace {

// Thrown for bad arguments or input that parsed but makes no sense; exit code 2.
struct UsageError : Error {
  using Error::Error;
};

json read_json(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return json::parse(in);
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open '" + path + "'");
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError("cannot parse " + (path == "-" ? std::string("stdin") : "'" + path + "'") + ": " + e.what());
  }
}

std::string describe_point(const TorusGrid& g, std::size_t p) {
  std::ostringstream os;
  os << "point " << p << " (x = ";
  const auto x = g.point(p);
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

Form real_form(const json& j, const char* what) {
  const Form f = form_from_json(j);
  if (!f.is_real(1e-14 * std::max(1.0, f.max_abs()))) throw UsageError(std::string(what) + ": form must be real");
  return f.real();
}

int cmd_analyze(const std::string& input, std::istream& in, std::ostream& out) {
  const Form f = form_from_json(read_json(input, in));
  if (f.dim() != 6) throw UsageError("analyze: needs a 6-dimensional form, got dimension " + std::to_string(f.dim()));
  if (f.is_zero()) throw UsageError("analyze: zero spinor");
  if (!f.is_real(1e-14 * f.max_abs())) throw UsageError("analyze: form must be real");
  json rep = to_json(stability_analyze(f.real()));
  rep["input"] = to_json(f);
  out << rep.dump(2) << '\n';
  return kOk;
}

int cmd_classify(const std::string& input, std::istream& in, std::ostream& out) {
  const Form f = form_from_json(read_json(input, in));
  if (f.is_zero()) throw UsageError("classify: zero spinor");
  json rep;
  rep["dim"] = f.dim();
  rep["pure"] = is_pure(f);
  switch (f.dim()) {
    case 6:
      rep["type"] = to_string(classify_dim6(f));
      break;
    case 4:
    case 2: {
      const Classification c = f.dim() == 4 ? classify_dim4(f) : classify_dim2(f);
      rep["type"] = to_string(c.tag);
      if (c.c) rep["c"] = json::array({c.c->real(), c.c->imag()});
      if (c.b) rep["B"] = to_json(*c.b);
      if (c.omega) rep["omega"] = to_json(*c.omega);
      break;
    }
    default:
      throw UsageError("classify: supports dimensions 2, 4 and 6");
  }
  out << rep.dump(2) << '\n';
  return kOk;
}

struct FlowArgs {
  std::string config;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int max_iter = 0;
  std::string out_dir = ".";
};

int cmd_flow(const FlowArgs& a, const CLI::App& sub, bool twisted, std::istream& in, std::ostream& out) {
  const fs::path base = a.config == "-" ? fs::current_path() : fs::path(a.config).parent_path();
  FlowProblem prob = parse_config(read_json(a.config, in), base);
  if (sub.count("--seed")) prob.seed = a.seed;
  if (sub.count("--tol")) prob.config.tol = a.tol;
  if (sub.count("--max-iter")) prob.config.max_iter = a.max_iter;
  if (!(prob.config.tol > 0)) throw UsageError("tol must be positive");
  if (prob.config.max_iter < 0) throw UsageError("max_iter must be non-negative");
  if (!twisted && prob.h && !prob.h->is_zero()) throw UsageError("flow: config sets H; use twisted-flow");

  const GridForm rho0 = initial_data(prob);
  FlowReport rep;
  try {
    if (twisted) {
      const Form h = prob.h.value_or(Form(6));
      rep = twisted_flow(rho0, GridForm::constant(rho0.grid(), h), prob.config);
    } else {
      rep = flow(rho0, prob.config);
    }
  } catch (const StabilityError& e) {
    throw StabilityError("stability lost at " + describe_point(rho0.grid(), e.point()), e.point());
  }

  fs::create_directories(a.out_dir);
  const std::string stem = twisted ? "twisted_flow" : "flow";
  const fs::path report = fs::path(a.out_dir) / (stem + "_report.json");
  const fs::path history = fs::path(a.out_dir) / (stem + "_history.csv");
  json full = to_json(rep);
  full["problem"] = {{"dim", prob.dim}, {"N", prob.points}, {"K", prob.cutoff}, {"seed", prob.seed},
                     {"initial", prob.base ? "file" : prob.initial}, {"perturbation", prob.perturbation},
                     {"tol", prob.config.tol}, {"max_iter", prob.config.max_iter}};
  if (prob.h) full["problem"]["H"] = to_json(*prob.h);
  {
    std::ofstream f(report);
    if (!f) throw Error("cannot write '" + report.string() + "'");
    f << full.dump(2) << '\n';
  }
  {
    std::ofstream f(history);
    if (!f) throw Error("cannot write '" + history.string() + "'");
    f << flow_history_csv(rep);
  }
  json summary = {{"converged", rep.converged},         {"iterations", rep.iterations},
                  {"final_volume", rep.final_volume},   {"final_residual", rep.final_residual},
                  {"max_drift", rep.max_drift},         {"tag_counts", rep.tag_counts()},
                  {"diagnostic", rep.diagnostic},       {"report", report.string()},
                  {"history", history.string()}};
  out << summary.dump(2) << '\n';
  return rep.converged ? kOk : kNotConverged;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  const auto res = run_suite(suite, seed);
  if (!res) {
    std::string known;
    for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
    err << "error: unknown suite '" << suite << "' (known: " << known << ")\n";
    return kUsage;
  }
  out << res->to_json().dump(2) << '\n';
  return res->ok() ? kOk : 1;
}

int cmd_bracket(const std::string& a, const std::string& b, const std::string& h, std::istream& in,
                std::ostream& out) {
  if (a == "-" && b == "-") throw UsageError("bracket: only one input can come from stdin");
  const SectionField s1 = section_from_json(read_json(a, in));
  const SectionField s2 = section_from_json(read_json(b, in));
  SectionField res;
  if (h.empty()) {
    res = courant_bracket(s1, s2);
  } else {
    res = twisted_bracket(s1, s2, form_field_from_json(read_json(h, in)));
  }
  out << to_json(res).dump(2) << '\n';
  return kOk;
}

}  // namespace

FlowProblem parse_config(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw UsageError("config: expected a JSON object");
  static const std::vector<std::string> keys = {"dim", "N", "K", "seed", "initial", "perturbation",
                                                "H", "tol", "max_iter", "mode"};
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw UsageError("config: unknown key '" + k + "'");

  auto integer = [&](const char* k, auto fallback) {
    if (!j.contains(k)) return static_cast<long long>(fallback);
    if (!j[k].is_number_integer()) throw UsageError(std::string("config: '") + k + "' must be an integer");
    return j[k].get<long long>();
  };
  auto real = [&](const char* k, double fallback) {
    if (!j.contains(k)) return fallback;
    if (!j[k].is_number()) throw UsageError(std::string("config: '") + k + "' must be a number");
    return j[k].get<double>();
  };

  FlowProblem p;
  p.dim = static_cast<int>(integer("dim", 6));
  if (p.dim != 6) throw UsageError("config: the flow runs on T^6 only (dim = 6)");
  p.points = static_cast<int>(integer("N", p.points));
  p.cutoff = static_cast<int>(integer("K", p.cutoff));
  const long long seed = integer("seed", p.seed);
  if (seed < 0) throw UsageError("config: 'seed' must be non-negative");
  p.seed = static_cast<std::uint64_t>(seed);
  p.perturbation = real("perturbation", 0.0);
  if (!(p.perturbation >= 0)) throw UsageError("config: 'perturbation' must be non-negative");
  p.config.tol = real("tol", p.config.tol);
  p.config.max_iter = static_cast<int>(integer("max_iter", p.config.max_iter));
  if (j.contains("mode")) {
    const auto m = j["mode"].is_string() ? flow_mode_from_string(j["mode"].get<std::string>()) : std::nullopt;
    if (!m) throw UsageError("config: 'mode' must be residual, ascent or descent");
    p.config.mode = *m;
  }
  if (j.contains("initial")) {
    if (!j["initial"].is_string()) throw UsageError("config: 'initial' must be a string");
    const std::string s = j["initial"].get<std::string>();
    if (s.rfind("file:", 0) == 0) {
      fs::path path = s.substr(5);
      if (path.is_relative()) path = base_dir / path;
      std::ifstream f(path);
      if (!f) throw UsageError("config: cannot open initial form '" + path.string() + "'");
      json fj;
      try {
        fj = json::parse(f);
      } catch (const json::parse_error& e) {
        throw UsageError("config: cannot parse '" + path.string() + "': " + e.what());
      }
      p.base = real_form(fj, "config 'initial'");
      if (p.base->dim() != 6) throw UsageError("config: the initial form must be 6-dimensional");
      if (!p.base->parity()) throw UsageError("config: the initial form must have homogeneous parity");
    } else {
      preset_form(s);  // validates the name
      p.initial = s;
    }
  }
  if (j.contains("H") && !j["H"].is_null()) {
    const Form h = real_form(j["H"], "config 'H'");
    if (h.dim() != 6) throw UsageError("config: H must be 6-dimensional");
    if (!h.is_zero() && h.degree() != 3) throw UsageError("config: H must be a constant 3-form");
    p.h = h;
  }
  // grid parameters are checked by the grid itself
  (void)TorusGrid(p.dim, p.points, p.cutoff);
  return p;
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Calabi-Yau toolkit: spinor analysis, invariant checks and volume-functional flows"};
  app.require_subcommand(1);
  const auto path_or_stdin = CLI::ExistingFile | CLI::IsMember({"-"});

  std::string input;
  auto* analyze = app.add_subcommand("analyze", "Stability report for a real 6-dimensional form");
  analyze->add_option("input", input, "Form JSON file, or - for stdin")->required()->check(path_or_stdin);

  auto* classify = app.add_subcommand("classify", "Type of a pure spinor in dimension 2, 4 or 6");
  classify->add_option("input", input, "Form JSON file, or - for stdin")->required()->check(path_or_stdin);

  FlowArgs fa;
  auto add_flow_opts = [&](CLI::App* sub) {
    sub->add_option("config", fa.config, "Config JSON file, or - for stdin")->required()->check(path_or_stdin);
    sub->add_option("--seed", fa.seed, "Override the perturbation seed");
    sub->add_option("--tol", fa.tol, "Override the residual tolerance");
    sub->add_option("--max-iter", fa.max_iter, "Override the iteration limit");
    sub->add_option("--out", fa.out_dir, "Directory for the report and history files")->capture_default_str();
  };
  auto* flow_cmd = app.add_subcommand("flow", "Flow to a critical point of the volume functional");
  add_flow_opts(flow_cmd);
  auto* twisted_cmd = app.add_subcommand("twisted-flow", "The same flow for the twisted differential d_H");
  add_flow_opts(twisted_cmd);

  std::string suite;
  std::uint64_t vseed = 1;
  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("suite", suite, "Suite name (exterior, clifford, quartic, courant, courant-jacobi, variational, all)")
      ->required();
  verify->add_option("--seed", vseed, "Random seed")->capture_default_str();

  std::string s1, s2, hpath;
  auto* bracket = app.add_subcommand("bracket", "Courant bracket of two sections");
  bracket->add_option("first", s1, "SectionField JSON file, or -")->required()->check(path_or_stdin);
  bracket->add_option("second", s2, "SectionField JSON file, or -")->required()->check(path_or_stdin);
  bracket->add_option("--H", hpath, "Closed 3-form field JSON for the twisted bracket")->check(path_or_stdin);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(input, in, out);
    if (*classify) return cmd_classify(input, in, out);
    if (*flow_cmd) return cmd_flow(fa, *flow_cmd, false, in, out);
    if (*twisted_cmd) return cmd_flow(fa, *twisted_cmd, true, in, out);
    if (*verify) return cmd_verify(suite, vseed, out, err);
    if (*bracket) return cmd_bracket(s1, s2, hpath, in, out);
  } catch (const StabilityError& e) {
    err << "error: " << e.what() << '\n';
    return kUnstable;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}

}  // namespace gcy::cli
