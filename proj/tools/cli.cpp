#include "cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <map>
#include <ostream>
#include <sstream>

#include "thermoforms/error.hpp"
#include "thermoforms/forms.hpp"

namespace thermoforms::cli {
namespace {

using nlohmann::json;

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " from '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw UsageError("cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

EntropyModel make_model(const RunConfig& config) {
  return config.model == ModelKind::van_der_waals ? EntropyModel::van_der_waals(config.n)
                                                  : EntropyModel::ideal_gas(config.n);
}

std::string model_name(ModelKind kind) { return kind == ModelKind::van_der_waals ? "vdw" : "ideal"; }

template <std::size_t N>
json to_json(const std::array<double, N>& values) {
  json out = json::array();
  for (double x : values) out.push_back(x);
  return out;
}

json axis_json(const GridAxis& axis) {
  return json{{"min", axis.min}, {"max", axis.max}, {"steps", axis.steps}};
}

std::string process_count_string(const DomainCell& cell) {
  if (!cell.valid) return "invalid";
  if (cell.process_boundary) return "boundary";
  return std::to_string(cell.process_count);
}

std::string render_forms(const RunConfig& config) {
  const EntropyModel model = make_model(config);
  const auto [e, v] = config.at;
  const StatePoint state = model.state(e, v);
  const CentralForms forms = central_forms(model, e, v);

  json out;
  out["model"] = model_name(config.model);
  out["n"] = config.n;
  out["e"] = e;
  out["v"] = v;
  out["state"] = {{"s", state.s}, {"T", state.T}, {"p", state.p}};
  out["sigma2"] = {{"components", to_json(forms.sigma2.components)},
                   {"polynomial", to_json(forms.sigma2.polynomial())},
                   {"determinant", determinant(forms.sigma2)},
                   {"class", to_string(classify_sigma2(forms.sigma2))}};
  const CubicCoeffs cubic = cubic_from_sigma3(forms.sigma3);
  out["sigma3"] = {{"components", to_json(forms.sigma3.components)},
                   {"cubic", {cubic.c3, cubic.c2, cubic.c1, cubic.c0}}};
  if (forms.sigma4) {
    out["sigma4"] = {{"components", to_json(forms.sigma4->components)},
                     {"polynomial", to_json(forms.sigma4->polynomial())},
                     {"class", to_string(classify_sigma4(*forms.sigma4))}};
  } else {
    out["sigma4"] = nullptr;
  }
  return out.dump(2) + "\n";
}

std::string render_processes(const RunConfig& config) {
  const EntropyModel model = make_model(config);
  const DomainGrid grid = scan(model, config.T, config.v, config.workers);
  if (config.format == OutputFormat::json) {
    json cells = json::array();
    for (const auto& c : grid.cells) {
      cells.push_back({{"T", c.T},
                       {"v", c.v},
                       {"root_count", process_count_string(c)},
                       {"disc", c.valid ? json(c.discriminant) : json(nullptr)}});
    }
    json out{{"model", model_name(config.model)},
             {"n", config.n},
             {"T", axis_json(config.T)},
             {"v", axis_json(config.v)},
             {"cells", std::move(cells)}};
    return out.dump() + "\n";
  }
  std::string text = "T,v,root_count,disc\n";
  for (const auto& c : grid.cells) {
    text += format_number(c.T) + ',' + format_number(c.v) + ',' + process_count_string(c) + ',' +
            (c.valid ? format_number(c.discriminant) : std::string("nan")) + '\n';
  }
  return text;
}

std::string render_domains(const RunConfig& config) {
  const EntropyModel model = make_model(config);
  const DomainGrid grid = scan(model, config.T, config.v, config.workers);
  if (config.format == OutputFormat::json) {
    json cells = json::array();
    for (const auto& c : grid.cells) {
      json cell{{"T", c.T}, {"v", c.v}};
      if (c.valid) {
        cell["e"] = c.e;
        cell["sigma2_class"] = to_string(c.sigma2);
        cell["sigma4_class"] = to_string(c.sigma4);
        cell["disc"] = c.discriminant;
      } else {
        cell["e"] = nullptr;
        cell["sigma2_class"] = "invalid";
        cell["sigma4_class"] = "invalid";
        cell["disc"] = nullptr;
      }
      cell["process_count"] = process_count_string(c);
      cell["boundary_flags"] = boundary_string(c.boundary);
      cells.push_back(std::move(cell));
    }
    json out{{"model", model_name(config.model)},
             {"n", config.n},
             {"T", axis_json(config.T)},
             {"v", axis_json(config.v)},
             {"cells", std::move(cells)}};
    return out.dump() + "\n";
  }
  std::string text = "T,v,e,sigma2_class,sigma4_class,process_count,disc,boundary_flags\n";
  for (const auto& c : grid.cells) {
    text += format_number(c.T) + ',' + format_number(c.v) + ',';
    if (c.valid) {
      text += format_number(c.e) + ',' + std::string(to_string(c.sigma2)) + ',' +
              std::string(to_string(c.sigma4)) + ',';
    } else {
      text += "nan,invalid,invalid,";
    }
    text += process_count_string(c) + ',' +
            (c.valid ? format_number(c.discriminant) : std::string("nan")) + ',' +
            boundary_string(c.boundary) + '\n';
  }
  return text;
}

std::string render_curve(const RunConfig& config, std::ostream& err) {
  const EntropyModel model = make_model(config);
  const auto [e0, v0] = config.start;
  const ProcessCurve curve = integrate_process(model, e0, v0, config.integration);
  err << "curve: " << curve.points.size() << " points, terminated by "
      << to_string(curve.termination) << '\n';

  if (config.format == OutputFormat::json) {
    json points = json::array();
    for (const auto& p : curve.points) {
      points.push_back({{"e", p.e}, {"v", p.v}, {"q", p.q}, {"T", model.state(p.e, p.v).T}});
    }
    json out{{"model", model_name(config.model)},
             {"n", config.n},
             {"branch", config.integration.branch},
             {"step", config.integration.step},
             {"termination", to_string(curve.termination)},
             {"points", std::move(points)}};
    return out.dump(2) + "\n";
  }
  std::string text = "e,v,q,T\n";
  for (const auto& p : curve.points) {
    text += format_number(p.e) + ',' + format_number(p.v) + ',' + format_number(p.q) + ',' +
            format_number(model.state(p.e, p.v).T) + '\n';
  }
  return text;
}

std::string render_oracle(const RunConfig& config) {
  const auto analytic = oracle::central_moments_analytic(config.family, config.lambda);
  const auto numeric = oracle::central_moments_numeric(config.family, config.lambda);
  const auto check = oracle::info_gain_check(config.family, config.lambda);
  auto triple = [](const oracle::MomentTriple& t) {
    return json{{"sigma2", t.sigma2}, {"sigma3", t.sigma3}, {"sigma4", t.sigma4}};
  };
  json num = triple(numeric.central);
  num["mass"] = numeric.mass;
  num["mean"] = numeric.mean;
  json out{{"family", oracle::to_string(config.family)},
           {"lambda", config.lambda},
           {"analytic", triple(analytic)},
           {"numeric", std::move(num)},
           {"info_gain",
            {{"x", check.x},
             {"I", check.information_gain},
             {"slope", check.slope},
             {"residual", check.residual}}}};
  return out.dump(2) + "\n";
}

void write_output(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out_path.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(config.out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw std::runtime_error("cannot open " + config.out_path + ": " + std::strerror(errno));
  }
  file << text;
  file.close();
  if (!file) throw std::runtime_error("failed writing " + config.out_path);
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

GridAxis parse_grid_axis(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("grid spec '" + text + "' is not min:max:steps");
  GridAxis axis;
  axis.min = parse_double(parts[0], "grid minimum");
  axis.max = parse_double(parts[1], "grid maximum");
  const double steps = parse_double(parts[2], "grid steps");
  if (steps != std::trunc(steps) || steps < 2.0 || steps > 1e7) {
    throw UsageError("grid steps must be an integer >= 2 in '" + text + "'");
  }
  axis.steps = static_cast<int>(steps);
  if (!(axis.min < axis.max)) throw UsageError("grid spec '" + text + "' needs min < max");
  return axis;
}

std::pair<double, double> parse_pair(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw UsageError("expected a pair 'a,b', got '" + text + "'");
  return {parse_double(parts[0], "first coordinate"), parse_double(parts[1], "second coordinate")};
}

unsigned workers_from_environment() {
  const char* raw = std::getenv("THERMOFORMS_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  const double value = parse_double(raw, "THERMOFORMS_THREADS");
  if (value != std::trunc(value) || value < 1.0 || value > 4096.0) {
    throw UsageError("THERMOFORMS_THREADS must be a positive integer");
  }
  return static_cast<unsigned>(value);
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig config;
  CLI::App app{"Central-moment forms, symmetric processes and applicability domains of gas models",
               "thermoforms"};
  app.require_subcommand(1);
  app.footer("Environment: THERMOFORMS_THREADS caps the scan worker count (default: all cores).\n"
             "Exit codes: 0 success, 1 runtime error, 2 usage error.");

  const std::map<std::string, ModelKind> models{{"ideal", ModelKind::ideal_gas},
                                                {"vdw", ModelKind::van_der_waals}};
  const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv},
                                                    {"json", OutputFormat::json}};
  const std::map<std::string, oracle::Family> families{{"gaussian", oracle::Family::gaussian},
                                                       {"exponential", oracle::Family::exponential}};

  std::string at, start, grid, t_axis, v_axis;
  std::string model = "ideal", format = "csv", family = "gaussian";
  std::size_t branch = 0;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", model, "Entropy model: ideal | vdw")
        ->required()
        ->check(CLI::IsMember(models, CLI::ignore_case));
    sub->add_option("--n", config.n, "Degrees of freedom (> 0)")->capture_default_str();
  };
  auto add_output = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--out", config.out_path, "Output file (default: standard output)");
    if (with_format) {
      sub->add_option("--format", format, "Output format: csv | json")
          ->check(CLI::IsMember(formats, CLI::ignore_case));
    }
  };

  auto* forms = app.add_subcommand("forms", "Print sigma_2, sigma_3, sigma_4 at a state as JSON");
  add_model(forms);
  forms->add_option("--at", at, "State point e,v")->required();
  add_output(forms, false);

  auto* processes = app.add_subcommand("processes", "Count symmetric processes on a (T, v) grid");
  add_model(processes);
  processes->add_option("--grid", grid, "Tmin:Tmax:steps,vmin:vmax:steps")->required();
  add_output(processes, true);

  auto* curve = app.add_subcommand("curve", "Integrate a symmetric process curve");
  add_model(curve);
  curve->add_option("--start", start, "Start point e,v")->required();
  curve->add_option("--branch", branch, "Root index at the start, ascending")->capture_default_str();
  curve->add_option("--step", config.integration.step, "Signed step in e")->capture_default_str();
  curve->add_option("--max-len", config.integration.max_length, "Total |e| travel")
      ->capture_default_str();
  add_output(curve, true);

  auto* domains = app.add_subcommand("domains", "Classify sigma_2 / sigma_4 positivity on a grid");
  add_model(domains);
  domains->add_option("--T", t_axis, "Temperature axis Tmin:Tmax:steps")->required();
  domains->add_option("--v", v_axis, "Volume axis vmin:vmax:steps")->required();
  add_output(domains, true);

  auto* oracle_cmd = app.add_subcommand("oracle", "Moments of a 1-D exponential family");
  oracle_cmd->add_option("--family", family, "gaussian | exponential")
      ->required()
      ->check(CLI::IsMember(families, CLI::ignore_case));
  oracle_cmd->add_option("--lambda", config.lambda, "Natural parameter")->required();
  add_output(oracle_cmd, false);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    if (code == 0) throw HelpRequested(out.str());
    throw UsageError(err.str().empty() ? std::string(e.what()) : err.str());
  }

  if (!(config.n > 0.0) || !std::isfinite(config.n)) throw UsageError("--n must be positive");
  auto lower = [](std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  config.model = models.at(lower(model));
  config.format = formats.at(lower(format));
  config.family = families.at(lower(family));

  if (*forms) {
    config.command = Command::forms;
    config.at = parse_pair(at);
  } else if (*processes) {
    config.command = Command::processes;
    const auto axes = split(grid, ',');
    if (axes.size() != 2) throw UsageError("--grid must be Tmin:Tmax:steps,vmin:vmax:steps");
    config.T = parse_grid_axis(axes[0]);
    config.v = parse_grid_axis(axes[1]);
  } else if (*curve) {
    config.command = Command::curve;
    config.start = parse_pair(start);
    config.integration.branch = branch;
    if (!std::isfinite(config.integration.step)) throw UsageError("--step must be finite");
    if (!(config.integration.max_length >= 0.0)) throw UsageError("--max-len must be >= 0");
  } else if (*domains) {
    config.command = Command::domains;
    config.T = parse_grid_axis(t_axis);
    config.v = parse_grid_axis(v_axis);
  } else {
    config.command = Command::oracle;
  }
  config.workers = workers_from_environment();
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::string text;
    switch (config.command) {
      case Command::forms:
        text = render_forms(config);
        break;
      case Command::processes:
        text = render_processes(config);
        break;
      case Command::curve:
        text = render_curve(config, err);
        break;
      case Command::domains:
        text = render_domains(config);
        break;
      case Command::oracle:
        text = render_oracle(config);
        break;
    }
    write_output(config, text, out);
    return 0;
  } catch (const std::exception& e) {
    err << "thermoforms: error: " << e.what() << '\n';
    return 1;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& help) {
    out << help.what();
    return 0;
  } catch (const UsageError& e) {
    err << "thermoforms: usage error: " << e.what();
    if (std::string_view(e.what()).ends_with('\n') == false) err << '\n';
    err << "Run with --help for more information.\n";
    return 2;
  }
  return run(config, out, err);
}

}  // namespace thermoforms::cli
