#include "markov_cycles/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace markov_cycles::cli {

namespace {

/// Errors that map to exit status 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Json complex_pair(Complex z) { return Json::array({round15(z.real()), round15(z.imag())}); }

Json form_json(const QuadraticForm& q) {
  return Json::array({q.a.get_str(), q.b.get_str(), q.c.get_str()});
}

Json convergence_json(const ConvergenceReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["trivial"] = r.trivial;
  j["n0"] = r.n0;
  j["max_n0"] = r.max_n0;
  j["doubling_threshold"] = round15(r.doubling_threshold);
  Json ratios = Json::array();
  for (auto [n, ratio] : r.doubling_ratios) ratios.push_back({{"n", n}, {"ratio", round15(ratio)}});
  j["doubling_ratios"] = ratios;
  Json d = Json::array();
  for (double x : r.distances) d.push_back(round15(x));
  j["distances"] = d;
  return j;
}

Json rows_json(const std::vector<BoundRow>& rows) {
  Json out = Json::array();
  for (const BoundRow& row : rows) {
    out.push_back({{"n", row.n}, {"lhs", round15(row.lhs)}, {"bound", round15(row.bound)}, {"holds", row.holds}});
  }
  return out;
}

Json bound_json(const BoundReport& r) {
  Json j;
  j["applicable"] = r.applicable;
  if (!r.applicable) {
    j["reason"] = r.reason;
    return j;
  }
  j["pass"] = r.pass;
  j["informative"] = r.informative;
  j["r"] = r.r;
  if (r.N > 0) j["N"] = r.N;
  j["max_f"] = round15(r.max_f);
  j["rows"] = rows_json(r.rows);
  j["log_epsilon_rows"] = rows_json(r.unit_rows);
  return j;
}

Json interlacing_json(const InterlacingReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["trivial"] = r.trivial;
  j["start"] = r.start ? Json(*r.start) : Json(nullptr);
  j["max_start"] = r.max_start;
  j["margin"] = round15(r.margin);
  j["re_side"] = r.re_side;
  j["im_side"] = r.im_side;
  Json rows = Json::array();
  for (const InterlacingRow& row : r.rows) {
    rows.push_back({{"n", row.n}, {"re", verdict_name(row.re)}, {"im", verdict_name(row.im)}});
  }
  j["rows"] = rows;
  return j;
}

Branch branch_or_usage(const std::string& descriptor) {
  try {
    return parse_branch(descriptor);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

ModularFunction function_or_usage(const std::string& name, double tolerance) {
  try {
    return function_by_name(name, tolerance);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void check_depth(int depth, const RunConfig& config) {
  if (depth < 0) throw UsageError("depth must be non-negative");
  if (depth > config.depth_cap) {
    throw UsageError("depth cap exceeded: " + std::to_string(depth) + " > " + std::to_string(config.depth_cap));
  }
}

std::string fmt2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

IntegrationOptions RunConfig::integration() const {
  IntegrationOptions opts;
  opts.nodes = nodes;
  opts.digits = digits;
  return opts;
}

void RunConfig::validate() const {
  if (nodes < 16) throw UsageError("--nodes must be at least 16");
  if (digits < 15) throw UsageError("--digits must be at least 15");
  if (!(q_tolerance > 0)) throw UsageError("--q-tol must be positive");
  if (format != "json" && format != "csv" && format != "svg") throw UsageError("--format must be json, csv or svg");
}

double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

QuadSurd parse_quadratic(const std::string& text) {
  if (text.find("sqrt") != std::string::npos) return QuadSurd::parse(text);
  return value_of(PeriodicCF::parse(text));
}

namespace {

QuadSurd quadratic_or_usage(const std::string& text) {
  try {
    return parse_quadratic(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

Json cmd_tree(int depth, const RunConfig& config) {
  check_depth(depth, config);
  Json nodes = Json::array();
  for (const TreeNode& node : enumerate_tree(depth)) {
    const QuadSurd theta = theta_from_triple(node.triple);
    PeriodicCF plus;
    plus.convention = Convention::Plus;
    plus.period = plus_word_at(node.address);
    Json row;
    row["address"] = node.address.to_string();
    row["triple"] = Json::array({node.triple.a.get_str(), node.triple.b.get_str(), node.triple.m.get_str()});
    row["markov_number"] = node.triple.m.get_str();
    row["theta"] = theta.to_string();
    row["plus_cf"] = plus.to_string();
    row["minus_cf"] = minus_expand(theta).to_string();
    nodes.push_back(row);
  }
  Json out;
  out["depth"] = depth;
  out["nodes"] = nodes;
  return out;
}

Json cmd_value(const std::string& input, const std::string& function, const RunConfig& config) {
  const ModularFunction f = function_or_usage(function, config.q_tolerance);
  const QuadSurd w = quadratic_or_usage(input);
  const CycleValue v = normalized_value(f, w, config.integration());
  Json out;
  out["input"] = input;
  out["function"] = f.name;
  out["nodes"] = v.nodes;
  out["raw_re"] = round15(v.raw.real());
  out["raw_im"] = round15(v.raw.imag());
  out["length"] = round15(v.length);
  out["nor_re"] = round15(v.normalized.real());
  out["nor_im"] = round15(v.normalized.imag());
  out["err_estimate"] = round15(v.error_estimate);
  return out;
}

Json cmd_cycle(const std::string& input, const RunConfig& config) {
  const QuadSurd w = quadratic_or_usage(input);
  const CycleData c = cycle_of(w);
  const auto [t, u] = pell_fundamental(c.form.discriminant());
  Json out;
  out["input"] = input;
  out["base"] = c.base.to_string();
  out["word"] = c.word_string();
  out["ell"] = c.size();
  out["trace"] = c.trace.get_str();
  out["epsilon"] = c.epsilon.to_string();
  out["epsilon_decimal"] = to_float(c.epsilon, config.digits).to_string();
  out["log_epsilon"] = round15(c.log_epsilon);
  out["length"] = round15(c.length);
  out["form"] = form_json(c.form);
  out["discriminant"] = c.form.discriminant().get_str();
  out["pell"] = {{"t", t.get_str()}, {"u", u.get_str()}};
  return out;
}

BranchScan run_scan(const std::string& branch, const std::string& function, int depth, const RunConfig& config) {
  check_depth(depth, config);
  if (depth < 1) throw UsageError("scan depth must be at least 1");
  const Branch B = branch_or_usage(branch);
  return branch_scan(function_or_usage(function, config.q_tolerance), B, depth, config.integration());
}

Json scan_json(const BranchScan& scan, const RunConfig& config) {
  Json out;
  out["branch"] = scan.branch.descriptor();
  out["kind"] = scan.branch.kind_name();
  out["r"] = scan.branch.r();
  out["w0"] = scan.branch.w0.to_string();
  out["function"] = scan.function;
  out["nodes"] = config.nodes;
  Json records = Json::array();
  for (const BranchRecord& rec : scan.records) {
    Json row;
    row["n"] = rec.n;
    row["markov_number"] = rec.markov_number.get_str();
    row["cf"] = rec.cf.to_string();
    row["cycle_length"] = rec.cycle_length;
    row["length"] = round15(rec.length);
    row["f_re"] = round15(rec.value.real());
    row["f_im"] = round15(rec.value.imag());
    row["fnor_re"] = round15(rec.normalized.real());
    row["fnor_im"] = round15(rec.normalized.imag());
    row["delta_to_w0"] = round15(rec.distance_to_w0);
    row["err_estimate"] = round15(rec.error_estimate);
    records.push_back(row);
  }
  out["records"] = records;
  return out;
}

std::string scan_csv(const BranchScan& scan) {
  std::ostringstream out;
  out << "n,markov_number,length,f_re,f_im,fnor_re,fnor_im,delta_to_w0\n";
  auto num = [](double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::string(buf);
  };
  for (const BranchRecord& rec : scan.records) {
    out << rec.n << ',' << rec.markov_number.get_str() << ',' << num(rec.length) << ',' << num(rec.value.real())
        << ',' << num(rec.value.imag()) << ',' << num(rec.normalized.real()) << ',' << num(rec.normalized.imag())
        << ',' << num(rec.distance_to_w0) << '\n';
  }
  return out.str();
}

VerifyResult cmd_verify(const std::string& branch, const std::string& function, int depth, int N,
                        const RunConfig& config) {
  if (depth < 4) throw UsageError("verify needs --depth >= 4");
  const BranchScan scan = run_scan(branch, function, depth, config);
  const ModularFunction f = function_or_usage(function, config.q_tolerance);
  const double max_f = f.arc_maximum > 0 ? f.arc_maximum : max_on_arc(f, 256);

  const ConvergenceReport convergence = check_convergence(scan);
  const InterlacingReport interlacing = check_interlacing(scan);
  BoundReport bound1;
  if (N >= 1 && N < depth) {
    bound1 = check_delta1_bound(scan, max_f, N);
  } else {
    bound1.reason = "needs 1 <= N < depth";
  }
  const BoundReport bound2 = check_delta2_bound(scan, max_f);

  VerifyResult result;
  result.pass = convergence.pass && interlacing.pass && (!bound1.applicable || bound1.pass) &&
                (!bound2.applicable || bound2.pass);
  Json& j = result.report;
  j["branch"] = scan.branch.descriptor();
  j["kind"] = scan.branch.kind_name();
  j["function"] = scan.function;
  j["depth"] = depth;
  j["nodes"] = config.nodes;
  j["max_f"] = round15(max_f);
  Json values = Json::array();
  for (const BranchRecord& rec : scan.records) values.push_back(complex_pair(rec.normalized));
  j["normalized_values"] = values;
  j["convergence"] = convergence_json(convergence);
  j["interlacing"] = interlacing_json(interlacing);
  j["delta1_bound"] = bound_json(bound1);
  j["delta2_bound"] = bound_json(bound2);
  j["pass"] = result.pass;
  return result;
}

std::string plot_svg(const BranchScan& scan) {
  const double width = 640, height = 480, margin = 60;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const BranchRecord& rec : scan.records) {
    xmin = std::min(xmin, rec.normalized.real());
    xmax = std::max(xmax, rec.normalized.real());
    ymin = std::min(ymin, rec.normalized.imag());
    ymax = std::max(ymax, rec.normalized.imag());
  }
  if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
  const double padx = 0.08 * (xmax - xmin), pady = 0.08 * (ymax - ymin);
  xmin -= padx; xmax += padx; ymin -= pady; ymax += pady;
  auto X = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
  auto Y = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << scan.function
      << "^nor along branch " << scan.branch.descriptor() << "</text>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
      << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + k * (xmax - xmin) / 4, yv = ymin + k * (ymax - ymin) / 4;
    svg << "<text x=\"" << fmt2(X(xv)) << "\" y=\"" << height - margin + 16 << "\" text-anchor=\"middle\">"
        << round15(xv) << "</text>\n";
    svg << "<text x=\"" << margin - 6 << "\" y=\"" << fmt2(Y(yv)) << "\" text-anchor=\"end\">" << round15(yv)
        << "</text>\n";
  }
  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\">Re</text>\n";
  svg << "<text x=\"16\" y=\"" << height / 2 << "\" text-anchor=\"middle\">Im</text>\n";
  for (const BranchRecord& rec : scan.records) {
    const double cx = X(rec.normalized.real()), cy = Y(rec.normalized.imag());
    if (rec.n == 0) {
      svg << "<circle cx=\"" << fmt2(cx) << "\" cy=\"" << fmt2(cy) << "\" r=\"7\" fill=\"none\" stroke=\"red\""
          << " stroke-width=\"2\"/>\n";
      svg << "<text x=\"" << fmt2(cx + 9) << "\" y=\"" << fmt2(cy - 9) << "\" fill=\"red\">w0</text>\n";
    } else {
      svg << "<circle cx=\"" << fmt2(cx) << "\" cy=\"" << fmt2(cy) << "\" r=\"4\" fill=\"steelblue\"/>\n";
      svg << "<text x=\"" << fmt2(cx + 6) << "\" y=\"" << fmt2(cy - 6) << "\">" << rec.n << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle integrals of modular functions along the Markov tree"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig config;
  app.add_option("--nodes", config.nodes, "Gauss-Legendre nodes")->capture_default_str();
  app.add_option("--digits", config.digits, "Digits for surd to float conversion")->capture_default_str();
  app.add_option("--q-tol", config.q_tolerance, "q-series truncation tolerance")->capture_default_str();
  app.add_option("--format", config.format, "json, csv or svg")->capture_default_str();
  app.add_option("--out", config.out, "Write output to this file");

  int depth = 2;
  std::string function = "j";
  std::string input;
  std::string branch;
  int N = 2;

  auto* tree = app.add_subcommand("tree", "Markov tree nodes");
  tree->add_option("--depth", depth)->capture_default_str();

  auto* value = app.add_subcommand("value", "Cycle integral of a quadratic irrational");
  value->add_option("--cf", input, "Continued fraction or surd literal")->required();
  value->add_option("--function", function)->capture_default_str();

  auto* cycle = app.add_subcommand("cycle", "T/V cycle, unit and length");
  cycle->add_option("--cf", input, "Continued fraction or surd literal")->required();

  int branch_depth = 7;
  auto* scan = app.add_subcommand("scan", "Values along a branch");
  auto* verify = app.add_subcommand("verify", "Convergence, interlacing and bound checks");
  auto* plot = app.add_subcommand("plot", "SVG scatter of normalized values");
  for (auto* sub : {scan, verify, plot}) {
    sub->add_option("--branch", branch, "<path>:<L|R>, e.g. e:L or R:L")->required();
    sub->add_option("--function", function)->capture_default_str();
    sub->add_option("--depth", branch_depth)->capture_default_str();
  }
  verify->add_option("--N", N, "Threshold for the first bound")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  try {
    config.validate();
    if (!config.out.empty()) {
      file.open(config.out);
      if (!file) throw std::runtime_error("cannot open " + config.out);
      sink = &file;
    }
    int status = 0;
    if (tree->parsed()) {
      const Json j = cmd_tree(depth, config);
      if (config.format == "csv") {
        *sink << "address,a,b,m,theta,plus_cf,minus_cf\n";
        for (const Json& row : j["nodes"]) {
          *sink << row["address"].get<std::string>() << ',' << row["triple"][0].get<std::string>() << ','
                << row["triple"][1].get<std::string>() << ',' << row["triple"][2].get<std::string>() << ",\""
                << row["theta"].get<std::string>() << "\",\"" << row["plus_cf"].get<std::string>() << "\",\""
                << row["minus_cf"].get<std::string>() << "\"\n";
        }
      } else {
        *sink << j.dump(2) << '\n';
      }
    } else if (value->parsed()) {
      *sink << cmd_value(input, function, config).dump(2) << '\n';
    } else if (cycle->parsed()) {
      *sink << cmd_cycle(input, config).dump(2) << '\n';
    } else if (scan->parsed()) {
      const BranchScan s = run_scan(branch, function, branch_depth, config);
      *sink << (config.format == "csv" ? scan_csv(s) : scan_json(s, config).dump(2) + "\n");
    } else if (verify->parsed()) {
      const VerifyResult r = cmd_verify(branch, function, branch_depth, N, config);
      *sink << r.report.dump(2) << '\n';
      status = r.pass ? 0 : 1;
    } else if (plot->parsed()) {
      *sink << plot_svg(run_scan(branch, function, branch_depth, config));
    }
    return status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace markov_cycles::cli
