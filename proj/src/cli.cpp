#include "qcext/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "qcext/serialize.hpp"

namespace qcext::cli {

namespace {

struct Options {
  std::string map;
  std::string weight;
  std::string criterion = "main_harmonic_sigma";
  std::string construction = "harmonic_lambda";
  std::optional<double> k;
  std::string lambda;
  std::string alpha;
  std::string c = "0";
  std::string grid = "128x512";
  bool no_refine = false;
  std::string out;
  std::string trace;
  std::string report;
  std::string region_grid = "16x64";
  std::size_t samples = 1024;
  std::size_t circles = 6;
  double epsilon = 1e-3;
};

complex parse_complex(const std::string& text, const std::string& flag) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::logic_error&) {
    throw ParameterError(flag + " expects re,im (got '" + text + "')");
  }
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text,
                                               const std::string& flag) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const std::string a = text.substr(0, x), b = text.substr(x + 1);
    const unsigned long r = std::stoul(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const unsigned long n = std::stoul(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return {r, n};
  } catch (const std::logic_error&) {
    throw ParameterError(flag + " expects RxA (got '" + text + "')");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON when the argument starts with '{', a file path otherwise.
Json load_json(const std::string& arg, const std::string& flag) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  const std::string text =
      first != std::string::npos && arg[first] == '{' ? arg : read_file(arg);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParameterError(flag + ": invalid JSON at byte " + std::to_string(e.byte));
  }
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot write '" + path + "'");
  f << content;
  if (!f) throw ParameterError("failed writing '" + path + "'");
}

struct Context {
  MapSpec map_spec;
  HarmonicMap map = HarmonicMap::analytic(cx::Expr::z());
  std::optional<WeightSpec> weight_spec;  // nullopt: construction default
  DiskGrid grid;
  SupOptions sup;
  Json config;
};

Context load_context(const std::string& command, const Options& o) {
  if (o.map.empty()) throw ParameterError("--map is required");
  Context ctx;
  ctx.map_spec = map_spec_from_json(load_json(o.map, "--map"));
  if (!o.lambda.empty()) ctx.map_spec.lambda = parse_complex(o.lambda, "--lambda");
  if (!o.alpha.empty()) {
    if (ctx.map_spec.form != "teichmuller" && command != "check" &&
        o.construction != "teichmuller") {
      throw ParameterError("--alpha applies to the teichmuller form or construction");
    }
    ctx.map_spec.alpha = parse_complex(o.alpha, "--alpha");
  }
  ctx.map = build_map(ctx.map_spec);
  if (!o.weight.empty()) ctx.weight_spec = weight_spec_from_json(load_json(o.weight, "--weight"));

  const auto [r, a] = parse_grid(o.grid, "--grid");
  ctx.grid.n_radial = r;
  ctx.grid.n_angular = a;
  ctx.grid.validate();
  ctx.sup.refine = !o.no_refine;

  Json& c = ctx.config;
  c["command"] = command;
  c["map"] = to_json(ctx.map_spec);
  c["weight"] = ctx.weight_spec ? to_json(*ctx.weight_spec) : Json();
  c["grid"] = Json::array({ctx.grid.n_radial, ctx.grid.n_angular});
  c["refine"] = ctx.sup.refine;
  return ctx;
}

SigmaWeight weight_for(const Context& ctx, const HarmonicMap& subject) {
  return make_weight(ctx.weight_spec.value_or(WeightSpec{}), &subject);
}

int cmd_check(const Options& o, std::ostream& out) {
  Context ctx = load_context("check", o);
  if (!o.k) throw ParameterError("--k is required");
  if (!(*o.k >= 0.0 && *o.k < 1.0)) throw ParameterError("--k must lie in [0, 1)");
  const CriterionKind kind = criterion_kind_from_string(o.criterion);
  const complex c = parse_complex(o.c, "--c");

  std::optional<SigmaWeight> weight;
  if (needs_weight(kind)) weight = weight_for(ctx, ctx.map);
  const Criterion cr = make_criterion(kind, ctx.map, weight, c);
  const CriterionReport report = sup_ratio(cr, ctx.grid, *o.k, ctx.sup);

  ctx.config["criterion"] = o.criterion;
  ctx.config["k"] = *o.k;
  ctx.config["c"] = to_json(c);
  Json doc = to_json(report);
  doc["config"] = ctx.config;
  write_output(o.out, doc.dump(2) + "\n", out);
  return report.pass ? kExitPass : kExitFail;
}

PlaneExtension build(const Options& o, Context& ctx) {
  const Construction c = construction_from_string(o.construction);
  complex parameter = 0.0;
  if (c == Construction::harmonic_lambda) parameter = ctx.map_spec.lambda;
  if (c == Construction::teichmuller) {
    if (ctx.map_spec.form != "teichmuller" && o.alpha.empty()) {
      throw ParameterError("the teichmuller construction needs --alpha or a teichmuller map");
    }
    parameter = ctx.map_spec.alpha;
  }

  HarmonicMap subject = ctx.map;
  if (c == Construction::teichmuller) subject = HarmonicMap::teichmuller(ctx.map.h(), parameter);
  std::optional<SigmaWeight> weight;
  if (ctx.weight_spec || c != Construction::ahlfors_weill) weight = weight_for(ctx, subject);

  ExtensionOptions opts;
  opts.grid = ctx.grid;
  opts.sup = ctx.sup;
  ctx.config["construction"] = o.construction;
  ctx.config["parameter"] = to_json(parameter);
  ctx.config["r_max"] = opts.r_max;
  return build_extension(c, ctx.map, std::move(weight), parameter, opts);
}

CsvPreamble preamble(const Context& ctx, bool certified) { return {ctx.config, certified}; }

int cmd_extend(const Options& o, std::ostream& out) {
  Context ctx = load_context("extend", o);
  const PlaneExtension e = build(o, ctx);
  const auto [r, a] = parse_grid(o.region_grid, "--region-grid");
  const DiskGrid inner{r, a, 10.0, true};
  const AnnulusGrid outer{1.0 + 1e-3, std::min(4.0, e.r_max()), r, a, true};
  ctx.config["region_grid"] = {{"interior", to_json(inner)}, {"exterior", to_json(outer)}};
  if (!o.trace.empty()) {
    ctx.config["trace"] = {{"samples", o.samples}, {"epsilon", o.epsilon}};
  }
  if (e.k_hat()) ctx.config["k_hat"] = *e.k_hat();

  std::ostringstream csv;
  write_extension_csv(csv, sample_extension(e, inner, outer), preamble(ctx, e.certified()));
  write_output(o.out, csv.str(), out);
  if (!o.trace.empty()) {
    std::ostringstream t;
    write_trace_csv(t, boundary_trace(e, o.samples, o.epsilon), preamble(ctx, e.certified()));
    write_output(o.trace, t.str(), out);
  }
  return e.certified() ? kExitPass : kExitFail;
}

int cmd_beltrami(const Options& o, std::ostream& out) {
  Context ctx = load_context("beltrami", o);
  const PlaneExtension e = build(o, ctx);
  const DilatationGrids grids;
  ctx.config["interior_grid"] = to_json(grids.interior);
  ctx.config["exterior_grid"] = to_json(grids.exterior);
  const DilatationReport r = max_dilatation(e, grids);

  Json doc = to_json(r);
  doc["construction_certified"] = e.certified();
  doc["config"] = ctx.config;
  if (o.out.empty()) {
    write_output(o.report, doc.dump(2) + "\n", out);
  } else {
    std::ostringstream csv;
    write_mu_csv(csv, r.samples, preamble(ctx, r.certified));
    write_output(o.out, csv.str(), out);
    write_output(o.report.empty() ? o.out + ".json" : o.report, doc.dump(2) + "\n", out);
  }
  return r.certified ? kExitPass : kExitFail;
}

std::string svg_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string r;
  for (char ch : s) {
    switch (ch) {
      case '&': r += "&amp;"; break;
      case '<': r += "&lt;"; break;
      case '>': r += "&gt;"; break;
      default: r += ch;
    }
  }
  return r;
}

struct Curve {
  std::string cls;
  std::vector<complex> points;
};

std::vector<complex> circle_image(const PlaneExtension& e, double radius, std::size_t n) {
  std::vector<complex> pts(n);
  parallel_blocks(n, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      pts[k] = e.evaluate(std::polar(radius, 2.0 * std::numbers::pi * double(k) / double(n)));
    }
  });
  return pts;
}

int cmd_render(const Options& o, std::ostream& out) {
  Context ctx = load_context("render", o);
  const PlaneExtension e = build(o, ctx);
  if (o.samples < 16) throw ParameterError("--samples must be at least 16");
  if (o.circles < 1) throw ParameterError("--circles must be at least 1");
  ctx.config["circles"] = o.circles;
  ctx.config["samples"] = o.samples;
  ctx.config["epsilon"] = o.epsilon;

  std::vector<Curve> curves;
  for (std::size_t i = 1; i <= o.circles; ++i) {
    const double r = double(i) / double(o.circles + 1);
    curves.push_back({"interior", circle_image(e, r, o.samples)});
    curves.push_back({"exterior", circle_image(e, 1.0 / r, o.samples)});
  }
  const BoundaryTrace t = boundary_trace(e, o.samples, o.epsilon);
  curves.push_back({"trace-inner", t.inner});
  curves.push_back({"trace-outer", t.outer});

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& c : curves) {
    for (complex p : c.points) {
      xmin = std::min(xmin, p.real());
      xmax = std::max(xmax, p.real());
      ymin = std::min(ymin, -p.imag());
      ymax = std::max(ymax, -p.imag());
    }
  }
  const double margin = 0.05 * std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double vx = xmin - margin, vy = ymin - margin;
  const double vw = xmax - xmin + 2 * margin, vh = ymax - ymin + 2 * margin;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << svg_number(vx) << ' '
      << svg_number(vy) << ' ' << svg_number(vw) << ' ' << svg_number(vh)
      << "\" width=\"800\" height=\"" << svg_number(800.0 * vh / vw) << "\">\n";
  svg << "<metadata>" << xml_escape(ctx.config.dump()) << "</metadata>\n";
  svg << "<style>path{fill:none;stroke-width:1;vector-effect:non-scaling-stroke}"
         ".interior{stroke:#1f77b4}.exterior{stroke:#ff7f0e}"
         ".trace-inner,.trace-outer{stroke:#000}</style>\n";
  for (const auto& c : curves) {
    svg << "<path class=\"" << c.cls << "\" d=\"M";
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      svg << (k ? " L" : "") << svg_number(c.points[k].real()) << ','
          << svg_number(-c.points[k].imag());
    }
    svg << " Z\"/>\n";
  }
  if (!e.certified()) {
    svg << "<text class=\"non-certified\" x=\"" << svg_number(vx + 0.02 * vw) << "\" y=\""
        << svg_number(vy + 0.06 * vh) << "\" font-size=\"" << svg_number(0.04 * vh)
        << "\" fill=\"#d62728\">non-certified</text>\n";
  }
  svg << "</svg>\n";
  write_output(o.out, svg.str(), out);
  return e.certified() ? kExitPass : kExitFail;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--map", o.map, "map JSON file or inline JSON")->required();
  sub->add_option("--weight", o.weight, "weight JSON file or inline JSON (default becker)");
  sub->add_option("--lambda", o.lambda, "family parameter re,im");
  sub->add_option("--alpha", o.alpha, "Teichmueller parameter re,im");
  sub->add_option("--grid", o.grid, "criterion grid RxA")->capture_default_str();
  sub->add_flag("--no-refine", o.no_refine, "evaluate the criterion on the given grid only");
  sub->add_option("--out", o.out, "output path (stdout when omitted)");
}

void add_construction(CLI::App* sub, Options& o) {
  sub->add_option("--construction", o.construction,
                  "ahlfors | ahlfors_weill | harmonic_lambda | teichmuller")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Quasiconformal extensions of harmonic mappings", "qcext"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "evaluate a criterion and report sup lhs/rhs");
  add_common(check, o);
  check->add_option("--criterion", o.criterion, "criterion tag")->capture_default_str();
  check->add_option("--k", o.k, "target margin in [0, 1)");
  check->add_option("--c", o.c, "constant c as re,im")->capture_default_str();

  auto* extend = app.add_subcommand("extend", "sample the plane extension");
  add_common(extend, o);
  add_construction(extend, o);
  extend->add_option("--region-grid", o.region_grid, "sample grid RxA")->capture_default_str();
  extend->add_option("--trace", o.trace, "boundary trace CSV path");
  extend->add_option("--samples", o.samples, "trace samples")->capture_default_str();
  extend->add_option("--epsilon", o.epsilon, "trace offset")->capture_default_str();

  auto* beltrami = app.add_subcommand("beltrami", "measure Beltrami coefficients");
  add_common(beltrami, o);
  add_construction(beltrami, o);
  beltrami->add_option("--report", o.report, "certification JSON path");

  auto* render = app.add_subcommand("render", "draw circle images and the boundary trace");
  add_common(render, o);
  add_construction(render, o);
  render->add_option("--circles", o.circles, "circles per region")->capture_default_str();
  render->add_option("--samples", o.samples, "samples per curve")->capture_default_str();
  render->add_option("--epsilon", o.epsilon, "trace offset")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInputError;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*extend) return cmd_extend(o, out);
    if (*beltrami) return cmd_beltrami(o, out);
    if (*render) return cmd_render(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace qcext::cli
