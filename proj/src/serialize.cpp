#include "qcext/serialize.hpp"

#include <cstdio>
#include <ostream>
#include <set>

namespace qcext {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed,
                    const std::string& what) {
  if (!j.is_object()) throw ParameterError(what + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ParameterError(what + ": unknown field '" + item.key() + "'");
    }
  }
}

std::string string_field(const Json& j, const std::string& field,
                         const std::string& what) {
  const auto& v = j.at(field);
  if (!v.is_string()) throw ParameterError(what + "." + field + " must be a string");
  return v.get<std::string>();
}

cx::Expr parse_field(const std::string& text, const std::string& field) {
  try {
    return cx::Expr::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(field + ": " + text + ": " + e.what(), e.offset());
  }
}

void write_preamble(std::ostream& os, const CsvPreamble& p) {
  os << "# config " << p.config.dump() << '\n';
  os << "# certified " << (p.certified ? "true" : "false") << '\n';
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(complex z) { return Json::array({z.real(), z.imag()}); }

complex complex_from_json(const Json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParameterError(field + " must be a number or [re, im]");
}

MapSpec map_spec_from_json(const Json& j) {
  reject_unknown(j, {"form", "h", "g", "lambda", "alpha"}, "map");
  MapSpec s;
  if (j.contains("form")) s.form = string_field(j, "form", "map");
  if (s.form != "hg" && s.form != "teichmuller") {
    throw ParameterError("map.form must be \"hg\" or \"teichmuller\"");
  }
  if (!j.contains("h")) throw ParameterError("map.h is required");
  s.h = string_field(j, "h", "map");
  if (s.form == "hg") {
    if (j.contains("alpha")) throw ParameterError("map.alpha belongs to the teichmuller form");
    if (j.contains("g")) s.g = string_field(j, "g", "map");
    if (j.contains("lambda")) s.lambda = complex_from_json(j.at("lambda"), "map.lambda");
  } else {
    if (j.contains("g")) throw ParameterError("map.g is implied by alpha in the teichmuller form");
    if (!j.contains("alpha")) throw ParameterError("map.alpha is required for the teichmuller form");
    s.alpha = complex_from_json(j.at("alpha"), "map.alpha");
    if (j.contains("lambda")) s.lambda = complex_from_json(j.at("lambda"), "map.lambda");
  }
  return s;
}

Json to_json(const MapSpec& s) {
  Json j;
  j["form"] = s.form;
  j["h"] = s.h;
  if (s.form == "hg") {
    j["g"] = s.g;
  } else {
    j["alpha"] = to_json(s.alpha);
  }
  j["lambda"] = to_json(s.lambda);
  return j;
}

HarmonicMap build_map(const MapSpec& s) {
  const cx::Expr h = parse_field(s.h, "map.h");
  HarmonicMap f = s.form == "teichmuller"
                      ? HarmonicMap::teichmuller(h, s.alpha)
                      : HarmonicMap::hg(h, parse_field(s.g, "map.g"), s.lambda);
  check_sense_preserving(f, DiskGrid{});
  return f;
}

WeightSpec weight_spec_from_json(const Json& j) {
  reject_unknown(j, {"kind", "c", "v", "sigma", "sigma_z", "sigma_zbar"}, "weight");
  WeightSpec s;
  if (!j.contains("kind")) throw ParameterError("weight.kind is required");
  s.kind = weight_kind_from_string(string_field(j, "kind", "weight"));
  if (j.contains("c")) s.c = complex_from_json(j.at("c"), "weight.c");
  if (j.contains("v")) s.v = string_field(j, "v", "weight");
  if (j.contains("sigma")) s.sigma = string_field(j, "sigma", "weight");
  if (j.contains("sigma_z")) s.sigma_z = string_field(j, "sigma_z", "weight");
  if (j.contains("sigma_zbar")) s.sigma_zbar = string_field(j, "sigma_zbar", "weight");
  if (s.kind == WeightKind::schwarzian_v && s.v.empty()) {
    throw ParameterError("weight.v is required for schwarzian_v");
  }
  if (s.kind == WeightKind::custom && s.sigma.empty()) {
    throw ParameterError("weight.sigma is required for custom weights");
  }
  for (const auto* field : {&s.v, &s.sigma, &s.sigma_z, &s.sigma_zbar}) {
    if (!field->empty()) parse_field(*field, "weight");
  }
  return s;
}

Json to_json(const WeightSpec& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  switch (s.kind) {
    case WeightKind::ahlfors_c:
    case WeightKind::schwarzian_c:
      j["c"] = to_json(s.c);
      break;
    case WeightKind::schwarzian_v:
      j["v"] = s.v;
      break;
    case WeightKind::custom:
      j["sigma"] = s.sigma;
      if (!s.sigma_z.empty()) j["sigma_z"] = s.sigma_z;
      if (!s.sigma_zbar.empty()) j["sigma_zbar"] = s.sigma_zbar;
      break;
    default:
      break;
  }
  return j;
}

Json to_json(const DiskGrid& g) {
  return Json{{"radii", g.radii().size()},
              {"angles", g.n_angular},
              {"n_radial", g.n_radial},
              {"boundary_exponent", g.boundary_exponent},
              {"include_center", g.include_center}};
}

Json to_json(const AnnulusGrid& g) {
  return Json{{"r_min", g.r_min},
              {"r_max", g.r_max},
              {"radii", g.n_radial},
              {"angles", g.n_angular},
              {"geometric", g.geometric}};
}

Json to_json(const CriterionReport& r) {
  Json j;
  j["criterion"] = r.criterion;
  Json params = Json::object();
  params["c"] = to_json(r.c);
  params["weight"] = r.weight ? to_json(*r.weight) : Json();
  j["params"] = params;
  j["k_hat"] = r.k_hat;
  j["witness"] = to_json(r.witness);
  j["grid"] = to_json(r.grid);
  Json steps = Json::array();
  for (const auto& s : r.refinement) steps.push_back(Json::array({s.points, s.k_hat}));
  j["refinement"] = steps;
  j["omega_sup"] = r.omega_sup ? Json(*r.omega_sup) : Json();
  j["excluded"] = r.excluded;
  j["first_excluded"] = r.first_excluded ? to_json(*r.first_excluded) : Json();
  j["k"] = r.target_k;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const DilatationReport& r) {
  Json j;
  j["sup_mu_interior"] = r.sup_mu_interior;
  j["sup_mu_exterior"] = r.sup_mu_exterior;
  j["sup_mu_exterior_analytic"] = r.sup_mu_exterior_analytic;
  j["oracle_gap"] = r.oracle_gap;
  j["k_hat"] = r.k ? Json(*r.k) : Json();
  j["bound"] = r.bound ? Json(r.bound->ratio) : Json();
  j["K"] = r.bound ? Json(r.bound->K) : Json();
  j["quasiconformal"] = r.quasiconformal;
  j["certified"] = r.certified;
  Json w = Json::array();
  for (const auto& m : r.witnesses) {
    w.push_back({{"region", m.region}, {"z", to_json(m.z)}, {"mu", to_json(m.mu)},
                 {"abs_mu", std::abs(m.mu)}});
  }
  j["witnesses"] = w;
  return j;
}

void write_trace_csv(std::ostream& os, const BoundaryTrace& t, const CsvPreamble& p) {
  write_preamble(os, p);
  os << "theta,re_in,im_in,re_out,im_out,gap\n";
  for (std::size_t k = 0; k < t.theta.size(); ++k) {
    os << format_double(t.theta[k]) << ',' << format_double(t.inner[k].real()) << ','
       << format_double(t.inner[k].imag()) << ',' << format_double(t.outer[k].real())
       << ',' << format_double(t.outer[k].imag()) << ',' << format_double(t.gap[k])
       << '\n';
  }
}

void write_extension_csv(std::ostream& os, const std::vector<ExtensionSample>& samples,
                         const CsvPreamble& p) {
  write_preamble(os, p);
  os << "re_z,im_z,re_F,im_F,region\n";
  for (const auto& s : samples) {
    os << format_double(s.z.real()) << ',' << format_double(s.z.imag()) << ','
       << format_double(s.value.real()) << ',' << format_double(s.value.imag()) << ','
       << (s.exterior ? "exterior" : "interior") << '\n';
  }
}

void write_mu_csv(std::ostream& os, const std::vector<MuSample>& samples,
                  const CsvPreamble& p) {
  write_preamble(os, p);
  os << "re_z,im_z,re_mu,im_mu,abs_mu,region\n";
  for (const auto& s : samples) {
    os << format_double(s.z.real()) << ',' << format_double(s.z.imag()) << ','
       << format_double(s.mu.real()) << ',' << format_double(s.mu.imag()) << ','
       << format_double(std::abs(s.mu)) << ',' << (s.exterior ? "exterior" : "interior")
       << '\n';
  }
}

}  // namespace qcext
