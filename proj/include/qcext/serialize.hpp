#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "qcext/beltrami.hpp"
#include "qcext/criteria.hpp"
#include "qcext/extensions.hpp"
#include "qcext/maps.hpp"
#include "qcext/weights.hpp"

namespace qcext {

using Json = nlohmann::ordered_json;

/// Complex numbers are written as [re, im]; a bare number is accepted on input.
Json to_json(complex z);
complex complex_from_json(const Json& j, const std::string& field);

/// Map description: {"form": "hg", "h": "...", "g": "...", "lambda": [re, im]}
/// or {"form": "teichmuller", "h": "...", "alpha": [re, im]}.
struct MapSpec {
  std::string form = "hg";
  std::string h = "z";
  std::string g = "0";
  complex lambda{1.0};
  complex alpha{};
};

MapSpec map_spec_from_json(const Json& j);
Json to_json(const MapSpec& spec);
/// Parses and validates the map (sense-preserving on the default disk grid).
HarmonicMap build_map(const MapSpec& spec);

/// {"kind": "becker"} | {"kind": "ahlfors_c", "c": [re, im]} |
/// {"kind": "schwarzian_v", "v": "..."} | {"kind": "custom", "sigma": "..."}.
WeightSpec weight_spec_from_json(const Json& j);
Json to_json(const WeightSpec& spec);

Json to_json(const DiskGrid& grid);
Json to_json(const AnnulusGrid& grid);
Json to_json(const CriterionReport& report);
Json to_json(const DilatationReport& report);

/// %.17g, round-trip exact.
std::string format_double(double x);

/// Comment lines written at the top of every CSV.
struct CsvPreamble {
  Json config;
  bool certified = false;
};

void write_trace_csv(std::ostream& os, const BoundaryTrace& trace,
                     const CsvPreamble& preamble);
void write_extension_csv(std::ostream& os, const std::vector<ExtensionSample>& samples,
                         const CsvPreamble& preamble);
void write_mu_csv(std::ostream& os, const std::vector<MuSample>& samples,
                  const CsvPreamble& preamble);

}  // namespace qcext
