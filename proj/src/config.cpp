#include "citind/config.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "citind/error.hpp"

namespace citind {

namespace {

using nlohmann::json;

template <typename T>
void read(const json& j, const char* key, T& target) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    target = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
  }
}

CitationWindow parse_window(const json& value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "open") return CitationWindow::open();
    throw ConfigError("citation_window must be \"open\" or a positive integer");
  }
  if (value.is_number_integer()) return CitationWindow::fixed(value.get<int>());
  throw ConfigError("citation_window must be \"open\" or a positive integer");
}

ColumnMapping parse_columns(const json& value) {
  ColumnMapping mapping;
  for (const auto& [key, name] : value.items()) mapping.renames[key] = name.get<std::string>();
  return mapping;
}

const std::vector<std::string> kKnownKeys{
    "census_year",   "min_year",      "citation_window",     "minimum_window",
    "reference_years", "top_x_levels", "i3_weights",         "doc_types",
    "partition_by_doc_type", "drop_self_citations", "csncr_reference_basis", "missing_values",
    "incites_orientation", "css_classes", "format",          "precision",
    "strict_input",  "paper_columns", "citation_columns",    "icite"};

}  // namespace

void RunConfig::validate() const {
  if (minimum_window < 1) throw ConfigError("minimum_window must be >= 1");
  if (min_year && *min_year > census_year) throw ConfigError("min_year after census_year");
  if (reference_years && *reference_years < 1) throw ConfigError("reference_years must be >= 1");
  if (top_x_levels.empty()) throw ConfigError("top_x_levels must not be empty");
  for (std::size_t i = 0; i < top_x_levels.size(); ++i) {
    if (!(top_x_levels[i] > 0.0 && top_x_levels[i] <= 100.0)) {
      throw ConfigError(fmt::format("top_x level {} outside (0, 100]", top_x_levels[i]));
    }
    if (i > 0 && !(top_x_levels[i] > top_x_levels[i - 1])) {
      throw ConfigError("top_x_levels must be strictly increasing");
    }
  }
  validate_weights(i3_weights, top_x_levels);
  if (doc_types.empty()) throw ConfigError("doc_types must not be empty");
  if (css_classes < 2) throw ConfigError("css_classes must be >= 2");
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  if (precision < 0 || precision > 17) throw ConfigError("precision must be within 0..17");
  if (icite.batch_size == 0 || icite.concurrency == 0) {
    throw ConfigError("icite batch_size and concurrency must be positive");
  }
}

PaperLoadOptions RunConfig::paper_options() const {
  PaperLoadOptions o;
  o.census_year = census_year;
  o.min_year = min_year;
  o.columns = paper_columns;
  o.strict = strict_input;
  return o;
}

CitationLoadOptions RunConfig::citation_options() const {
  CitationLoadOptions o;
  o.columns = citation_columns;
  o.drop_self_citations = drop_self_citations;
  o.strict = strict_input;
  return o;
}

RefSetOptions RunConfig::refset_options() const {
  RefSetOptions o;
  o.window = citation_window;
  o.partition_by_doc_type = partition_by_doc_type;
  o.doc_types = doc_types;
  o.reference_basis = csncr_basis;
  return o;
}

namespace {

RunConfig from_json(const json& j);

}  // namespace

RunConfig parse_config(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    return from_json(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config value: ") + e.what());
  }
}

namespace {

RunConfig from_json(const json& j) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      throw ConfigError(fmt::format("unknown config key '{}'", key));
    }
  }

  RunConfig c;
  read(j, "census_year", c.census_year);
  if (j.contains("min_year") && !j["min_year"].is_null()) c.min_year = j["min_year"].get<int>();
  if (j.contains("citation_window")) c.citation_window = parse_window(j["citation_window"]);
  read(j, "minimum_window", c.minimum_window);
  if (j.contains("reference_years") && !j["reference_years"].is_null()) {
    c.reference_years = j["reference_years"].get<int>();
  }
  read(j, "top_x_levels", c.top_x_levels);
  read(j, "i3_weights", c.i3_weights.values);
  if (j.contains("doc_types")) {
    c.doc_types.clear();
    for (const auto& t : j["doc_types"]) c.doc_types.push_back(parse_doc_type(t.get<std::string>()));
  }
  read(j, "partition_by_doc_type", c.partition_by_doc_type);
  read(j, "drop_self_citations", c.drop_self_citations);
  if (j.contains("csncr_reference_basis")) {
    const auto basis = j["csncr_reference_basis"].get<std::string>();
    if (basis == "all") c.csncr_basis = ReferenceBasis::all_listed;
    else if (basis == "linked") c.csncr_basis = ReferenceBasis::linked_only;
    else throw ConfigError("csncr_reference_basis must be \"all\" or \"linked\"");
  }
  if (j.contains("missing_values")) {
    const auto policy = j["missing_values"].get<std::string>();
    if (policy == "listwise") c.missing_values = MissingPolicy::listwise;
    else if (policy == "per_indicator") c.missing_values = MissingPolicy::per_indicator;
    else throw ConfigError("missing_values must be \"listwise\" or \"per_indicator\"");
  }
  if (j.contains("incites_orientation")) {
    const auto o = j["incites_orientation"].get<std::string>();
    if (o == "inverted") c.incites = InCitesOrientation::inverted;
    else if (o == "raw") c.incites = InCitesOrientation::raw;
    else throw ConfigError("incites_orientation must be \"inverted\" or \"raw\"");
  }
  read(j, "css_classes", c.css_classes);
  read(j, "format", c.format);
  read(j, "precision", c.precision);
  read(j, "strict_input", c.strict_input);
  if (j.contains("paper_columns")) c.paper_columns = parse_columns(j["paper_columns"]);
  if (j.contains("citation_columns")) c.citation_columns = parse_columns(j["citation_columns"]);
  if (j.contains("icite")) {
    const auto& ic = j["icite"];
    read(ic, "enabled", c.icite.enabled);
    read(ic, "base_url", c.icite.base_url);
    read(ic, "resolver_url", c.icite.resolver_url);
    read(ic, "rcr_field", c.icite.rcr_field);
    read(ic, "batch_size", c.icite.batch_size);
    read(ic, "concurrency", c.icite.concurrency);
    read(ic, "max_retries", c.icite.max_retries);
  }
  c.validate();
  return c;
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_config(in);
}

std::string dump_config(const RunConfig& c) {
  json j;
  j["census_year"] = c.census_year;
  j["min_year"] = c.min_year ? json(*c.min_year) : json(nullptr);
  j["citation_window"] =
      c.citation_window.is_open() ? json("open") : json(c.citation_window.years());
  j["minimum_window"] = c.minimum_window;
  j["reference_years"] = c.reference_years ? json(*c.reference_years) : json(nullptr);
  j["top_x_levels"] = c.top_x_levels;
  j["i3_weights"] = c.i3_weights.values;
  j["doc_types"] = json::array();
  for (auto t : c.doc_types) j["doc_types"].push_back(std::string(to_string(t)));
  j["partition_by_doc_type"] = c.partition_by_doc_type;
  j["drop_self_citations"] = c.drop_self_citations;
  j["csncr_reference_basis"] = c.csncr_basis == ReferenceBasis::all_listed ? "all" : "linked";
  j["missing_values"] = c.missing_values == MissingPolicy::listwise ? "listwise" : "per_indicator";
  j["incites_orientation"] = c.incites == InCitesOrientation::inverted ? "inverted" : "raw";
  j["css_classes"] = c.css_classes;
  j["format"] = c.format;
  j["precision"] = c.precision;
  j["strict_input"] = c.strict_input;
  j["paper_columns"] = c.paper_columns.renames;
  j["citation_columns"] = c.citation_columns.renames;
  j["icite"] = {{"enabled", c.icite.enabled},         {"base_url", c.icite.base_url},
                {"resolver_url", c.icite.resolver_url}, {"rcr_field", c.icite.rcr_field},
                {"batch_size", c.icite.batch_size},   {"concurrency", c.icite.concurrency},
                {"max_retries", c.icite.max_retries}};
  return j.dump(2) + "\n";
}

}  // namespace citind
