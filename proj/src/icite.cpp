#include "citind/icite.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace citind {

namespace {

using nlohmann::json;

bool retryable(int status) { return status == 0 || status == 429 || status >= 500; }

std::string pmid_text(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  return {};
}

json parse_body(std::string_view body, const char* what) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw IciteError(fmt::format("malformed {} response: {}", what, e.what()));
  }
}

json record_to_json(const IciteRecord& r) {
  json j;
  j["pmid"] = r.pmid;
  j["rcr"] = r.rcr ? json(*r.rcr) : json(nullptr);
  j["raw"] = r.raw;
  return j;
}

}  // namespace

bool network_enabled_by_env() {
  const char* value = std::getenv("CITIND_ENABLE_NETWORK");
  if (!value) return false;
  std::string v(value);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  return v == "1" || v == "true" || v == "yes";
}

std::string icite_base_url(const std::string& configured) {
  const char* value = std::getenv("CITIND_ICITE_BASE_URL");
  return value && *value ? std::string(value) : configured;
}

HttpResponse get_with_retry(const HttpGet& get, const std::string& url, const RetryPolicy& policy) {
  auto delay = policy.initial_delay;
  HttpResponse response;
  for (int attempt = 0;; ++attempt) {
    response = get(url);
    if (!retryable(response.status)) return response;
    if (attempt >= policy.max_retries) break;
    if (policy.sleep) policy.sleep(delay);
    else std::this_thread::sleep_for(delay);
    delay *= 2;
  }
  throw IciteError(fmt::format("GET {} failed after {} attempts (last status {})", url,
                               policy.max_retries + 1, response.status));
}

std::string url_encode(std::string_view text) {
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += fmt::format("%{:02X}", c);
    }
  }
  return out;
}

std::vector<IciteRecord> parse_icite_response(std::string_view body, const std::string& rcr_field) {
  const json j = parse_body(body, "iCite");
  const json* entries = nullptr;
  if (j.is_object() && j.contains("data") && j["data"].is_array()) entries = &j["data"];
  else if (j.is_array()) entries = &j;
  if (!entries) throw IciteError("malformed iCite response: no data array");

  std::vector<IciteRecord> records;
  for (const auto& entry : *entries) {
    if (!entry.is_object() || !entry.contains("pmid")) {
      throw IciteError("malformed iCite response: entry without pmid");
    }
    IciteRecord r;
    r.pmid = pmid_text(entry["pmid"]);
    if (r.pmid.empty()) throw IciteError("malformed iCite response: bad pmid");
    if (entry.contains(rcr_field) && entry[rcr_field].is_number()) {
      const double v = entry[rcr_field].get<double>();
      if (v >= 0.0) r.rcr = v;
    }
    r.raw = entry.dump();
    records.push_back(std::move(r));
  }
  return records;
}

std::optional<std::string> parse_idconv_response(std::string_view body) {
  const json j = parse_body(body, "ID converter");
  if (!j.is_object() || !j.contains("records") || !j["records"].is_array()) {
    throw IciteError("malformed ID converter response: no records array");
  }
  for (const auto& record : j["records"]) {
    if (record.contains("pmid")) {
      auto pmid = pmid_text(record["pmid"]);
      if (!pmid.empty()) return pmid;
    }
  }
  return std::nullopt;
}

MapResolver::MapResolver(std::map<std::string, std::string> table) {
  for (auto& [doi, pmid] : table) {
    auto key = normalize_doi(doi);
    if (key) table_[*key] = std::move(pmid);
  }
}

MapResolver MapResolver::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IciteError("cannot open pmid map " + path.string());
  std::map<std::string, std::string> table;
  try {
    const json j = json::parse(in);
    for (const auto& [doi, pmid] : j.items()) table[doi] = pmid_text(pmid);
  } catch (const json::exception& e) {
    throw IciteError(fmt::format("malformed pmid map {}: {}", path.string(), e.what()));
  }
  return MapResolver(std::move(table));
}

std::optional<std::string> MapResolver::resolve(const std::string& doi) {
  auto it = table_.find(doi);
  if (it == table_.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

IdConverterResolver::IdConverterResolver(HttpGet get, std::string base_url, RetryPolicy retry)
    : get_(std::move(get)), base_url_(std::move(base_url)), retry_(std::move(retry)) {}

std::optional<std::string> IdConverterResolver::resolve(const std::string& doi) {
  const auto url = fmt::format("{}?ids={}&format=json", base_url_, url_encode(doi));
  const auto response = get_with_retry(get_, url, retry_);
  if (response.status != 200) {
    throw IciteError(fmt::format("ID converter returned HTTP {}", response.status));
  }
  return parse_idconv_response(response.body);
}

IciteClient::IciteClient(HttpGet get, IciteConfig config, RetryPolicy retry)
    : get_(std::move(get)), config_(std::move(config)), retry_(std::move(retry)) {
  if (config_.batch_size == 0 || config_.concurrency == 0) {
    throw ConfigError("icite batch_size and concurrency must be positive");
  }
  retry_.max_retries = config_.max_retries;
}

std::string IciteClient::batch_url(const std::vector<std::string>& pmids) const {
  std::string joined;
  for (const auto& p : pmids) {
    if (!joined.empty()) joined += ',';
    joined += url_encode(p);
  }
  auto base = config_.base_url;
  while (!base.empty() && base.back() == '/') base.pop_back();
  return fmt::format("{}/pubs?pmids={}", base, joined);
}

std::vector<IciteRecord> IciteClient::fetch_batch(const std::vector<std::string>& pmids) const {
  const auto response = get_with_retry(get_, batch_url(pmids), retry_);
  if (response.status != 200) {
    throw IciteError(fmt::format("iCite returned HTTP {}", response.status));
  }
  return parse_icite_response(response.body, config_.rcr_field);
}

std::map<std::string, IciteRecord> IciteClient::fetch_rcr(const std::vector<std::string>& pmids) const {
  std::vector<std::string> unique;
  for (const auto& p : pmids) {
    if (p.empty()) throw IciteError("empty pmid in request");
    unique.push_back(p);
  }
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  std::vector<std::vector<std::string>> batches;
  for (std::size_t i = 0; i < unique.size(); i += config_.batch_size) {
    const auto end = std::min(unique.size(), i + config_.batch_size);
    batches.emplace_back(unique.begin() + static_cast<std::ptrdiff_t>(i),
                         unique.begin() + static_cast<std::ptrdiff_t>(end));
  }

  std::vector<std::vector<IciteRecord>> results(batches.size());
  for (std::size_t wave = 0; wave < batches.size(); wave += config_.concurrency) {
    const auto end = std::min(batches.size(), wave + config_.concurrency);
    std::vector<std::future<std::vector<IciteRecord>>> pending;
    for (std::size_t b = wave; b < end; ++b) {
      pending.push_back(std::async(std::launch::async, [this, &batches, b] { return fetch_batch(batches[b]); }));
    }
    // get() on every future before rethrowing so no task outlives this frame
    std::exception_ptr failure;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      try {
        results[wave + k] = pending[k].get();
      } catch (...) {
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::map<std::string, IciteRecord> out;
  for (const auto& p : unique) out[p] = IciteRecord{p, std::nullopt, {}};
  for (auto& batch : results) {
    for (auto& r : batch) {
      auto it = out.find(r.pmid);
      if (it != out.end()) it->second = std::move(r);
    }
  }
  return out;
}

IciteCache IciteCache::load(const std::filesystem::path& path) {
  IciteCache cache;
  std::ifstream in(path);
  if (!in) return cache;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      IciteRecord r;
      r.pmid = pmid_text(j.at("pmid"));
      if (r.pmid.empty()) throw IciteError("empty pmid");
      if (j.contains("rcr") && j["rcr"].is_number()) r.rcr = j["rcr"].get<double>();
      if (j.contains("raw") && j["raw"].is_string()) r.raw = j["raw"].get<std::string>();
      cache.put(std::move(r));
    } catch (const std::exception& e) {
      throw IciteError(fmt::format("{}:{}: bad cache line: {}", path.string(), number, e.what()));
    }
  }
  return cache;
}

void IciteCache::save(const std::filesystem::path& path) const {
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    for (const auto& [pmid, r] : records_) out << record_to_json(r).dump() << '\n';
    if (!out) throw Error("failed writing " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

const IciteRecord* IciteCache::find(const std::string& pmid) const {
  auto it = records_.find(pmid);
  return it == records_.end() ? nullptr : &it->second;
}

void IciteCache::put(IciteRecord record) {
  auto key = record.pmid;
  records_[key] = std::move(record);
}

std::vector<IciteEnrichment> enrich_with_icite(const Corpus& corpus, PmidResolver& resolver,
                                               const IciteClient& client, IciteCache& cache) {
  std::vector<IciteEnrichment> rows;
  rows.reserve(corpus.size());
  std::vector<std::string> wanted;
  for (const auto& paper : corpus.papers()) {
    IciteEnrichment row{paper.id, paper.doi, std::nullopt, std::nullopt};
    if (paper.doi) {
      row.pmid = resolver.resolve(*paper.doi);
      if (row.pmid && !cache.find(*row.pmid)) wanted.push_back(*row.pmid);
    }
    rows.push_back(std::move(row));
  }
  if (!wanted.empty()) {
    for (auto& [pmid, record] : client.fetch_rcr(wanted)) cache.put(std::move(record));
  }
  for (auto& row : rows) {
    if (!row.pmid) continue;
    if (const auto* r = cache.find(*row.pmid)) row.rcr = r->rcr;
  }
  return rows;
}

}  // namespace citind
