#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citind/config.hpp"
#include "citind/corpus.hpp"
#include "citind/error.hpp"

namespace citind {

/// Raised for unparseable service responses and for transport failures that
/// outlast the retry budget.
class IciteError : public Error {
 public:
  using Error::Error;
};

struct HttpResponse {
  int status = 0;  // 0 means the transport failed before a status arrived
  std::string body;
};

using HttpGet = std::function<HttpResponse(const std::string& url)>;

/// Live HTTPS transport. Throws IciteError when the build lacks TLS support.
HttpGet make_http_transport(std::chrono::seconds timeout = std::chrono::seconds(30));

/// True when the CITIND_ENABLE_NETWORK environment variable is set to 1/true/yes.
bool network_enabled_by_env();
/// CITIND_ICITE_BASE_URL when set, otherwise `configured`.
std::string icite_base_url(const std::string& configured);

struct IciteRecord {
  std::string pmid;
  std::optional<double> rcr;  // absent = "no score"
  std::string raw;            // response entry as received, for audit

  bool has_score() const { return rcr.has_value(); }
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_delay{500};
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to sleeping the thread
};

/// Calls `get` until it returns a non-retryable status (anything but 0, 429 and 5xx),
/// doubling the delay between attempts. Throws IciteError once retries run out.
HttpResponse get_with_retry(const HttpGet& get, const std::string& url, const RetryPolicy& policy);

std::string url_encode(std::string_view text);

/// Parses an iCite /pubs body. Entries lacking a usable `rcr_field` give a
/// record without a score. Throws IciteError on malformed bodies.
std::vector<IciteRecord> parse_icite_response(std::string_view body, const std::string& rcr_field);

/// Parses an ID converter body for the first record's pmid; nullopt when the
/// service reports no match. Throws IciteError on malformed bodies.
std::optional<std::string> parse_idconv_response(std::string_view body);

class PmidResolver {
 public:
  virtual ~PmidResolver() = default;
  /// `doi` is normalized; not-found is nullopt, never an error.
  virtual std::optional<std::string> resolve(const std::string& doi) = 0;
};

/// Offline resolver backed by a JSON object {doi: pmid}.
class MapResolver : public PmidResolver {
 public:
  explicit MapResolver(std::map<std::string, std::string> table);
  static MapResolver from_file(const std::filesystem::path& path);
  std::optional<std::string> resolve(const std::string& doi) override;

 private:
  std::map<std::string, std::string> table_;
};

/// Resolver querying the PMC ID converter service.
class IdConverterResolver : public PmidResolver {
 public:
  IdConverterResolver(HttpGet get, std::string base_url, RetryPolicy retry = {});
  std::optional<std::string> resolve(const std::string& doi) override;

 private:
  HttpGet get_;
  std::string base_url_;
  RetryPolicy retry_;
};

class IciteClient {
 public:
  IciteClient(HttpGet get, IciteConfig config, RetryPolicy retry = {});

  /// One record per distinct requested pmid, ordered by pmid. Requests are
  /// deduplicated, split into batches of config.batch_size and issued at most
  /// config.concurrency at a time.
  std::map<std::string, IciteRecord> fetch_rcr(const std::vector<std::string>& pmids) const;

  std::string batch_url(const std::vector<std::string>& pmids) const;

 private:
  std::vector<IciteRecord> fetch_batch(const std::vector<std::string>& pmids) const;

  HttpGet get_;
  IciteConfig config_;
  RetryPolicy retry_;
};

/// Records keyed by pmid, persisted as JSON lines.
class IciteCache {
 public:
  static IciteCache load(const std::filesystem::path& path);  // missing file = empty cache
  void save(const std::filesystem::path& path) const;

  const IciteRecord* find(const std::string& pmid) const;
  void put(IciteRecord record);
  const std::map<std::string, IciteRecord>& records() const { return records_; }

 private:
  std::map<std::string, IciteRecord> records_;
};

struct IciteEnrichment {
  std::string paper_id;
  std::optional<std::string> doi;
  std::optional<std::string> pmid;
  std::optional<double> rcr;
};

/// DOI -> pmid -> RCR for every paper, consulting `cache` first and storing new
/// records in it. Papers without a DOI or pmid get empty fields.
std::vector<IciteEnrichment> enrich_with_icite(const Corpus& corpus, PmidResolver& resolver,
                                               const IciteClient& client, IciteCache& cache);

}  // namespace citind
