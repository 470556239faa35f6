#include "citind/icite.hpp"

#ifdef CITIND_WITH_HTTPS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace citind {

namespace {

// Splits "https://host[:port]/path?query" into origin and path+query.
std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw IciteError("not an absolute URL: " + url);
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

HttpGet make_http_transport(std::chrono::seconds timeout) {
#ifndef CITIND_WITH_HTTPS
  (void)timeout;
  throw IciteError("built without HTTPS support");
#else
  return [timeout](const std::string& url) {
    const auto [origin, target] = split_url(url);
    httplib::Client client(origin);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_follow_location(true);
    auto result = client.Get(target);
    if (!result) return HttpResponse{0, {}};
    return HttpResponse{result->status, result->body};
  };
#endif
}

}  // namespace citind
