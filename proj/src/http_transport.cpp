#include "ocwobs/http_transport.hpp"

#include <httplib.h>

namespace ocw {

FetchOutcome outcome_for_status(int status) {
  if (status >= 200 && status < 400) return FetchOutcome::up();
  return FetchOutcome::down("HTTP " + std::to_string(status));
}

FetchOutcome HttpTransport::fetch(const std::string& url, std::chrono::milliseconds timeout) const {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) return FetchOutcome::down("url has no scheme");
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") return FetchOutcome::down("unsupported scheme " + scheme);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") return FetchOutcome::down("https not supported in this build");
#endif
  const auto path_start = url.find('/', scheme_end + 3);
  const std::string origin = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  if (!client.is_valid()) return FetchOutcome::down("invalid url");
  client.set_follow_location(false);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  auto res = client.Head(path);
  if (res && (res->status == 405 || res->status == 501)) res = client.Get(path);
  if (!res) return FetchOutcome::down(httplib::to_string(res.error()));
  return outcome_for_status(res->status);
}

}  // namespace ocw
