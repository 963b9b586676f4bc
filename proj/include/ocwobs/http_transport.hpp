#pragma once

#include "ocwobs/prober.hpp"

namespace ocw {

/// Maps an HTTP status code onto a fetch outcome: 2xx and 3xx are up,
/// everything else is down.
FetchOutcome outcome_for_status(int status);

/// Live transport over plain HTTP(S). Sends HEAD (falling back to GET when
/// the server rejects HEAD) without following redirects. Connection
/// failures and timeouts are down.
class HttpTransport : public Transport {
 public:
  FetchOutcome fetch(const std::string& url, std::chrono::milliseconds timeout) const override;
};

}  // namespace ocw
