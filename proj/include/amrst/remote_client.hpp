#ifndef AMRST_REMOTE_CLIENT_HPP
#define AMRST_REMOTE_CLIENT_HPP

#include <memory>
#include <string>
#include <vector>

#include "amrst/pipeline.hpp"

namespace amrst {

struct RemoteConfig {
  std::string endpoint;  // e.g. http://127.0.0.1:8080
  int timeout_ms = 5000;
  int retries = 2;          // retry count on transient failures
  int poll_interval_ms = 50;  // fine-tune job polling
  int max_polls = 1200;
};

// HTTP client for remote model backends. Wire contract (JSON bodies):
//   POST /encode   {"text": s}                 -> {"penman": str}
//   POST /decode   {"penman": str, "style": p} -> {"text": s}
//   POST /stylize  {"text": s, "style": p}     -> {"text": s}
//   POST /finetune {"role": "encoder"|"decoder", "style"?: p,
//                   "pairs": [{"text":..., "penman":...}]} -> {"job": id}
//   GET  /finetune/{id} -> {"status": "running"|"done"|"failed"}
// Requests are idempotent and retried on transport errors and 5xx; 4xx and
// malformed bodies raise BackendError(Protocol). Malformed Penman from the
// server goes through the repair reader and is counted in repair_count().
class RemoteBackendClient {
 public:
  explicit RemoteBackendClient(RemoteConfig config);
  ~RemoteBackendClient();

  RemoteBackendClient(const RemoteBackendClient&) = delete;
  RemoteBackendClient& operator=(const RemoteBackendClient&) = delete;

  AmrGraph encode(const std::string& text);
  std::string decode(const AmrGraph& graph, const std::string& style);
  std::string stylize(const std::string& text, const std::string& style);
  void finetune(const std::string& role, const std::string& style,
                const std::vector<std::pair<std::string, AmrGraph>>& pairs);
  // POST /classify {"text": s} -> {"style": p, "confidence": c}; seam for an
  // externally hosted style classifier.
  std::pair<std::string, double> classify(const std::string& text);

  // True when the endpoint answers HTTP at all.
  bool reachable();

  std::size_t repair_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Backend interfaces over one shared client; one decoder per style.
Backends make_remote_backends(std::shared_ptr<RemoteBackendClient> client,
                              const std::vector<std::string>& styles);

}  // namespace amrst

#endif  // AMRST_REMOTE_CLIENT_HPP
