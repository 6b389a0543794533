#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "revspy/game.hpp"
#include "revspy/serialize.hpp"

namespace httplib {
class Server;
}

namespace revspy {

// Error with the HTTP status and structured detail it is reported with.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message, json detail = nullptr)
      : std::runtime_error(message), status(status), code(std::move(code)), detail(std::move(detail)) {}
  int status;
  std::string code;
  json detail;
};

struct Session;

// In-memory sessions: one human side against a registered strategy. Operations on
// one session are serialized; different sessions proceed concurrently.
class SessionManager {
 public:
  SessionManager();
  ~SessionManager();

  // Body: {graph: "family:params" | graph object, m, r, s, human, ai, horizon?, seed?}
  json create(const json& body);
  json get(const std::string& id);
  // Body: {placement: [...]} during placement, {move: [...]} afterwards.
  json submit(const std::string& id, const json& body);
  json resign(const std::string& id);
  json strategies() const;
  // Full transcript so far (exportable; also used for replay checks).
  Transcript transcript(const std::string& id);

 private:
  std::shared_ptr<Session> find(const std::string& id);
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

void install_routes(httplib::Server& server, SessionManager& sessions);
// Blocks until the server stops.
bool serve(const std::string& host, int port, SessionManager& sessions);

}  // namespace revspy
