#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "nanoprover/document.hpp"

namespace nanoprover {

struct ServeOptions {
  std::string host = "127.0.0.1";
  unsigned short port = 8765;  // 0 picks a free port
  std::filesystem::path ui_root;  // files served under /ui/
  Options prover;
};

// HTTP + WebSocket service on one port. A WebSocket upgrade on any path opens
// a fresh Session speaking the JSON protocol, one message per frame. GET
// /ui/... serves static files from `ui_root`.
class Server {
 public:
  explicit Server(ServeOptions opts);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts accepting in a background thread.
  void start();
  unsigned short port() const;
  // Stops accepting; open connections finish on their own.
  void stop();
  // Blocks until stop() is called from elsewhere.
  void wait();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Parses "HOST:PORT". Errors: ParseError.
std::pair<std::string, unsigned short> parse_address(const std::string& addr);

}  // namespace nanoprover
