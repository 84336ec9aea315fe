#pragma once

// Newline-delimited JSON-RPC serving over stdio streams or TCP.

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <thread>
#include <vector>

#include "chaindrift/registry.hpp"

namespace chaindrift::mcp {

// Reads one JSON request per line from `in`, writes one response per line
// to `out`, in order. A malformed line yields a -32700 response and the
// loop continues; the loop ends at end of stream.
void serve_stream(std::istream& in, std::ostream& out, const ToolRegistry& registry,
                  ToolCallLog& log);

// Accepts multiple concurrent connections; each connection is served
// independently with responses in request order.
class TcpServer {
 public:
  TcpServer(const ToolRegistry& registry, ToolCallLog& log);
  ~TcpServer();

  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  // address is "host:port"; port 0 binds an ephemeral port. Returns the
  // bound port and starts the accept loop in the background.
  std::uint16_t start(const std::string& address);
  void stop();

 private:
  void accept_loop();

  const ToolRegistry& registry_;
  ToolCallLog& log_;
  int listen_fd_ = -1;
  std::atomic<bool> running_{false};
  std::thread accept_thread_;
  std::vector<std::thread> workers_;
};

}  // namespace chaindrift::mcp
