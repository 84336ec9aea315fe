#include "chaindrift/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <istream>
#include <ostream>
#include <string>

namespace chaindrift::mcp {

namespace {

// One request line in, one response line out.
std::string handle_line(const std::string& line, const ToolRegistry& registry,
                        ToolCallLog& log) {
  json parsed;
  try {
    parsed = json::parse(line);
  } catch (const json::exception& e) {
    RpcError err{kParseError, std::string("parse error: ") + e.what(), nullptr};
    return RpcResponse::failure(nullptr, std::move(err)).to_json().dump();
  }

  RpcRequest request;
  try {
    request = RpcRequest::from_json(parsed);
  } catch (const RpcFault& fault) {
    json id = parsed.is_object() && parsed.contains("id") ? parsed["id"] : json(nullptr);
    return RpcResponse::failure(std::move(id), fault.error).to_json().dump();
  }

  return dispatch(request, registry, log).to_json().dump();
}

bool is_blank_line(const std::string& line) {
  for (unsigned char c : line) {
    if (std::isspace(c) == 0) return false;
  }
  return true;
}

}  // namespace

void serve_stream(std::istream& in, std::ostream& out, const ToolRegistry& registry,
                  ToolCallLog& log) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank_line(line)) continue;
    out << handle_line(line, registry, log) << '\n';
    out.flush();
  }
}

TcpServer::TcpServer(const ToolRegistry& registry, ToolCallLog& log)
    : registry_(registry), log_(log) {}

TcpServer::~TcpServer() { stop(); }

std::uint16_t TcpServer::start(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos) {
    throw InputError("TCP address must be host:port, got \"" + address + "\"");
  }
  const std::string host = address.substr(0, colon);
  const int port = std::stoi(address.substr(colon + 1));

  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw ConfigError("socket() failed");

  int reuse = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &reuse, sizeof reuse);

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (host.empty() || host == "0.0.0.0" || host == "*") {
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
  } else if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw InputError("cannot parse host address \"" + host + "\"");
  }

  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw ConfigError("bind() failed for " + address + ": " + std::strerror(errno));
  }
  if (::listen(listen_fd_, 16) != 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw ConfigError("listen() failed");
  }

  sockaddr_in bound{};
  socklen_t len = sizeof bound;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);

  running_ = true;
  accept_thread_ = std::thread([this] { accept_loop(); });
  return ntohs(bound.sin_port);
}

void TcpServer::accept_loop() {
  while (running_) {
    const int client = ::accept(listen_fd_, nullptr, nullptr);
    if (client < 0) {
      if (!running_) break;
      continue;
    }
    workers_.emplace_back([this, client] {
      std::string buffer;
      char chunk[4096];
      for (;;) {
        const ssize_t n = ::recv(client, chunk, sizeof chunk, 0);
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t newline;
        while ((newline = buffer.find('\n')) != std::string::npos) {
          std::string line = buffer.substr(0, newline);
          buffer.erase(0, newline + 1);
          if (!line.empty() && line.back() == '\r') line.pop_back();
          if (is_blank_line(line)) continue;
          const std::string response = handle_line(line, registry_, log_) + "\n";
          std::size_t sent = 0;
          while (sent < response.size()) {
            const ssize_t w = ::send(client, response.data() + sent, response.size() - sent, 0);
            if (w <= 0) break;
            sent += static_cast<std::size_t>(w);
          }
        }
      }
      ::close(client);
    });
  }
}

void TcpServer::stop() {
  if (!running_.exchange(false)) {
    if (accept_thread_.joinable()) accept_thread_.join();
    return;
  }
  if (listen_fd_ >= 0) {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
  if (accept_thread_.joinable()) accept_thread_.join();
  for (auto& worker : workers_) {
    if (worker.joinable()) worker.join();
  }
  workers_.clear();
}

}  // namespace chaindrift::mcp
