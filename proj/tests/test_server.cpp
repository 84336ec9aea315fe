#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <sstream>
#include <string>

#include "chaindrift/datagen.hpp"
#include "chaindrift/server.hpp"
#include "chaindrift/tools.hpp"

using namespace chaindrift;
using namespace chaindrift::mcp;

namespace {

constexpr const char* kPriceLine =
    R"({"jsonrpc":"2.0","method":"get_stock_price","params":{"symbol":"AAPL"},"id":1,"context":{"session_id":"abc123"}})";

struct Fixture {
  BundledEmbedder embedder;
  KnowledgeTool knowledge{generate_corpus(), embedder};
  FinancialTool financial{generate_snapshot()};
  ToolRegistry registry{make_default_registry(knowledge, financial)};
};

// Minimal blocking line client for the TCP tests.
class LineClient {
 public:
  explicit LineClient(std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    REQUIRE(fd_ >= 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
    REQUIRE(::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
  }
  ~LineClient() {
    if (fd_ >= 0) ::close(fd_);
  }

  void send_line(const std::string& line) {
    const std::string payload = line + "\n";
    REQUIRE(::send(fd_, payload.data(), payload.size(), 0) ==
            static_cast<ssize_t>(payload.size()));
  }

  std::string recv_line() {
    std::string out;
    char c;
    while (::recv(fd_, &c, 1, 0) == 1) {
      if (c == '\n') return out;
      out.push_back(c);
    }
    return out;
  }

 private:
  int fd_ = -1;
};

}  // namespace

TEST_CASE("stdio loop: responses in order, parse errors keep the loop alive") {
  Fixture fx;
  ToolCallLog log;

  std::istringstream in(std::string(kPriceLine) + "\n" + "this is not json\n" +
                        R"({"jsonrpc":"2.0","method":"nope","params":{},"id":7})" + "\n" +
                        kPriceLine + "\n");
  std::ostringstream out;
  serve_stream(in, out, fx.registry, log);

  std::istringstream lines(out.str());
  std::string line;

  REQUIRE(std::getline(lines, line));
  auto first = json::parse(line);
  CHECK(first["id"] == 1);
  CHECK(first["result"].contains("price"));
  CHECK(first["uncertainty"] == 0.01);

  REQUIRE(std::getline(lines, line));
  auto second = json::parse(line);
  CHECK(second["error"]["code"] == kParseError);
  CHECK(second["id"].is_null());

  REQUIRE(std::getline(lines, line));
  auto third = json::parse(line);
  CHECK(third["error"]["code"] == kMethodNotFound);
  CHECK(third["id"] == 7);

  REQUIRE(std::getline(lines, line));  // the loop survived the bad lines
  CHECK(json::parse(line) == first);

  CHECK(!std::getline(lines, line));
}

TEST_CASE("stdio responses are byte-identical across runs") {
  const std::string script = std::string(kPriceLine) + "\n" +
                             R"({"jsonrpc":"2.0","method":"knowledge_retrieval","params":{"query":"What is the capital of France?"},"id":2})" +
                             "\n";
  std::string first;
  std::string second;
  for (std::string* capture : {&first, &second}) {
    Fixture fx;
    ToolCallLog log;
    std::istringstream in(script);
    std::ostringstream out;
    serve_stream(in, out, fx.registry, log);
    *capture = out.str();
  }
  CHECK(first == second);
  CHECK(!first.empty());
}

TEST_CASE("tcp server: interleaved connections never cross responses") {
  Fixture fx;
  ToolCallLog log;
  TcpServer server(fx.registry, log);
  const auto port = server.start("127.0.0.1:0");
  REQUIRE(port > 0);

  LineClient a(port);
  LineClient b(port);

  a.send_line(R"({"jsonrpc":"2.0","method":"get_stock_price","params":{"symbol":"AAPL"},"id":"conn-a-1"})");
  b.send_line(R"({"jsonrpc":"2.0","method":"get_stock_price","params":{"symbol":"MSFT"},"id":"conn-b-1"})");
  a.send_line(R"({"jsonrpc":"2.0","method":"get_stock_price","params":{"symbol":"GOOGL"},"id":"conn-a-2"})");

  const auto a1 = json::parse(a.recv_line());
  const auto b1 = json::parse(b.recv_line());
  const auto a2 = json::parse(a.recv_line());

  CHECK(a1["id"] == "conn-a-1");
  CHECK(a1["result"]["symbol"] == "AAPL");
  CHECK(a2["id"] == "conn-a-2");
  CHECK(a2["result"]["symbol"] == "GOOGL");
  CHECK(b1["id"] == "conn-b-1");
  CHECK(b1["result"]["symbol"] == "MSFT");

  // malformed line on one connection leaves both usable
  a.send_line("garbage {{{");
  const auto err = json::parse(a.recv_line());
  CHECK(err["error"]["code"] == kParseError);

  b.send_line(R"({"jsonrpc":"2.0","method":"get_stock_price","params":{"symbol":"TSLA"},"id":"conn-b-2"})");
  const auto b2 = json::parse(b.recv_line());
  CHECK(b2["id"] == "conn-b-2");
  CHECK(b2["result"]["symbol"] == "TSLA");

  server.stop();
  CHECK(log.record_count() == 5);  // parse errors never reach dispatch
}
