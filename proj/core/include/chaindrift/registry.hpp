#pragma once

// Tool registry with declarative parameter specs, request validation,
// dispatch with latency measurement, and a JSONL call log.

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "chaindrift/rpc.hpp"

namespace chaindrift::mcp {

struct ParamSpec {
  enum class Type { String, Integer, Number, Boolean };

  std::string name;
  Type type = Type::String;
  bool required = false;
  json default_value;        // null = no default
  std::vector<json> allowed; // enumeration; empty = unconstrained
};

struct ToolCallRecord {
  int step = 0;
  std::string tool;
  std::string query;
  json results;
  double latency_ms = 0.0;

  json to_json() const;
  static ToolCallRecord from_json(const json& j);
};

// Appends one JSONL line per record. A write failure never throws into the
// dispatch path; it is reported through last_error().
class ToolCallLog {
 public:
  ToolCallLog() = default;                      // in-memory only
  explicit ToolCallLog(const std::string& path);

  void append(ToolCallRecord record);
  int next_step();

  std::vector<ToolCallRecord> records() const;
  std::size_t record_count() const;
  std::string last_error() const;

 private:
  mutable std::mutex mutex_;
  std::string path_;
  int step_ = 0;
  std::vector<ToolCallRecord> records_;
  std::string last_error_;
};

struct ToolResult {
  json value;
  std::optional<double> uncertainty;
};

using ToolHandler = std::function<ToolResult(const json& args)>;

struct ToolSpec {
  std::string method;
  std::vector<ParamSpec> params;
  std::string query_param;  // logged as the `query` field; empty -> params dump
  ToolHandler handler;
};

class ToolRegistry {
 public:
  void add(ToolSpec spec);
  const ToolSpec* find(const std::string& method) const;
  std::vector<std::string> methods() const;

 private:
  std::map<std::string, ToolSpec> tools_;
};

struct ValidatedCall {
  const ToolSpec* tool = nullptr;
  json args;  // params with defaults filled
};

// Resolves the method and checks names, types, required flags and
// enumerations. Throws RpcFault with -32601 / -32602.
ValidatedCall validate_request(const RpcRequest& req, const ToolRegistry& registry);

// Validates, routes, measures wall-clock latency, appends exactly one log
// record, and returns a response echoing the request id.
RpcResponse dispatch(const RpcRequest& req, const ToolRegistry& registry, ToolCallLog& log);

}  // namespace chaindrift::mcp
