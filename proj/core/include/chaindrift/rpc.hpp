#pragma once

// JSON-RPC 2.0 message types for the MCP tool wire, newline-delimited.
// Responses carry an optional `uncertainty` field and requests an optional
// `context.session_id`; serialized key order is lexicographic.

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "chaindrift/errors.hpp"

namespace chaindrift::mcp {

using json = nlohmann::json;

inline constexpr int kParseError = -32700;
inline constexpr int kInvalidRequest = -32600;
inline constexpr int kMethodNotFound = -32601;
inline constexpr int kInvalidParams = -32602;
inline constexpr int kInternalError = -32603;

struct RpcError {
  int code = kInternalError;
  std::string message;
  json data;  // tool-specific details; null when absent

  json to_json() const;
};

// Thrown by validation and tool handlers; dispatch maps it to an error response.
class RpcFault : public Error {
 public:
  RpcFault(int code, std::string message, json data = nullptr)
      : Error(message), error{code, std::move(message), std::move(data)} {}
  RpcError error;
};

struct RpcRequest {
  std::string method;
  json params = json::object();
  json id;  // integer or string; null means absent
  std::optional<std::string> session_id;

  // Throws RpcFault(kInvalidRequest) for a malformed envelope.
  static RpcRequest from_json(const json& j);
  json to_json() const;
};

struct RpcResponse {
  json id;
  json result;  // valid only when !error
  std::optional<RpcError> error;
  std::optional<double> uncertainty;

  static RpcResponse success(json id, json result, std::optional<double> uncertainty = {});
  static RpcResponse failure(json id, RpcError err);
  static RpcResponse from_json(const json& j);
  json to_json() const;
};

}  // namespace chaindrift::mcp
