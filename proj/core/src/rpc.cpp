#include "chaindrift/rpc.hpp"

namespace chaindrift::mcp {

json RpcError::to_json() const {
  json j{{"code", code}, {"message", message}};
  if (!data.is_null()) j["data"] = data;
  return j;
}

RpcRequest RpcRequest::from_json(const json& j) {
  if (!j.is_object()) throw RpcFault(kInvalidRequest, "request is not a JSON object");
  if (!j.contains("jsonrpc") || !j["jsonrpc"].is_string() || j["jsonrpc"] != "2.0") {
    throw RpcFault(kInvalidRequest, "jsonrpc field must be exactly \"2.0\"");
  }
  if (!j.contains("method") || !j["method"].is_string()) {
    throw RpcFault(kInvalidRequest, "method field missing or not a string");
  }

  RpcRequest req;
  req.method = j["method"].get<std::string>();

  if (j.contains("params")) {
    if (!j["params"].is_object()) {
      throw RpcFault(kInvalidRequest, "params must be a JSON object");
    }
    req.params = j["params"];
  }

  if (!j.contains("id") || j["id"].is_null()) {
    throw RpcFault(kInvalidRequest, "id is required for tool calls");
  }
  if (!j["id"].is_number_integer() && !j["id"].is_string()) {
    throw RpcFault(kInvalidRequest, "id must be an integer or a string");
  }
  req.id = j["id"];

  if (j.contains("context")) {
    const auto& ctx = j["context"];
    if (!ctx.is_object()) throw RpcFault(kInvalidRequest, "context must be a JSON object");
    if (ctx.contains("session_id") && ctx["session_id"].is_string()) {
      req.session_id = ctx["session_id"].get<std::string>();
    }
  }
  return req;
}

json RpcRequest::to_json() const {
  json j{{"jsonrpc", "2.0"}, {"method", method}, {"params", params}, {"id", id}};
  if (session_id) j["context"] = json{{"session_id", *session_id}};
  return j;
}

RpcResponse RpcResponse::success(json id, json result, std::optional<double> uncertainty) {
  RpcResponse resp;
  resp.id = std::move(id);
  resp.result = std::move(result);
  resp.uncertainty = uncertainty;
  return resp;
}

RpcResponse RpcResponse::failure(json id, RpcError err) {
  RpcResponse resp;
  resp.id = std::move(id);
  resp.error = std::move(err);
  return resp;
}

RpcResponse RpcResponse::from_json(const json& j) {
  RpcResponse resp;
  resp.id = j.contains("id") ? j["id"] : json(nullptr);
  if (j.contains("error")) {
    RpcError err;
    err.code = j["error"].value("code", kInternalError);
    err.message = j["error"].value("message", "");
    if (j["error"].contains("data")) err.data = j["error"]["data"];
    resp.error = std::move(err);
  } else if (j.contains("result")) {
    resp.result = j["result"];
  }
  if (j.contains("uncertainty") && j["uncertainty"].is_number()) {
    resp.uncertainty = j["uncertainty"].get<double>();
  }
  return resp;
}

json RpcResponse::to_json() const {
  json j{{"jsonrpc", "2.0"}, {"id", id}};
  if (error) {
    j["error"] = error->to_json();
  } else {
    j["result"] = result;
  }
  if (uncertainty) j["uncertainty"] = *uncertainty;
  return j;
}

}  // namespace chaindrift::mcp
