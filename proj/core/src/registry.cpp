#include "chaindrift/registry.hpp"

#include <chrono>
#include <fstream>

namespace chaindrift::mcp {

namespace {

const char* type_name(ParamSpec::Type t) {
  switch (t) {
    case ParamSpec::Type::String: return "string";
    case ParamSpec::Type::Integer: return "integer";
    case ParamSpec::Type::Number: return "number";
    case ParamSpec::Type::Boolean: return "boolean";
  }
  return "unknown";
}

bool matches_type(const json& v, ParamSpec::Type t) {
  switch (t) {
    case ParamSpec::Type::String: return v.is_string();
    case ParamSpec::Type::Integer: return v.is_number_integer();
    case ParamSpec::Type::Number: return v.is_number();
    case ParamSpec::Type::Boolean: return v.is_boolean();
  }
  return false;
}

}  // namespace

json ToolCallRecord::to_json() const {
  return json{{"step", step},
              {"tool", tool},
              {"query", query},
              {"results", results},
              {"latency_ms", latency_ms}};
}

ToolCallRecord ToolCallRecord::from_json(const json& j) {
  ToolCallRecord r;
  r.step = j.at("step").get<int>();
  r.tool = j.at("tool").get<std::string>();
  r.query = j.at("query").get<std::string>();
  r.results = j.at("results");
  r.latency_ms = j.at("latency_ms").get<double>();
  return r;
}

ToolCallLog::ToolCallLog(const std::string& path) : path_(path) {}

void ToolCallLog::append(ToolCallRecord record) {
  std::lock_guard lock(mutex_);
  if (!path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    if (out) {
      out << record.to_json().dump() << '\n';
      if (!out) last_error_ = "short write to " + path_;
    } else {
      last_error_ = "cannot open " + path_;
    }
  }
  records_.push_back(std::move(record));
}

int ToolCallLog::next_step() {
  std::lock_guard lock(mutex_);
  return ++step_;
}

std::vector<ToolCallRecord> ToolCallLog::records() const {
  std::lock_guard lock(mutex_);
  return records_;
}

std::size_t ToolCallLog::record_count() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

std::string ToolCallLog::last_error() const {
  std::lock_guard lock(mutex_);
  return last_error_;
}

void ToolRegistry::add(ToolSpec spec) {
  std::string method = spec.method;
  tools_.insert_or_assign(std::move(method), std::move(spec));
}

const ToolSpec* ToolRegistry::find(const std::string& method) const {
  auto it = tools_.find(method);
  return it == tools_.end() ? nullptr : &it->second;
}

std::vector<std::string> ToolRegistry::methods() const {
  std::vector<std::string> out;
  out.reserve(tools_.size());
  for (const auto& [name, spec] : tools_) out.push_back(name);
  return out;
}

ValidatedCall validate_request(const RpcRequest& req, const ToolRegistry& registry) {
  const ToolSpec* tool = registry.find(req.method);
  if (tool == nullptr) {
    throw RpcFault(kMethodNotFound, "method not found: " + req.method);
  }

  json args = json::object();
  for (const auto& spec : tool->params) {
    if (req.params.contains(spec.name)) {
      const json& v = req.params[spec.name];
      if (!matches_type(v, spec.type)) {
        throw RpcFault(kInvalidParams, "parameter \"" + spec.name + "\" must be of type " +
                                            type_name(spec.type));
      }
      if (!spec.allowed.empty()) {
        bool ok = false;
        for (const auto& candidate : spec.allowed) ok = ok || candidate == v;
        if (!ok) {
          throw RpcFault(kInvalidParams,
                         "parameter \"" + spec.name + "\" is outside its enumeration");
        }
      }
      args[spec.name] = v;
    } else if (!spec.default_value.is_null()) {
      args[spec.name] = spec.default_value;
    } else if (spec.required) {
      throw RpcFault(kInvalidParams, "missing required parameter \"" + spec.name + "\"");
    }
  }

  for (auto it = req.params.begin(); it != req.params.end(); ++it) {
    bool known = false;
    for (const auto& spec : tool->params) known = known || spec.name == it.key();
    if (!known) {
      throw RpcFault(kInvalidParams, "unknown parameter \"" + it.key() + "\"");
    }
  }

  return ValidatedCall{tool, std::move(args)};
}

RpcResponse dispatch(const RpcRequest& req, const ToolRegistry& registry, ToolCallLog& log) {
  const auto start = std::chrono::steady_clock::now();
  ToolCallRecord record;
  record.step = log.next_step();
  record.tool = req.method;

  RpcResponse response;
  try {
    ValidatedCall call = validate_request(req, registry);
    if (!call.tool->query_param.empty() && call.args.contains(call.tool->query_param) &&
        call.args[call.tool->query_param].is_string()) {
      record.query = call.args[call.tool->query_param].get<std::string>();
    } else {
      record.query = call.args.dump();
    }
    ToolResult result = call.tool->handler(call.args);
    record.results = result.value;
    response = RpcResponse::success(req.id, std::move(result.value), result.uncertainty);
  } catch (const RpcFault& fault) {
    record.query = req.params.dump();
    record.results = fault.error.to_json();
    response = RpcResponse::failure(req.id, fault.error);
  } catch (const std::exception& e) {
    record.query = req.params.dump();
    RpcError err{kInternalError, e.what(), nullptr};
    record.results = err.to_json();
    response = RpcResponse::failure(req.id, err);
  }

  const auto end = std::chrono::steady_clock::now();
  record.latency_ms = std::chrono::duration<double, std::milli>(end - start).count();
  log.append(std::move(record));  // sink failures surface via log.last_error()
  return response;
}

}  // namespace chaindrift::mcp
