#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* path = std::getenv("CHAINDRIFT_CLI");
  REQUIRE_MESSAGE(path != nullptr, "CHAINDRIFT_CLI must point at the built binary");
  return path;
}

struct CommandResult {
  int exit_code = -1;
  std::string stdout_text;
};

CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t n;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.stdout_text.append(buffer, n);
  }
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("chaindrift_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

}  // namespace

TEST_CASE("horizon prints the pinned integer") {
  const auto result = run_command(cli_path() + " horizon --beta 0.7 --epsilon 0.05 2>/dev/null");
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text == "9\n");
}

TEST_CASE("bounds prints the calibration values as JSON") {
  const auto result =
      run_command(cli_path() + " bounds --alpha 1 --beta 0.7 --B 1 --T 10 2>/dev/null");
  REQUIRE(result.exit_code == 0);
  const auto j = json::parse(result.stdout_text);
  CHECK(std::abs(j["gamma_hat"].get<double>() - 0.096) < 0.0005);
  CHECK(std::abs(j["gamma_star"].get<double>() - 17.78) < 0.05);
  CHECK(j["horizon"] == 9);
  CHECK(std::abs(j["c_star"].get<double>() - 4.3333) < 1e-3);
}

TEST_CASE("bounds rejects out-of-domain parameters with exit 1") {
  const auto result = run_command(cli_path() + " bounds --beta 1.5 2>/dev/null");
  CHECK(result.exit_code == 1);
}

TEST_CASE("measure of a file against itself is zero distortion") {
  TempDir tmp;
  const auto file = tmp.path / "same.txt";
  std::ofstream(file) << "The capital city of France is Paris.\n";

  const auto result = run_command(cli_path() + " measure " + file.string() + " " + file.string() +
                                  " 2>/dev/null");
  REQUIRE(result.exit_code == 0);
  const auto j = json::parse(result.stdout_text);
  CHECK(j["d_sem"] == 0.0);
  CHECK(j["d_set"] == 0.0);
  CHECK(j["d_emb"] == 0.0);

  const auto missing = run_command(cli_path() + " measure /no/such/file.txt " + file.string() +
                                   " 2>/dev/null");
  CHECK(missing.exit_code == 1);
}

TEST_CASE("measure honors --lambda") {
  TempDir tmp;
  const auto ref = tmp.path / "ref.txt";
  const auto obs = tmp.path / "obs.txt";
  std::ofstream(ref) << "The capital city of France is Paris.\n";
  std::ofstream(obs) << "The binomial theorem was formulated by isaac newton.\n";

  const auto at0 = run_command(cli_path() + " measure " + ref.string() + " " + obs.string() +
                               " --lambda 0 2>/dev/null");
  const auto j0 = json::parse(at0.stdout_text);
  CHECK(j0["d_sem"] == j0["d_set"]);

  const auto at1 = run_command(cli_path() + " measure " + ref.string() + " " + obs.string() +
                               " --lambda 1 2>/dev/null");
  const auto j1 = json::parse(at1.stdout_text);
  CHECK(j1["d_sem"] == j1["d_emb"]);
}

TEST_CASE("run executes a small baseline and writes artifacts") {
  TempDir tmp;
  const auto result = run_command(cli_path() + " run --track baseline --chains 3 --seed 5 --out " +
                                  tmp.path.string() + " 2>/dev/null");
  REQUIRE(result.exit_code == 0);
  const auto summary = json::parse(result.stdout_text);
  CHECK(summary["track"] == "baseline");
  CHECK(fs::exists(tmp.path / "results_bundled" / "baseline" / "traces.jsonl"));
  CHECK(fs::exists(tmp.path / "results_bundled" / "baseline" / "summary.json"));

  const auto unknown =
      run_command(cli_path() + " run --track bogus --out " + tmp.path.string() + " 2>/dev/null");
  CHECK(unknown.exit_code == 1);
}

TEST_CASE("run accepts a config file with strict keys") {
  TempDir tmp;
  const auto cfg = tmp.path / "run.json";
  std::ofstream(cfg) << R"({"track": "baseline", "chains": 2, "seed": 9, "out_dir": ")"
                     << tmp.path.string() << R"("})";

  const auto ok = run_command(cli_path() + " run --track baseline --config " + cfg.string() +
                              " 2>/dev/null");
  CHECK(ok.exit_code == 0);

  const auto bad_cfg = tmp.path / "bad.json";
  std::ofstream(bad_cfg) << R"({"track": "baseline", "zzz": 1})";
  const auto bad = run_command(cli_path() + " run --track baseline --config " + bad_cfg.string() +
                               " 2>/dev/null");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("diagnose reports autocorrelation and assumption checks") {
  TempDir tmp;
  const auto run = run_command(cli_path() + " run --track baseline --chains 30 --seed 3 --out " +
                               tmp.path.string() + " 2>/dev/null");
  REQUIRE(run.exit_code == 0);

  const auto result = run_command(cli_path() + " diagnose --traces " + tmp.path.string() +
                                  " 2>/dev/null");
  REQUIRE(result.exit_code == 0);
  const auto j = json::parse(result.stdout_text);
  CHECK(j.contains("beta_hat"));
  CHECK(j["autocorrelation"]["lags"].size() == 9);  // K capped at T-1
  CHECK(j["assumption_checks"]["all_pass"] == true);

  const auto missing = run_command(cli_path() + " diagnose --traces /no/such/dir 2>/dev/null");
  CHECK(missing.exit_code == 1);
}

TEST_CASE("gen-data writes corpus, sidecar, and snapshots") {
  TempDir tmp;
  const auto result =
      run_command(cli_path() + " gen-data --out " + tmp.path.string() + " 2>/dev/null");
  REQUIRE(result.exit_code == 0);
  CHECK(fs::exists(tmp.path / "knowledge_corpus.jsonl"));
  CHECK(fs::exists(tmp.path / "knowledge_corpus.jsonl.emb"));
  CHECK(fs::exists(tmp.path / "market_snapshots.json"));

  const auto snapshot = json::parse(std::ifstream(tmp.path / "market_snapshots.json"));
  CHECK(snapshot["prices"].contains("AAPL"));
  CHECK(snapshot["prices"]["AAPL"].contains("2024-01-15"));
}

TEST_CASE("serve --stdio answers the wire example and survives garbage") {
  TempDir tmp;
  const std::string log = (tmp.path / "tool_calls.jsonl").string();
  const std::string script =
      R"({"jsonrpc":"2.0","method":"get_stock_price","params":{"symbol":"AAPL"},"id":1,"context":{"session_id":"abc123"}})"
      "\\nnot json at all\\n"
      R"({"jsonrpc":"2.0","method":"get_stock_trend","params":{"symbol":"TSLA","days":10},"id":2})";

  const auto result = run_command("printf '" + script + "\\n' | " + cli_path() +
                                  " serve --stdio --log " + log + " 2>/dev/null");
  REQUIRE(result.exit_code == 0);

  std::istringstream lines(result.stdout_text);
  std::string line;
  REQUIRE(std::getline(lines, line));
  const auto first = json::parse(line);
  CHECK(first["id"] == 1);
  CHECK(first["result"].contains("price"));
  CHECK(first["uncertainty"] == 0.01);

  REQUIRE(std::getline(lines, line));
  CHECK(json::parse(line)["error"]["code"] == -32700);

  REQUIRE(std::getline(lines, line));
  const auto third = json::parse(line);
  CHECK(third["id"] == 2);
  CHECK(third["result"].contains("trend"));

  // two dispatched calls -> two log lines
  std::ifstream log_in(log);
  int log_lines = 0;
  while (std::getline(log_in, line)) ++log_lines;
  CHECK(log_lines == 2);
}
