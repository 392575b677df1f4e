// Acceptance harness: drives the CLI end to end, prints one PASS/FAIL line
// per acceptance criterion, and exits nonzero on any failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef HYPOHEAT_CLI_PATH
#error "HYPOHEAT_CLI_PATH must be defined"
#endif

namespace {

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Line {
  int id;
  bool pass;
  std::string name;
};

}  // namespace

int main() {
  const std::string cli = HYPOHEAT_CLI_PATH;
  bool overall = true;

  // Exit-code contract: no subcommand is a usage error, a clean verification
  // run exits 0.
  {
    const int usage = run_command("\"" + cli + "\" > acceptance_usage.log 2>&1");
    const int ok = run_command("\"" + cli +
                               "\" verify commutation --model su2 --eps 1 > acceptance_verify.log 2>&1");
    if (usage != 2 || ok != 0) {
      std::cout << "[pre] FAIL cli exit-code contract (usage=" << usage << ", verify=" << ok
                << ")\n";
      overall = false;
    } else {
      std::cout << "[pre] PASS cli exit-code contract\n";
    }
  }

  // Config round-trip: the echoed config reproduces identical results.
  {
    const std::string flags =
        " check poincare --model heisenberg --f x --t 1 --eps 1 --paths 4000 --steps 100"
        " --seed 42 --json";
    const int first = run_command("\"" + cli + "\"" + flags + " > acceptance_rt1.json 2>/dev/null");
    bool ok = first == 0;
    if (ok) {
      try {
        const auto doc = nlohmann::json::parse(read_file("acceptance_rt1.json"));
        std::ofstream cfg("acceptance_rt.cfg", std::ios::binary);
        cfg << doc["config"].dump();
        cfg.close();
        const int second = run_command("\"" + cli +
                                       "\" check poincare --config acceptance_rt.cfg --json"
                                       " > acceptance_rt2.json 2>/dev/null");
        const auto doc2 = nlohmann::json::parse(read_file("acceptance_rt2.json"));
        ok = second == 0 && doc["result"].dump() == doc2["result"].dump();
      } catch (const std::exception&) {
        ok = false;
      }
    }
    // An empty config cannot select a subcommand: usage error.
    { std::ofstream empty("acceptance_empty.cfg", std::ios::binary); }
    const int usage =
        run_command("\"" + cli + "\" --config acceptance_empty.cfg > /dev/null 2>&1");
    ok = ok && usage == 2;
    std::cout << "[pre] " << (ok ? "PASS" : "FAIL") << " config round-trip and empty-config usage\n";
    overall = overall && ok;
  }

  const std::string seed = "20250810";
  const int code_a = run_command("\"" + cli + "\" selftest --seed " + seed +
                                 " --threads 8 --out acceptance_a.json > acceptance_a.log 2>&1");
  const int code_b = run_command("\"" + cli + "\" selftest --seed " + seed +
                                 " --threads 1 --out acceptance_b.json > acceptance_b.log 2>&1");

  const std::string bytes_a = read_file("acceptance_a.json");
  const std::string bytes_b = read_file("acceptance_b.json");
  if (bytes_a.empty() || bytes_b.empty()) {
    std::cout << "[ 0/10] FAIL selftest did not produce reports (exit " << code_a << ", " << code_b
              << ")\n";
    return 1;
  }

  nlohmann::json report;
  try {
    report = nlohmann::json::parse(bytes_a);
  } catch (const std::exception& e) {
    std::cout << "[ 0/10] FAIL selftest report is not valid JSON: " << e.what() << "\n";
    return 1;
  }

  bool probes_pass = true;
  for (int id = 1; id <= 9; ++id) {
    bool pass = false;
    std::string name = "?";
    for (const auto& check : report["checks"]) {
      if (check["id"] == id) {
        pass = check["pass"].get<bool>();
        name = check["name"].get<std::string>();
      }
      if (check["id"] == 10) probes_pass = check["pass"].get<bool>();
    }
    std::printf("[%2d/10] %s %s\n", id, pass ? "PASS" : "FAIL", name.c_str());
    overall = overall && pass;
  }

  const bool bytes_equal = bytes_a == bytes_b;
  const bool determinism = bytes_equal && probes_pass && code_a == code_b;
  std::printf("[10/10] %s byte-identical selftest reports across thread counts\n",
              determinism ? "PASS" : "FAIL");
  if (!bytes_equal) std::cout << "        reports differ between threads=8 and threads=1\n";
  if (!probes_pass) std::cout << "        in-process determinism probe failed\n";
  overall = overall && determinism;

  std::cout << (overall ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL") << "\n";
  return overall ? 0 : 1;
}
