#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;
using crtvss::testing::Expect;
using crtvss::testing::RunCase;

std::string g_binary;
fs::path g_workdir;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult Run(const std::string& args) {
  const fs::path out_path = g_workdir / "stdout.txt";
  const std::string command =
      g_binary + " " + args + " > " + out_path.string() + " 2> /dev/null";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.stdout_text = buffer.str();
  return result;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFixtureParams(const fs::path& path) {
  std::ofstream out(path);
  out << R"({"version":1,"m0":"7","moduli":["35","53","59"],)"
      << R"("verif_primes":["6b","a7","b3"],"t":2,"n":3})";
}

void TestGenParams() {
  const fs::path out_a = g_workdir / "params_a.json";
  const fs::path out_b = g_workdir / "params_b.json";
  Expect(Run("gen-params --t 2 --n 3 --seed 42 --out " + out_a.string()).exit_code == 0,
         "gen-params succeeds");
  Expect(Run("gen-params --t 2 --n 3 --seed 42 --out " + out_b.string()).exit_code == 0,
         "second run succeeds");
  Expect(ReadFile(out_a) == ReadFile(out_b), "same seed, identical file");

  Expect(Run("gen-params --t 3 --n 2 --seed 1").exit_code == 2, "t > n exits 2");
}

void TestSplitVerifyCombine() {
  const fs::path params = g_workdir / "params.json";
  WriteFixtureParams(params);

  const RunResult split = Run("split --params " + params.string() +
                              " --secret 5 --mask-a 100 --seed 7 --out-dir " +
                              g_workdir.string());
  Expect(split.exit_code == 0, "split succeeds");
  Expect(split.stdout_text.find("\"10\"") != std::string::npos, "share 1 value 16");

  const std::string share1 = (g_workdir / "share_1.json").string();
  const std::string share2 = (g_workdir / "share_2.json").string();
  const std::string share3 = (g_workdir / "share_3.json").string();
  const std::string bulletin = (g_workdir / "bulletin.json").string();

  Expect(Run("verify --share " + share1 + " --bulletin " + bulletin).exit_code == 0,
         "honest share verifies");

  for (const std::string& pair : {share1 + " --share " + share2,
                                  share1 + " --share " + share3,
                                  share2 + " --share " + share3}) {
    const RunResult combine = Run("combine --params " + params.string() + " --share " + pair +
                                  " --bulletin " + bulletin);
    Expect(combine.exit_code == 0, "combine succeeds");
    Expect(combine.stdout_text.find("\"secret\":\"5\"") != std::string::npos,
           "every coalition recovers 5");
  }

  // Tamper with share 2 on disk: verification exits 3 and names the index.
  std::string tampered = ReadFile(share2);
  const size_t pos = tampered.find("\"value\": \"29\"");
  Expect(pos != std::string::npos, "fixture share value present");
  tampered.replace(pos, 13, "\"value\": \"2a\"");
  const fs::path bad = g_workdir / "share_2_bad.json";
  std::ofstream(bad) << tampered;

  const RunResult bad_verify = Run("verify --share " + bad.string() + " --bulletin " + bulletin);
  Expect(bad_verify.exit_code == 3, "tampered share exits 3");
  Expect(bad_verify.stdout_text.find("index 2") != std::string::npos, "bad index named");

  Expect(Run("combine --params " + params.string() + " --share " + share1 + " --share " +
             bad.string() + " --bulletin " + bulletin)
                 .exit_code == 3,
         "combine rejects the tampered share");
}

void TestDemoAuth() {
  const RunResult result = Run("demo-auth --seed 4");
  Expect(result.exit_code == 0, "demo-auth passes");
  Expect(result.stdout_text.find("\"verdict\":\"PASS\"") != std::string::npos, "verdict PASS");
}

void TestDemoSign() {
  const RunResult a = Run("demo-sign --seed 11");
  const RunResult b = Run("demo-sign --seed 11");
  Expect(a.exit_code == 0, "demo-sign succeeds");
  Expect(a.stdout_text == b.stdout_text, "fixed seed gives a stable signature");
  Expect(a.stdout_text.find("\"r\":") != std::string::npos &&
             a.stdout_text.find("\"s\":") != std::string::npos,
         "signature fields present");

  Expect(Run("demo-sign --seed 11 --inject tamper-sig-share").exit_code == 4,
         "tampered signature share exits 4");
  Expect(Run("demo-sign --seed 11 --inject tamper-nonce-share").exit_code == 4,
         "tampered nonce share exits 4");
  Expect(Run("demo-sign --seed 11 --inject bogus").exit_code == 2, "unknown inject exits 2");
}

void TestAttack() {
  Expect(Run("attack --scenario replay-alpha-beta --seed 3").exit_code == 0,
         "replay scenario verdict as expected");
  const RunResult replay = Run("attack --scenario replay-alpha-beta --seed 3");
  Expect(replay.stdout_text.find("ATTACK_FAILED") != std::string::npos, "ATTACK_FAILED");

  const RunResult cheat = Run("attack --scenario cheat-participant --seed 5");
  Expect(cheat.exit_code == 0 &&
             cheat.stdout_text.find("CHEAT_BLOCKED") != std::string::npos,
         "cheating participant blocked");

  Expect(Run("attack --scenario nope --seed 1").exit_code == 2, "unknown scenario exits 2");

  const RunResult again = Run("attack --scenario replay-alpha-beta --seed 3");
  Expect(again.stdout_text == replay.stdout_text, "attack transcript reproducible");
}

void TestConfigFile() {
  // Option defaults can come from a config file; command-line flags win.
  const fs::path config = g_workdir / "cli.toml";
  std::ofstream(config) << "[gen-params]\nt = 2\nn = 3\nseed = 42\n";
  const RunResult from_config = Run("--config " + config.string() + " gen-params");
  const RunResult from_flags = Run("gen-params --t 2 --n 3 --seed 42");
  Expect(from_config.exit_code == 0, "config file accepted");
  Expect(from_config.stdout_text == from_flags.stdout_text, "config equals explicit flags");

  const RunResult overridden =
      Run("--config " + config.string() + " gen-params --seed 43");
  Expect(overridden.stdout_text != from_config.stdout_text, "flags override the config");
}

void TestBenchCompare() {
  const RunResult result = Run("bench-compare --t-values 2,4,8 --seed 3");
  Expect(result.exit_code == 0, "bench succeeds");
  Expect(result.stdout_text.rfind("scheme,t,mult_count\n", 0) == 0, "CSV header first");
  Expect(result.stdout_text.find("crt,2,") != std::string::npos &&
             result.stdout_text.find("shamir,8,") != std::string::npos,
         "rows for both schemes");

  const RunResult empty = Run("bench-compare --seed 3");
  Expect(empty.stdout_text == "scheme,t,mult_count\n", "empty t list gives header only");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-crtvss-binary>\n";
    return 2;
  }
  g_binary = argv[1];
  g_workdir = fs::temp_directory_path() / "crtvss_cli_tests";
  fs::remove_all(g_workdir);
  fs::create_directories(g_workdir);

  RunCase("gen_params", TestGenParams);
  RunCase("split_verify_combine", TestSplitVerifyCombine);
  RunCase("demo_auth", TestDemoAuth);
  RunCase("demo_sign", TestDemoSign);
  RunCase("attack", TestAttack);
  RunCase("config_file", TestConfigFile);
  RunCase("bench_compare", TestBenchCompare);
  return crtvss::testing::Summary("cli_tests");
}
