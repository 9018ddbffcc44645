#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <doctest.h>

#include "defog/pnm.hpp"
#include "defog/targets.hpp"

using namespace defog;

namespace {

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("defog_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

std::string cli_path() {
  const char* p = std::getenv("DEFOG_CLI");
  return p != nullptr ? std::string(p) : std::string();
}

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CliResult run_cli(const std::string& args) {
  CliResult result;
  const std::string command = "\"" + cli_path() + "\" " + args + " 2>&1";
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_target(const std::filesystem::path& dir) {
  const std::filesystem::path path = dir / "target.pgm";
  save_pnm(path, make_letter_g(16), PnmFormat::P5, 255);
  return path.string();
}

// Flags that freeze the medium completely, so every frame is identical.
const char* kStaticScene =
    "--beta-sigma 0 --ambient-sigma 0 --no-shot-noise";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("binary is reachable via DEFOG_CLI") {
  REQUIRE_FALSE(cli_path().empty());
  REQUIRE(std::filesystem::exists(cli_path()));
}

TEST_CASE("help and version exit zero") {
  const CliResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("simulate") != std::string::npos);
  CHECK(help.output.find("pipeline") != std::string::npos);

  const CliResult version = run_cli("--version");
  CHECK(version.exit_code == 0);
  CHECK(version.output.find('.') != std::string::npos);

  const CliResult sub_help = run_cli("pipeline --help");
  CHECK(sub_help.exit_code == 0);
  CHECK(sub_help.output.find("--sweep") != std::string::npos);
}

TEST_CASE("usage errors exit one") {
  CHECK(run_cli("--nope").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);  // a subcommand is required
  CHECK(run_cli("metrics lonely.pgm").exit_code == 1);
  TempDir dir("cli_usage");
  const std::string target = write_target(dir.path);
  CHECK(run_cli("defog --in " + dir.path.string() + " --out " +
                (dir.path / "o").string() + " --algorithm quantum")
            .exit_code == 1);
}

TEST_CASE("validation errors exit one with a message") {
  TempDir dir("cli_frames");
  const std::string target = write_target(dir.path);
  const CliResult r =
      run_cli("simulate --target " + target + " --out " +
              (dir.path / "seq").string() + " --frames 1");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("simulate is reproducible for a fixed seed") {
  TempDir dir("cli_repro");
  const std::string target = write_target(dir.path);
  const std::string common = "simulate --target " + target +
                             " --frames 4 --seed 5 --out ";
  const CliResult a = run_cli(common + (dir.path / "a").string());
  const CliResult b = run_cli(common + (dir.path / "b").string());
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.output.find("wrote 4 frames") != std::string::npos);
  for (const char* name : {"frame_000000.pgm", "frame_000003.pgm",
                           "sequence.json"}) {
    CHECK(read_binary_file(dir.path / "a" / name) ==
          read_binary_file(dir.path / "b" / name));
  }
}

TEST_CASE("require-conditions turns a static scene into exit 2") {
  TempDir dir("cli_cond");
  const std::string target = write_target(dir.path);
  const std::string base = "simulate --target " + target + " --frames 4 " +
                           kStaticScene + " --out " +
                           (dir.path / "seq").string();
  CHECK(run_cli(base).exit_code == 0);  // reporting only
  const CliResult enforced = run_cli(base + "2 --require-conditions");
  CHECK(enforced.exit_code == 2);
  CHECK(enforced.output.find("VIOLATED") != std::string::npos);
}

TEST_CASE("conditions subcommand reports on an existing sequence") {
  TempDir dir("cli_conditions");
  const std::string target = write_target(dir.path);
  const std::string seq = (dir.path / "seq").string();
  REQUIRE(run_cli("simulate --target " + target + " --frames 6 --out " + seq)
              .exit_code == 0);
  const CliResult report = run_cli("conditions --in " + seq);
  CHECK(report.exit_code == 0);
  CHECK(report.output.find("condition (i)") != std::string::npos);
  CHECK(report.output.find("holds") != std::string::npos);

  const std::string frozen = (dir.path / "frozen").string();
  REQUIRE(run_cli("simulate --target " + target + " --frames 4 " +
                  kStaticScene + " --out " + frozen)
              .exit_code == 0);
  CHECK(run_cli("conditions --in " + frozen).exit_code == 0);
  CHECK(run_cli("conditions --require-conditions --in " + frozen).exit_code ==
        2);
  CHECK(run_cli("conditions --in " + (dir.path / "nowhere").string())
            .exit_code == 1);
}

TEST_CASE("metrics of a file against itself") {
  TempDir dir("cli_metrics");
  const std::string target = write_target(dir.path);
  const CliResult r = run_cli("metrics " + target + " " + target);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("algorithm,") != std::string::npos);
  CHECK(r.output.find("file,") != std::string::npos);
  CHECK(r.output.find(",inf,") != std::string::npos);  // psnr of identity

  const std::string out_csv = (dir.path / "m.csv").string();
  REQUIRE(run_cli("metrics " + target + " " + target + " --out " + out_csv)
              .exit_code == 0);
  CHECK(read_binary_file(out_csv).find(",inf,") != std::string::npos);
}

TEST_CASE("defog --config reproduces a previous run") {
  TempDir dir("cli_config");
  const std::string target = write_target(dir.path);
  const std::string seq = (dir.path / "seq").string();
  REQUIRE(run_cli("simulate --target " + target + " --frames 6 --out " + seq)
              .exit_code == 0);

  const std::string first = (dir.path / "r1").string();
  REQUIRE(run_cli("defog --in " + seq + " --out " + first +
                  " --algorithm pnc --pairing sliding")
              .exit_code == 0);
  const std::string second = (dir.path / "r2").string();
  REQUIRE(run_cli("defog --config " + first + "/run.json --out " + second)
              .exit_code == 0);
  CHECK(read_binary_file(first + "/recon.pgm") ==
        read_binary_file(second + "/recon.pgm"));
  CHECK(read_binary_file(first + "/recon_raw.pgm") ==
        read_binary_file(second + "/recon_raw.pgm"));
}

TEST_CASE("pipeline writes a report and exits by row status") {
  TempDir dir("cli_pipeline");
  const std::string target = write_target(dir.path);
  const std::string out = (dir.path / "sweep").string();
  const CliResult r = run_cli("pipeline --target " + target +
                              " --sweep 2,4 --seeds 1 --out " + out);
  REQUIRE(r.exit_code == 0);
  const std::string csv = read_binary_file(out + "/report.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 rows

  const std::string frozen = (dir.path / "frozen").string();
  CHECK(run_cli("pipeline --target " + target + " --sweep 2 " + kStaticScene +
                " --require-conditions --out " + frozen)
            .exit_code == 2);
}

}  // TEST_SUITE
