// test_cli.cpp - end-to-end runs of the corrsense binary: output, files, exit codes.
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <fstream>
#include <string>

#include "test_support.hpp"

using test_support::contains;
using test_support::make_temp_dir;
using test_support::read_file;
using test_support::run_cli;

TEST_SUITE("cli") {

TEST_CASE("version and help") {
  const auto version = run_cli("--version");
  CHECK(version.exit_code == 0);
  CHECK(contains(version.output, "0.1.0"));
  const auto help = run_cli("--help");
  CHECK(help.exit_code == 0);
  for (const char* sub : {"matrix", "qfi", "sweep", "verify"}) {
    CHECK_MESSAGE(contains(help.output, sub), "help misses " << sub);
  }
}

TEST_CASE("matrix summary and files") {
  const auto r = run_cli("matrix --n 3 --alpha 1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "full_sum 11\n"));
  CHECK(contains(r.output, "diag_sum 6\n"));
  CHECK(contains(r.output, "advantage_ratio 1.83333333333\n"));
  CHECK(contains(r.output, "min_eigenvalue 0.813859338365\n"));

  const std::string dir = make_temp_dir();
  const auto w = run_cli("matrix --n 3 --alpha 1 --out " + dir);
  CHECK(w.exit_code == 0);
  const std::string csv = read_file(dir + "/matrix.csv");
  CHECK(contains(csv, "2,1,0.5"));
  const auto manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
  CHECK(manifest["command"] == "matrix");
  CHECK(manifest["version"] == "0.1.0");
  CHECK(manifest["outputs"][0] == "matrix.csv");
  CHECK(manifest["parameters"]["n"] == 3);
}

TEST_CASE("qfi white noise rates") {
  const auto r = run_cli("qfi --n 3 --alpha 1 --state ghz");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "state_rate 1.375\n"));
  CHECK(contains(r.output, "separable_rate 0.75\n"));
  CHECK(contains(r.output, "entangled_rate 1.375\n"));
  CHECK(contains(r.output, "advantage_ratio 1.83333333333\n"));

  const auto t = run_cli("qfi --n 3 --alpha 1 --state plus-product --time 0.5");
  CHECK(t.exit_code == 0);
  CHECK(contains(t.output, "state_rate 0.75\n"));
  CHECK(contains(t.output, "qfi_at_time 0.274463633764\n"));

  const std::string dir = make_temp_dir();
  const auto w = run_cli("qfi --n 3 --alpha 1 --state ghz --out " + dir);
  CHECK(w.exit_code == 0);
  const auto result = nlohmann::json::parse(read_file(dir + "/qfi.json"));
  CHECK(result["entangled_rate"] == 1.375);
  CHECK(result["n"] == 3);
  const auto manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
  CHECK(manifest["command"] == "qfi");
  CHECK(manifest["outputs"][0] == "qfi.json");
}

TEST_CASE("qfi reads states from files") {
  const std::string dir = make_temp_dir();
  const std::string path = dir + "/plus.state";
  {
    std::ofstream out(path);
    out << "corrsense-state 1\n"
        << "0 0 0.5 0\n0 1 0.5 0\n1 0 0.5 0\n1 1 0.5 0\n";
  }
  const auto r = run_cli("qfi --n 1 --alpha 1 --state file:" + path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "state_rate 0.25\n"));

  const std::string mixed = dir + "/mixed.state";
  {
    std::ofstream out(mixed);
    out << "corrsense-state 1\n0 0 0.5 0\n1 1 0.5 0\n";
  }
  CHECK(run_cli("qfi --n 1 --alpha 1 --state file:" + mixed).exit_code == 2);
  CHECK(run_cli("qfi --n 1 --alpha 1 --state file:/nope/missing").exit_code == 2);
}

TEST_CASE("qfi colored spectrum branch") {
  const auto r = run_cli("qfi --n 2 --alpha 0.5 --p 1 --pulses hahn");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "pulses hahn"));
  CHECK(contains(r.output, "coefficient 0.110317800076\n"));
  CHECK(contains(r.output, "entangled_t_opt "));
  CHECK(contains(r.output, "advantage_ratio "));
  const auto decay = run_cli("qfi --n 2 --alpha 0.5 --p 1 --pulses hahn --time 0.5");
  CHECK(decay.exit_code == 0);
  CHECK(contains(decay.output, "extreme_coherence_decay "));
}

TEST_CASE("sweep output and files") {
  const std::string dir = make_temp_dir();
  const auto r = run_cli("sweep --alpha 0.5 --out " + dir);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "fit_exponent 0.508893705985\n"));
  CHECK(contains(r.output, "theoretical_kind power-law\n"));
  CHECK(contains(r.output, "exponent_match 1\n"));

  const std::string csv = read_file(dir + "/sweep.csv");
  CHECK(contains(csv, "n,ratio,t_opt,collapse\n"));
  int lines = 0;
  for (char ch : csv) lines += ch == '\n' ? 1 : 0;
  CHECK(lines == 10);  // header plus nine grid points
  const auto js = nlohmann::json::parse(read_file(dir + "/sweep.json"));
  CHECK(js["points"].size() == 9);
  CHECK(js["exponent_match"] == true);
  const auto manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
  CHECK(manifest["outputs"].size() == 2);
}

TEST_CASE("out directory comes from the environment when unset") {
  const std::string dir = make_temp_dir();
  const auto r = run_cli("matrix --n 3 --alpha 1", "CORRSENSE_OUT_DIR=" + dir + " ");
  CHECK(r.exit_code == 0);
  CHECK(contains(read_file(dir + "/manifest.json"), "\"matrix\""));
}

TEST_CASE("argument errors exit with code two") {
  CHECK(run_cli("matrix --alpha 1").exit_code == 2);                 // missing --n
  CHECK(run_cli("matrix --n 3 --alpha 1 --bogus").exit_code == 2);   // unknown flag
  CHECK(run_cli("sweep --alpha 0.5 --points 3").exit_code == 2);     // grid too coarse
  CHECK(run_cli("qfi --n 2 --alpha 0.5 --p 1 --pulses nope").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("model errors exit with code three") {
  const auto r = run_cli("matrix --n 64 --alpha 0.2 --diag-scale 0.2");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.output, "model error"));
  CHECK(run_cli("qfi --n 10 --alpha 0.1 --diag-scale 0.5").exit_code == 3);
}

TEST_CASE("regime errors exit with code four") {
  const auto pole = run_cli("qfi --n 2 --alpha 1 --p 1 --pulses fid");
  CHECK(pole.exit_code == 4);
  CHECK(contains(pole.output, "regime error"));
  CHECK(run_cli("qfi --n 2 --alpha 1 --p 3 --pulses hahn").exit_code == 4);
}

TEST_CASE("stdout is deterministic") {
  const auto a = run_cli("matrix --n 5 --alpha 0.7");
  const auto b = run_cli("matrix --n 5 --alpha 0.7");
  CHECK(a.output == b.output);
  const auto s1 = run_cli("sweep --alpha 1");
  const auto s2 = run_cli("sweep --alpha 1");
  CHECK(s1.output == s2.output);
}

TEST_CASE("verify suite reruns bit identically") {
  const auto a = run_cli("verify --suite filter --seed 99");
  CHECK(a.exit_code == 0);
  CHECK(contains(a.output, "suite filter: 8/8 passed"));
  CHECK(contains(a.output, "[ok]"));
  const auto b = run_cli("verify --suite filter --seed 99");
  CHECK(a.output == b.output);
}

TEST_CASE("verify is thread count invariant") {
  const auto one = run_cli("verify --suite mc-white --seed 7 --threads 1");
  const auto four = run_cli("verify --suite mc-white --seed 7 --threads 4");
  CHECK(one.exit_code == 0);
  CHECK(four.exit_code == 0);
  CHECK(one.output == four.output);
}

TEST_CASE("verify writes a report") {
  const std::string dir = make_temp_dir();
  const auto r = run_cli("verify --suite filter --seed 3 --out " + dir);
  CHECK(r.exit_code == 0);
  const auto js = nlohmann::json::parse(read_file(dir + "/verify.json"));
  REQUIRE(js.is_array());
  CHECK(js.size() == 8);
  for (const auto& entry : js) {
    CHECK(entry["suite"] == "filter");
    CHECK(entry["pass"] == true);
  }
  const auto manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
  CHECK(manifest["seed"] == 3);
}

}  // TEST_SUITE
