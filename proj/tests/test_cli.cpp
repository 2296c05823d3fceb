#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>

#include "json.hpp"
#include "wigner_lab/io.hpp"
#include "wigner_lab/smoothing.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace wigner_lab;

namespace {

const fs::path work = fs::temp_directory_path() / "wigner_lab_cli_test";

int run(const std::string& args) {
  const std::string cmd = "cd " + work.string() + " && " + WIGNER_LAB_CLI + " " + args + " > out.txt 2> err.txt";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json load(const std::string& name) {
  std::ifstream in(work / name);
  return json::parse(in);
}

std::string bytes(const std::string& name) {
  std::ifstream in(work / name, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct Workdir {
  Workdir() {
    fs::remove_all(work);
    fs::create_directories(work);
  }
};
const Workdir setup;

}  // namespace

TEST_CASE("wigner of the builtin Gaussian peaks at 2^{1/2}") {
  REQUIRE(run("wigner --builtin gaussian --n 256 --half-width 8 -o wf.bin") == 0);
  const io::FieldFile f = io::read_field(work / "wf.bin");
  CHECK(f.kind == "field2d");
  double peak = 0.0;
  for (const auto& v : f.samples) peak = std::max(peak, std::abs(v));
  CHECK(std::abs(peak - std::sqrt(2.0)) < 1e-6);
  CHECK(load("wf.bin.json")["provenance"]["builtin"] == "gaussian");
}

TEST_CASE("two Gaussians carry an interference ghost") {
  REQUIRE(run("wigner --builtin two-gaussians --n 256 --half-width 8 -o tg.bin") == 0);
  CHECK(load("tg.bin.ghost.json")["ghost_ratio_L2"].get<double>() > 0.2);
}

TEST_CASE("outputs are deterministic") {
  REQUIRE(run("husimi --builtin chirp --n 128 --half-width 6 -o h1.bin --csv h1.csv") == 0);
  REQUIRE(run("husimi --builtin chirp --n 128 --half-width 6 -o h2.bin --csv h2.csv") == 0);
  CHECK(bytes("h1.bin") == bytes("h2.bin"));
  CHECK(bytes("h1.csv") == bytes("h2.csv"));
  CHECK(bytes("h1.csv").rfind("x,xi,re,im\n", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run("wigner --builtin gaussian") == 2);
  CHECK(run("wigner --builtin nope -o x.bin") == 2);
  CHECK(bytes("err.txt").find("two-gaussians") != std::string::npos);
  CHECK(run("frobnicate") == 2);
  CHECK(run("kernel --phase '{\"family\":\"quadratic\",\"a\":1,\"b\":0,\"c\":1}' -o q") == 3);
  CHECK(bytes("err.txt").find("not tame") != std::string::npos);
  CHECK(run("kernel --phase '{\"family\":\"quadratic\",\"a\":1,\"b\":1,\"c\":0}' --route analytic -o q") == 3);
  CHECK(run("kernel --phase '{\"family\":\"cubic\"}' --route schwartz --n 128 -o big") == 4);
  CHECK(run("kernel --phase '{\"family\":' -o q") == 2);
  std::ofstream(work / "sig.bin") << "not a field";
  CHECK(run("wigner --input sig.bin -o s.bin") == 2);
}

TEST_CASE("config file fills unset flags, flags win") {
  std::ofstream(work / "cfg.json") << R"({"n": 64, "half_width": 4})";
  REQUIRE(run("stft --builtin gaussian --config cfg.json -o c1.bin") == 0);
  CHECK(load("c1.bin.json")["axes"][0]["n"] == 64);
  REQUIRE(run("stft --builtin gaussian --config cfg.json --n 32 -o c2.bin") == 0);
  CHECK(load("c2.bin.json")["axes"][0]["n"] == 32);
  CHECK(load("c2.bin.json")["axes"][0]["half_width"] == 4.0);
}

TEST_CASE("ghostbusters") {
  REQUIRE(run("ghostbusters --n 128 --half-width 8 -o gb") == 0);
  REQUIRE(run("ghostbusters --n 128 --half-width 8 --mask-width 2 -o gb2") == 0);
  const json a = load("gb.ghost.json"), b = load("gb2.ghost.json");
  CHECK(a["husimi"]["ghost_ratio_L2"].get<double>() < a["bessel_smoothed"]["ghost_ratio_L2"].get<double>());
  for (const char* f : {"husimi", "bessel_smoothed", "wigner_smooth_part"})
    for (const char* r : {"ghost_ratio_L1", "ghost_ratio_L2"}) CHECK(b[f][r].get<double>() <= a[f][r].get<double>());
  const json side = load("gb.wigner.bin.json");
  CHECK(side["kind"] == "field2d");
  CHECK(side["provenance"] == "closed-form");
  CHECK(side["ridges"].size() == 2);
  CHECK(load("gb.bessel.bin.json")["run"]["command"] == "ghostbusters");
}

TEST_CASE("free particle kernel with M = -2 exports the v_-2 profile") {
  REQUIRE(run("kernel --phase '{\"family\":\"free_particle\"}' --smoothing "
              "'{\"kind\":\"bessel\",\"M\":-2,\"axes\":[\"xi\",\"y\"]}' --n 12 --half-width 2 --max-samples 20000 -o fp") == 0);
  const json k = load("fp.analytic.json");
  REQUIRE(k["terms"].size() == 1);
  const json& t = k["terms"][0];
  CHECK(t["shift_poly_eta"][1] == 2.0);
  const Grid1D g = io::grid_from_json(t["position_profile"]["grid"]);
  for (std::size_t j : {8192u, 8200u, 8300u, 7000u}) {
    const double l = g.point(j);
    CHECK(std::abs(t["position_profile"]["re"][j].get<double>() - std::numbers::pi * std::exp(-2.0 * std::numbers::pi * std::abs(l))) < 1e-9);
    CHECK(std::abs(t["frequency_profile"]["re"][j].get<double>() - bessel_potential_exact(-2, l)) < 1e-12);
  }
  const json d = load("fp.analytic.decay.json");
  CHECK(d["N_list"].size() == 4);
  CHECK(d["seed"] == 20240601);
}

TEST_CASE("both routes write an agreement report") {
  REQUIRE(run("kernel --phase '{\"family\":\"free_particle\"}' --route both --n 32 --half-width 4 --N 1,2 --max-samples 20000 -o fb") == 0);
  CHECK(load("fb.agreement.json")["relative_error"].get<double>() < 1e-3);
  CHECK(io::read_field(work / "fb.schwartz.bin").kind == "kernel4d");
  CHECK(load("fb.schwartz.decay.json")["N_list"].size() == 2);
}

TEST_CASE("gabor and decay commands") {
  REQUIRE(run("gabor --phase '{\"family\":\"kohn_nirenberg\"}' --z 0,0 --z 1,0.5 --w 0,0 -o g.json") == 0);
  const json g = load("g.json");
  REQUIRE(g["entries"].size() == 2);
  // Identity with the 2^{-1/4} window: |G(z, z)|^2 = 1/4.
  CHECK(std::abs(g["entries"][0]["abs2"].get<double>() - 0.25) < 1e-9);
  CHECK(run("gabor --phase '{\"family\":\"kohn_nirenberg\"}' --z 0,0 -o g.json") == 2);

  REQUIRE(run("decay --phase '{\"family\":\"kohn_nirenberg\"}' --n 8 --half-width 4 --N 1,3 -o d.json") == 0);
  CHECK(load("d.json")["weighted_sup"].size() == 2);
}
