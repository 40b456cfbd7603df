// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  json j() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "specpoint");
  std::ostringstream out, err;
  Result r;
  r.code = specpoint::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "specpoint_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("spec1d exact") {
  const auto r = run({"spec1d", "--fn", "sqrt_abs", "--point", "0", "--exact"});
  REQUIRE(r.code == 0);
  const auto j = r.j();
  CHECK(j["sigma"] == "(-inf,+inf)");
  CHECK(j["Sigma"] == "[]");
  CHECK(j["dini"]["d_plus_low"] == "inf");
  CHECK(j["dini"]["d_minus_low"] == "-inf");
}

TEST_CASE("spec1d numeric") {
  const auto r = run({"spec1d", "--fn", "abs", "--numeric", "--h0", "0.1", "--ratio", "0.6", "--steps", "60"});
  REQUIRE(r.code == 0);
  const auto j = r.j();
  CHECK(j["mode"] == "numeric");
  CHECK(j["Sigma"] == "[-1,-1] U [1,1]");
  CHECK(j["sigma"] == "[-1,1]");
  CHECK(run({"spec1d", "--fn", "abs", "--steps", "3"}).code == 2);
  CHECK(run({"spec1d", "--fn", "abs_re_plus_i_im"}).code == 3);
}

TEST_CASE("spec2d degenerate curve and CSV") {
  const auto csv = scratch("linear.csv");
  const auto r = run({"spec2d", "--fn", "real_linear", "--params", "1,-2,2,1", "--csv", csv.string()});
  REQUIRE(r.code == 0);
  const auto j = r.j();
  CHECK(j["curve"]["degenerate"] == true);
  REQUIRE(j["curve"]["points"].size() == 1);
  CHECK(std::abs(j["curve"]["points"][0][0].get<double>() - 1.0) < 1e-12);
  CHECK(std::abs(j["curve"]["points"][0][1].get<double>() - 2.0) < 1e-12);
  const std::string text = slurp(csv);
  CHECK(text.rfind("theta,a,b\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + j["curve"]["samples"].get<int>());
}

TEST_CASE("spec2d values") {
  const auto j = run({"spec2d", "--fn", "half_abs_re_plus_i_im"}).j();
  CHECK(j["d"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(j["q"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["radius_bound"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(run({"spec2d", "--fn", "norm_plus_i_im_pow", "--params", "2"}).code == 3);
  CHECK(run({"spec2d", "--fn", "nonexistent"}).code == 2);
}

TEST_CASE("classify unit disk area and SVG") {
  const auto svg = scratch("disk.svg");
  const auto r = run({"classify", "--fn", "abs_re_plus_i_im", "--res", "200", "--svg", svg.string()});
  REQUIRE(r.code == 0);
  const auto j = r.j();
  CHECK(std::abs(j["sigma_area_estimate"].get<double>() - std::numbers::pi) <= 0.03 * std::numbers::pi);
  CHECK(j["band_violations"] == 0);
  const std::string text = slurp(svg);
  CHECK(text.find("<g id=\"curve\"") != std::string::npos);
  CHECK(text.find("<g id=\"region\"") != std::string::npos);
}

TEST_CASE("shift command") {
  const auto r = run({"shift", "--truncate", "60", "--lambda", "2,0", "--xi-eps", "0.1"});
  REQUIRE(r.code == 0);
  const auto j = r.j();
  CHECK(j["analytic"]["d"].get<double>() == std::numbers::sqrt2);
  CHECK(j["analytic"]["sigma_omega"]["radius"].get<double>() == 1.0);
  CHECK(j["at_lambda"]["index"] == 0);
  CHECK(j["at_lambda"]["v_norm_sq"].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(j["at_lambda"]["xi_equation"]["solvable"] == true);
  CHECK(j["at_lambda"]["truncation"]["min_residual"].get<double>() >= 0.4);
  const auto on = run({"shift", "--lambda", "0.6,0.8"}).j();
  CHECK(on["at_lambda"]["index"].is_null());
  CHECK(on["at_lambda"]["truncation"]["reliable"] == false);
}

TEST_CASE("mnc command") {
  const auto j = run({"mnc", "--expr", "isometry(1) + compact"}).j();
  CHECK(j["alpha"] == json::array({1.0, 1.0}));
  CHECK(j["omega"] == json::array({1.0, 1.0}));
  CHECK(j["q"][1] == "inf");
  CHECK(j["derivation"].size() >= 3);
  CHECK(run({"mnc", "--expr", "isometry(1) +"}).code == 2);
  CHECK(run({"mnc"}).code == 2);
}

TEST_CASE("bifurcate command") {
  const auto j = run({"bifurcate", "--fn", "identity", "--grid", "-2,2,-2,2,9,9"}).j();
  REQUIRE(j["candidate_count"] == 1);
  CHECK(j["candidates"][0]["lambda"] == json::array({1.0, 0.0}));
  const auto s = run({"bifurcate", "--shift", "--perturbation", "norm_sq_e1", "--grid", "1.2,1.4142135623730951,0,0,2,1"}).j();
  REQUIRE(s["points"].size() == 2);
  CHECK(s["points"][0]["verdict"] == "rejected");
  CHECK(s["points"][1]["verdict"] == "candidate");
  CHECK(run({"bifurcate", "--grid", "0,1,0,1,2,2"}).code == 2);
  CHECK(run({"bifurcate", "--fn", "identity", "--grid", "0,1,0,1"}).code == 2);
}

TEST_CASE("identical arguments give byte-identical outputs") {
  std::vector<std::string> json, csv, svg;
  for (int k = 0; k < 2; ++k) {
    const auto out = scratch("det.json");
    const auto cls = scratch("cls.json");
    REQUIRE(run({"spec2d", "--fn", "norm_plus_i_im", "--out", out.string(), "--seed", "7"}).code == 0);
    REQUIRE(run({"classify", "--fn", "half_abs_re_plus_i_im", "--res", "50", "--out", cls.string()}).code == 0);
    json.push_back(slurp(out));
    csv.push_back(slurp(scratch("det.csv")));
    svg.push_back(slurp(scratch("cls.svg")));
    fs::remove(out);
    fs::remove(scratch("det.csv"));
    fs::remove(scratch("cls.svg"));
  }
  CHECK(json[0] == json[1]);
  CHECK(csv[0] == csv[1]);
  CHECK(svg[0] == svg[1]);
  CHECK_FALSE(json[0].empty());
  const auto a = run({"bifurcate", "--fn", "half_abs_re_plus_i_im", "--grid", "-1,1,-1,1,5,5", "--seed", "3"});
  const auto b = run({"bifurcate", "--fn", "half_abs_re_plus_i_im", "--grid", "-1,1,-1,1,5,5", "--seed", "3"});
  CHECK(a.out == b.out);
}

TEST_CASE("config file with flag override") {
  const auto cfg = scratch("run.ini");
  {
    std::ofstream f(cfg);
    f << "[spec1d]\nfn = abs\npoint = 2\n";
  }
  const auto j = run({"--config", cfg.string(), "spec1d"}).j();
  CHECK(j["map"]["name"] == "abs");
  CHECK(j["point"].get<double>() == 2.0);
  const auto k = run({"--config", cfg.string(), "spec1d", "--point", "-1"}).j();
  CHECK(k["point"].get<double>() == -1.0);
  CHECK(k["sigma"] == "[-1,-1]");
}

TEST_CASE("help and unknown commands") {
  const auto h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("Operator expression syntax") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}
