#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stdisc/io.hpp"

#include "cli.hpp"

namespace fs = std::filesystem;
using stdisc::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "stdisc");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("stdisc_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("disc subcommand") {
  const auto dir = fresh_dir("disc");
  auto r = invoke({"disc", "--p", "2,0,0,0", "--z", "0,0,0,0", "--out", dir.string()});
  CHECK(r.code == 0);
  const auto summary = read_json(dir / "disc_summary.json");
  CHECK(summary["pass"] == true);
  CHECK(summary["disc"]["R"].get<double>() == doctest::Approx(0.5));
  for (auto& [key, value] : summary["residuals"].items())
    if (key != "conormal_factor_min_real") CHECK(value.get<double>() <= 1e-14);
  const auto curve = slurp(dir / "disc_curve.csv");
  CHECK(curve.rfind("theta,z1_re,z1_im,z2_re,z2_im,zeta_re,zeta_im\n0,1,0,0,0,", 0) == 0);

  r = invoke({"disc", "--p", "2,0,2,0", "--z", "0.5,0,0,0", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(read_json(dir / "disc_summary.json")["disc"]["R"].get<double>() == doctest::Approx(0.36661).epsilon(1e-5));

  r = invoke({"disc", "--p", "0.5,0,0,0", "--z", "0,0,0,0", "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("p inside closed ball") != std::string::npos);

  CHECK(invoke({"disc", "--p", "2,0,2,0", "--z", "1,0,0,0", "--out", dir.string()}).code == 2);
  CHECK(invoke({"disc", "--p", "2,0,2", "--z", "0,0,0,0", "--out", dir.string()}).code == 2);
  CHECK(invoke({"disc", "--p", "2,0,2,0", "--z", "0,0,0,0", "--n", "100", "--out", dir.string()}).code == 2);
  CHECK(invoke({"disc", "--p", "2,0,2,0", "--z", "0,0,0,0", "--format", "json", "--out", dir.string()}).code == 0);
  CHECK(fs::exists(dir / "disc_curve.json"));
}

TEST_CASE("family subcommand") {
  const auto dir = fresh_dir("family");
  auto r = invoke({"family", "--p", "2,0,2,0", "--out", dir.string()});
  CHECK(r.code == 0);
  const auto csv = slurp(dir / "family_sweep.csv");
  CHECK(csv.rfind("t,diameter,dist_to_limit,center_sing_residual,max_attach_residual,neg_energy_z1,neg_energy_z2,"
                  "neg_energy_zeta\n0.125,",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 33);
  // First row: t = 1/|p|^2, singular residual in column 4.
  std::istringstream rows(csv);
  std::string header, first;
  std::getline(rows, header);
  std::getline(rows, first);
  std::vector<std::string> cols;
  std::stringstream ss(first);
  for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
  REQUIRE(cols.size() == 8);
  CHECK(std::stod(cols[3]) <= 1e-10);

  r = invoke({"family", "--p", "1,0,2,0", "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("p") != std::string::npos);
  CHECK(invoke({"family", "--p", "2,0,2,0", "--t-start", "0.05", "--out", dir.string()}).code == 2);
  CHECK(invoke({"family", "--p", "2,0,2,0", "--t-count", "4", "--amplitude", "0", "--out", dir.string()}).code != 0);

  r = invoke({"family", "--p", "2,0,2,0", "--t-count", "3", "--dump", "--format", "json", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(read_json(dir / "family_sweep.json")["rows"].size() == 3);
  CHECK(fs::exists(dir / "disc_t0.csv"));
  CHECK(fs::exists(dir / "disc_t2.csv"));
}

TEST_CASE("test-extension subcommand") {
  const auto dir = fresh_dir("ext");
  CHECK(invoke({"test-extension", "--f", "z1*z2", "--families", "all", "--out", dir.string()}).code == 0);
  const auto rep = read_json(dir / "extension_report.json");
  CHECK(rep["verdict"] == "pass");
  CHECK(rep["families"].size() == 3);

  CHECK(invoke({"test-extension", "--f", "z1*conj(z1)", "--families", "vertical,horizontal", "--out", dir.string()})
            .code == 0);
  CHECK(invoke({"test-extension", "--f", "z1*conj(z1)", "--families", "vertical,horizontal,throughpoint", "--p",
                "2,0,2,0", "--out", dir.string()})
            .code == 1);
  CHECK(read_json(dir / "extension_report.json")["verdict"] == "fail");

  auto r = invoke({"test-extension", "--f", "z1*(", "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("unbalanced parenthesis") != std::string::npos);
  CHECK(r.err.find("offset 3") != std::string::npos);

  CHECK(invoke({"test-extension", "--f", "z1", "--families", "diagonal", "--out", dir.string()}).code == 2);
  CHECK(invoke({"test-extension", "--f", "z1-z1", "--families", "vertical", "--out", dir.string()}).code == 3);

  r = invoke({"test-extension", "--f", "conj(z1)", "--families", "horizontal", "--format", "csv", "--out",
              dir.string()});
  CHECK(r.code == 1);
  CHECK(fs::exists(dir / "extension_horizontal.csv"));
}

TEST_CASE("config files and flag precedence") {
  const auto dir = fresh_dir("config");
  {
    std::ofstream cfg(dir / "ext.json");
    cfg << R"j({"f": "z1*conj(z1)", "families": ["vertical", "horizontal"], "grid": {"radial": 2, "angular": 3}})j";
  }
  CHECK(invoke({"test-extension", "--config", (dir / "ext.json").string(), "--out", dir.string()}).code == 0);
  const auto rep = read_json(dir / "extension_report.json");
  CHECK(rep["families"][0]["slices"].size() == 6);
  // Flag overrides config.
  CHECK(invoke({"test-extension", "--config", (dir / "ext.json").string(), "--f", "conj(z2)", "--out", dir.string()})
            .code == 1);

  {
    std::ofstream cfg(dir / "fam.json");
    cfg << R"j({"p": [2, 0, 2, 0], "t_grid": {"count": 4}, "bump": {"m": 6}})j";
  }
  CHECK(invoke({"family", "--config", (dir / "fam.json").string(), "--out", dir.string()}).code == 0);
  const auto csv = slurp(dir / "family_sweep.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  {
    std::ofstream cfg(dir / "bad.json");
    cfg << R"j({"p": "two"})j";
  }
  auto r = invoke({"family", "--config", (dir / "bad.json").string(), "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("p") != std::string::npos);
  CHECK(invoke({"family", "--config", (dir / "missing.json").string()}).code == 2);
}

TEST_CASE("hilbert subcommand") {
  const auto dir = fresh_dir("hilbert");
  {
    std::ofstream in(dir / "u.csv");
    in << "theta,re,im\n";
    for (int k = 0; k < 16; ++k) {
      const double t = 2 * std::numbers::pi * k / 16;
      in << stdisc::format_double(t) << "," << stdisc::format_double(std::cos(2 * t)) << ",0\n";
    }
  }
  CHECK(invoke({"hilbert", "--in", (dir / "u.csv").string(), "--out", dir.string()}).code == 0);
  const auto back = stdisc::read_samples_csv(slurp(dir / "hilbert.csv"));
  for (std::size_t k = 0; k < back.size(); ++k)
    CHECK(std::abs(back[k].real() - std::sin(2 * back.grid().theta(k))) <= 1e-13);

  {
    std::ofstream in(dir / "c.csv");
    in << "theta,re,im\n";
    for (int k = 0; k < 8; ++k) in << stdisc::format_double(2 * std::numbers::pi * k / 8) << ",1,1\n";
  }
  CHECK(invoke({"hilbert", "--in", (dir / "c.csv").string(), "--out", dir.string()}).code == 2);
  CHECK(invoke({"hilbert", "--out", dir.string()}).code == 2);
}

TEST_CASE("outputs are deterministic") {
  const auto a = fresh_dir("det_a");
  const auto b = fresh_dir("det_b");
  for (const auto& d : {a, b}) {
    invoke({"disc", "--p", "2,0,2,0", "--z", "0.5,0,0,0", "--out", d.string()});
    invoke({"family", "--p", "2,0,2,0", "--t-count", "6", "--out", d.string()});
    invoke({"test-extension", "--f", "z1*conj(z1)", "--out", d.string()});
  }
  for (const char* f : {"disc_curve.csv", "disc_summary.json", "family_sweep.csv", "extension_report.json"})
    CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"disc", "--bogus"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}
