#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "stdisc/circle.hpp"
#include "stdisc/expr.hpp"
#include "stdisc/extension.hpp"
#include "stdisc/family.hpp"
#include "stdisc/geometry.hpp"
#include "stdisc/io.hpp"

namespace stdisc::cli {

namespace {

using nlohmann::json;

/// A rejected configuration; the message names the offending field.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& field, const std::string& msg) : std::runtime_error(field + ": " + msg) {}
};

struct Common {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  json config = json::object();

  void load() {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw ConfigError("--config", "cannot open '" + config_path + "'");
    try {
      config = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
    if (!config.is_object()) throw ConfigError("--config", "top level must be a JSON object");
  }

  bool has(const char* key) const { return config.contains(key); }

  template <class T>
  T get(const json& node, const std::string& field) const {
    try {
      return node.get<T>();
    } catch (const json::exception&) {
      throw ConfigError("config field '" + field + "'", "has the wrong type");
    }
  }

  void write(const std::string& name, const std::string& content) const {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const auto path = std::filesystem::path(out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("--out", "cannot write '" + path.string() + "'");
    f << content;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "JSON configuration file");
  sub->add_option("--out", c.out_dir, "output directory")->capture_default_str();
  sub->add_option("--format", c.format, "tabular output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

Point2 point_from_text(const std::string& text, const std::string& field) {
  std::vector<double> v;
  try {
    v = parse_number_list(text, field);
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
  if (v.size() != 4) throw ConfigError(field, "expected four numbers re1,im1,re2,im2");
  return {{v[0], v[1]}, {v[2], v[3]}};
}

/// Flag value if given, else config value, else fallback.
Point2 resolve_point(const Common& c, const CLI::Option* opt, const std::string& flag_text, const char* key,
                     std::optional<Point2> fallback) {
  if (opt->count() > 0) return point_from_text(flag_text, opt->get_name());
  if (c.has(key)) {
    try {
      return point_from_json(c.config.at(key));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config field '") + key + "'", e.what());
    }
  }
  if (fallback) return *fallback;
  throw ConfigError(opt->get_name(), "is required");
}

template <class T>
T resolve(const Common& c, const CLI::Option* opt, const T& flag_value, const char* key) {
  if (opt->count() == 0 && c.has(key)) return c.get<T>(c.config.at(key), key);
  return flag_value;
}

ExteriorPoint exterior(Point2 p, const std::string& field) {
  try {
    return ExteriorPoint(p);
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

CircleGrid grid_of(std::size_t n, const std::string& field) {
  try {
    return CircleGrid(n);
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- disc

struct DiscArgs {
  Common common;
  std::string p, z;
  std::size_t n = 256;
  CLI::Option *p_opt{}, *z_opt{}, *n_opt{};
};

int run_disc(DiscArgs& a, std::ostream& out) {
  a.common.load();
  const auto p = exterior(resolve_point(a.common, a.p_opt, a.p, "p", std::nullopt), "--p");
  const Point2 z = resolve_point(a.common, a.z_opt, a.z, "z", std::nullopt);
  if (!(norm2(z) < 1.0)) throw ConfigError("--z", "anchor must lie in the open unit ball");
  const auto grid = grid_of(resolve(a.common, a.n_opt, a.n, "n"), "--n");

  const auto d = disc_coefficients(p, z);
  const auto rel = relation_residuals(d);

  std::vector<Point2> pts(grid.size());
  std::vector<cplx> zeta(grid.size());
  double sphere = 0.0, conormal = 0.0, factor_imag = 0.0, factor_min_real = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const cplx tau = grid.node(k);
    const Point2 A = disc_eval(d, tau);
    pts[k] = A;
    sphere = std::max(sphere, std::abs(norm2(A) - 1.0));
    const auto L = disc_lift_boundary(d, tau);
    conormal = std::max(conormal, projective_distance(L.vector(), conj(A)));
    const cplx lambda = (L.w1() * A.z1 + L.w2() * A.z2) / norm2(A);
    factor_imag = std::max(factor_imag, std::abs(lambda.imag()) / std::abs(lambda));
    factor_min_real = std::min(factor_min_real, lambda.real());
    zeta[k] = std::abs(L.w2()) < 1e-15 ? cplx(std::numeric_limits<double>::infinity(), 0.0) : zeta_chart(L);
  }
  const double coherence = projective_distance(mp_lift_at(p, z), disc_lift_projective(d, d.center_tau()));
  const double stationarity = stationarity_residual(d, grid);

  const bool pass = rel.rel1 <= 1e-12 && rel.rel2 <= 1e-12 && sphere <= 1e-12 && conormal <= 1e-10 &&
                    factor_imag <= 1e-10 && factor_min_real > 0.0 && coherence <= 1e-10 && stationarity <= 1e-10;

  if (a.common.format == "csv") {
    a.common.write("disc_curve.csv", curve_csv(grid, pts, zeta));
  } else {
    auto arr = json::array();
    for (std::size_t k = 0; k < grid.size(); ++k)
      arr.push_back({{"theta", grid.theta(k)},
                     {"z1", {pts[k].z1.real(), pts[k].z1.imag()}},
                     {"z2", {pts[k].z2.real(), pts[k].z2.imag()}},
                     {"zeta", {zeta[k].real(), zeta[k].imag()}}});
    a.common.write("disc_curve.json", dump(arr));
  }
  const json summary = {{"disc", disc_json(d)},
                        {"n", grid.size()},
                        {"residuals",
                         {{"rel1", rel.rel1},
                          {"rel2", rel.rel2},
                          {"sphere", sphere},
                          {"conormal", conormal},
                          {"conormal_factor_imag", factor_imag},
                          {"conormal_factor_min_real", factor_min_real},
                          {"lift_coherence", coherence},
                          {"stationarity", stationarity}}},
                        {"pass", pass}};
  a.common.write("disc_summary.json", dump(summary));
  out << "disc R=" << format_double(d.R) << " C=" << format_double(d.C.real()) << "," << format_double(d.C.imag())
      << (pass ? " pass\n" : " FAIL\n");
  return pass ? kPass : kFail;
}

// ---------------------------------------------------------------- family

struct FamilyArgs {
  Common common;
  std::string p;
  double t_start = 0.0, t_stop = 0.0;
  std::size_t t_count = 32;
  std::size_t n = 1024;
  int m = 4;
  double amplitude = 1.0;
  bool dump_discs = false;
  CLI::Option *p_opt{}, *start_opt{}, *stop_opt{}, *count_opt{}, *n_opt{}, *m_opt{}, *amp_opt{};
};

int run_family(FamilyArgs& a, std::ostream& out) {
  a.common.load();
  const auto p = exterior(resolve_point(a.common, a.p_opt, a.p, "p", std::nullopt), "--p");
  if (!p.both_coordinates_exterior())
    throw ConfigError("--p", "the attached-disc family requires |p1| > 1 and |p2| > 1");

  const auto defaults = default_t_grid(p, 2);
  double start = defaults.front(), stop = defaults.back();
  std::size_t count = a.t_count;
  if (a.common.has("t_grid")) {
    const auto& tg = a.common.config.at("t_grid");
    if (!tg.is_object()) throw ConfigError("config field 't_grid'", "must be an object {start, stop, count}");
    if (tg.contains("start")) start = a.common.get<double>(tg.at("start"), "t_grid.start");
    if (tg.contains("stop")) stop = a.common.get<double>(tg.at("stop"), "t_grid.stop");
    if (tg.contains("count")) count = a.common.get<std::size_t>(tg.at("count"), "t_grid.count");
  }
  if (a.start_opt->count()) start = a.t_start;
  if (a.stop_opt->count()) stop = a.t_stop;
  if (a.count_opt->count()) count = a.t_count;
  if (count == 0) throw ConfigError("t_grid.count", "must be positive");

  const double pn = norm(p.point());
  const auto in_range = [&](double t) { return t >= (1.0 / norm2(p.point())) * (1.0 - 1e-14) && t < 1.0 / pn; };
  if (!in_range(start)) throw ConfigError("t_grid.start", "must lie in [1/|p|^2, 1/|p|)");
  if (!in_range(stop)) throw ConfigError("t_grid.stop", "must lie in [1/|p|^2, 1/|p|)");

  BumpSpec bump;
  if (a.common.has("bump")) {
    const auto& b = a.common.config.at("bump");
    if (!b.is_object()) throw ConfigError("config field 'bump'", "must be an object");
    if (b.contains("m")) bump.m = a.common.get<int>(b.at("m"), "bump.m");
    if (b.contains("amplitude")) bump.amplitude = a.common.get<double>(b.at("amplitude"), "bump.amplitude");
    if (b.contains("windowed")) bump.windowed = a.common.get<bool>(b.at("windowed"), "bump.windowed");
  }
  if (a.m_opt->count()) bump.m = a.m;
  if (a.amp_opt->count()) bump.amplitude = a.amplitude;
  if (bump.m < 1) throw ConfigError("bump.m", "must be >= 1");
  if (!(bump.amplitude > 0.0)) throw ConfigError("bump.amplitude", "must be positive");
  const std::size_t n = resolve(a.common, a.n_opt, a.n, "n");
  (void)grid_of(n, "--n");

  const auto t_grid = linspace(start, stop, count);
  const auto rows = family_sweep(p, t_grid, bump, bump, n);

  if (a.common.format == "csv") a.common.write("family_sweep.csv", sweep_csv(rows));
  else a.common.write("family_sweep.json", dump(json{{"p", point_json(p.point())}, {"rows", sweep_json(rows)}}));

  if (a.dump_discs) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      const auto disc = build_disc(FamilyParams{p, t_grid[i], n, bump, bump});
      a.common.write("disc_t" + std::to_string(i) + ".csv", disc_curve_csv(disc));
    }
  }

  std::size_t failed = 0;
  for (const auto& r : rows) failed += row_passes(r) ? 0 : 1;
  out << "family: " << rows.size() << " rows, " << failed << " failing\n";
  return failed == 0 ? kPass : kFail;
}

// ---------------------------------------------------------------- test-extension

struct ExtensionArgs {
  Common common;
  std::string f;
  std::string families = "all";
  std::string p = "2,0,2,0";
  double tol = kDefaultTolerance;
  std::size_t n = 512;
  std::size_t radial = 8, angular = 8;
  CLI::Option *f_opt{}, *fam_opt{}, *p_opt{}, *tol_opt{}, *n_opt{}, *radial_opt{}, *angular_opt{};
};

std::vector<FamilyKind> parse_families(const std::string& text) {
  if (text == "all") return {FamilyKind::Vertical, FamilyKind::Horizontal, FamilyKind::ThroughPoint};
  std::vector<FamilyKind> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item == "vertical") out.push_back(FamilyKind::Vertical);
    else if (item == "horizontal") out.push_back(FamilyKind::Horizontal);
    else if (item == "throughpoint") out.push_back(FamilyKind::ThroughPoint);
    else throw ConfigError("--families", "unknown family '" + item + "' (vertical, horizontal, throughpoint, all)");
  }
  if (out.empty()) throw ConfigError("--families", "no family selected");
  return out;
}

int run_test_extension(ExtensionArgs& a, std::ostream& out) {
  a.common.load();
  const auto f_text = resolve(a.common, a.f_opt, a.f, "f");
  if (f_text.empty()) throw ConfigError("--f", "an expression is required");
  std::optional<expr::Expr> f_expr;
  try {
    f_expr = expr::parse(f_text);
  } catch (const expr::ParseError& e) {
    throw ConfigError("--f", e.what());
  }

  std::string fam_text = a.families;
  if (a.fam_opt->count() == 0 && a.common.has("families")) {
    const auto& j = a.common.config.at("families");
    if (j.is_array()) {
      fam_text.clear();
      for (const auto& item : j) fam_text += (fam_text.empty() ? "" : ",") + a.common.get<std::string>(item, "families");
    } else {
      fam_text = a.common.get<std::string>(j, "families");
    }
  }
  const auto kinds = parse_families(fam_text);
  const double tol = resolve(a.common, a.tol_opt, a.tol, "tolerance");
  if (!(tol > 0.0)) throw ConfigError("--tol", "must be positive");
  const auto grid = grid_of(resolve(a.common, a.n_opt, a.n, "n"), "--n");
  std::size_t radial = a.radial, angular = a.angular;
  if (a.common.has("grid")) {
    const auto& g = a.common.config.at("grid");
    if (g.contains("radial")) radial = a.common.get<std::size_t>(g.at("radial"), "grid.radial");
    if (g.contains("angular")) angular = a.common.get<std::size_t>(g.at("angular"), "grid.angular");
  }
  if (a.radial_opt->count()) radial = a.radial;
  if (a.angular_opt->count()) angular = a.angular;
  if (radial == 0 || angular == 0) throw ConfigError("--radial/--angular", "anchor grid counts must be positive");

  const auto f = to_function(*f_expr);
  json reports = json::array();
  bool any_fail = false, any_degenerate = false;
  for (auto kind : kinds) {
    SliceFamily fam = [&] {
      switch (kind) {
        case FamilyKind::Vertical: return SliceFamily::vertical_grid(radial, angular);
        case FamilyKind::Horizontal: return SliceFamily::horizontal_grid(radial, angular);
        case FamilyKind::ThroughPoint: break;
      }
      const auto p = exterior(resolve_point(a.common, a.p_opt, a.p, "p", point_from_text(a.p, "--p")), "--p");
      return SliceFamily::through_point_grid(p, radial, angular);
    }();
    ExtensionReport rep;
    try {
      rep = test_family(f, fam, tol, grid);
    } catch (const Error& e) {
      throw ConfigError("--f", std::string("cannot evaluate on the sphere: ") + e.what());
    }
    any_fail = any_fail || rep.verdict == Verdict::Fail;
    any_degenerate = any_degenerate || rep.verdict == Verdict::Degenerate;
    if (a.common.format == "csv") a.common.write(std::string("extension_") + to_string(kind) + ".csv", report_csv(rep));
    out << to_string(kind) << ": " << to_string(rep.verdict) << " (max residual " << format_double(rep.max_residual)
        << ")\n";
    reports.push_back(report_json(rep));
  }
  const int code = any_fail ? kFail : (any_degenerate ? kDegenerate : kPass);
  const char* verdict = code == kFail ? "fail" : (code == kDegenerate ? "degenerate" : "pass");
  a.common.write("extension_report.json",
                 dump(json{{"f", expr::to_string(*f_expr)}, {"families", std::move(reports)}, {"verdict", verdict}}));
  return code;
}

// ---------------------------------------------------------------- hilbert

struct HilbertArgs {
  Common common;
  std::string in;
  CLI::Option* in_opt{};
};

int run_hilbert(HilbertArgs& a, std::ostream& out) {
  a.common.load();
  const auto path = resolve(a.common, a.in_opt, a.in, "in");
  if (path.empty()) throw ConfigError("--in", "an input CSV is required");
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("--in", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  std::optional<ComplexSamples> samples;
  try {
    samples = read_samples_csv(buf.str());
  } catch (const Error& e) {
    throw ConfigError("--in", e.what());
  }
  std::vector<double> u(samples->size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    if ((*samples)[k].imag() != 0.0) throw ConfigError("--in", "input must be real (im column must be 0)");
    u[k] = (*samples)[k].real();
  }
  const auto v = hilbert_t1(RealSamples(samples->grid(), std::move(u)));
  if (a.common.format == "csv") a.common.write("hilbert.csv", samples_csv(v));
  else a.common.write("hilbert.json", dump(samples_json(v)));
  out << "hilbert: " << v.size() << " samples\n";
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stationary discs, attached disc families and extension tests on the unit sphere in C^2"};
  app.require_subcommand(1);

  DiscArgs disc;
  auto* disc_cmd = app.add_subcommand("disc", "straight disc through an exterior point and its lift");
  add_common(disc_cmd, disc.common);
  disc.p_opt = disc_cmd->add_option("--p", disc.p, "exterior point re1,im1,re2,im2");
  disc.z_opt = disc_cmd->add_option("--z", disc.z, "interior anchor re1,im1,re2,im2");
  disc.n_opt = disc_cmd->add_option("--n", disc.n, "boundary samples")->capture_default_str();

  FamilyArgs fam;
  auto* fam_cmd = app.add_subcommand("family", "sweep of attached discs B_t");
  add_common(fam_cmd, fam.common);
  fam.p_opt = fam_cmd->add_option("--p", fam.p, "exterior point re1,im1,re2,im2 with |p1|,|p2| > 1");
  fam.start_opt = fam_cmd->add_option("--t-start", fam.t_start, "first t (default 1/|p|^2)");
  fam.stop_opt = fam_cmd->add_option("--t-stop", fam.t_stop, "last t (default 0.999/|p|)");
  fam.count_opt = fam_cmd->add_option("--t-count", fam.t_count, "number of t values")->capture_default_str();
  fam.n_opt = fam_cmd->add_option("--n", fam.n, "initial grid size")->capture_default_str();
  fam.m_opt = fam_cmd->add_option("--m", fam.m, "bump smoothness exponent")->capture_default_str();
  fam.amp_opt = fam_cmd->add_option("--amplitude", fam.amplitude, "bump amplitude")->capture_default_str();
  fam_cmd->add_flag("--dump", fam.dump_discs, "also write each disc's boundary curve");

  ExtensionArgs ext;
  auto* ext_cmd = app.add_subcommand("test-extension", "test slice-wise holomorphic extendibility of f");
  add_common(ext_cmd, ext.common);
  ext.f_opt = ext_cmd->add_option("--f", ext.f, "boundary function, e.g. \"z1*conj(z1)\"");
  ext.fam_opt = ext_cmd->add_option("--families", ext.families, "all or a list of vertical,horizontal,throughpoint")
                    ->capture_default_str();
  ext.p_opt = ext_cmd->add_option("--p", ext.p, "exterior point for throughpoint")->capture_default_str();
  ext.tol_opt = ext_cmd->add_option("--tol", ext.tol, "negative-energy tolerance")->capture_default_str();
  ext.n_opt = ext_cmd->add_option("--n", ext.n, "samples per slice")->capture_default_str();
  ext.radial_opt = ext_cmd->add_option("--radial", ext.radial, "anchor radii")->capture_default_str();
  ext.angular_opt = ext_cmd->add_option("--angular", ext.angular, "anchor angles")->capture_default_str();

  HilbertArgs hil;
  auto* hil_cmd = app.add_subcommand("hilbert", "apply the normalized conjugate-function operator to CSV samples");
  add_common(hil_cmd, hil.common);
  hil.in_opt = hil_cmd->add_option("--in", hil.in, "input CSV theta,re,im");

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    if (*disc_cmd) return run_disc(disc, out);
    if (*fam_cmd) return run_family(fam, out);
    if (*ext_cmd) return run_test_extension(ext, out);
    if (*hil_cmd) return run_hilbert(hil, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kFail;
  }
  return kConfigError;
}

}  // namespace stdisc::cli
