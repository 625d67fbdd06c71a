#include "incwb/cli/cli.hpp"

#include "incwb/configurations/configurations.hpp"
#include "incwb/foliation/foliation.hpp"
#include "incwb/incidence/incidence.hpp"
#include "incwb/partition/partition.hpp"
#include "incwb/util/parallel.hpp"
#include "incwb/util/rng.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace incwb::cli {

namespace {

/// Bad user input: exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

struct FileOutput {
  std::string path;
  std::string content;
};

struct CommandResult {
  int code = kSuccess;
  std::string report;
  std::vector<FileOutput> extra;
  std::vector<std::string> inputs;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
  if (!out) throw InputError("failed writing '" + path + "'");
}

Json read_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Configuration read_configuration(const std::string& path) {
  try {
    return configuration_from_json(read_json(path));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError("'" + path + "': " + e.what());
  }
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Shortest round-trip decimal for CSV cells.
std::string num(long double x) {
  std::ostringstream ss;
  ss << std::setprecision(17) << static_cast<double>(x);
  return ss.str();
}

void check_format(const Common& c) {
  if (c.format != "json" && c.format != "csv") throw InputError("--format must be json or csv");
}

Json point4_json(const Point4& p) {
  Json j = Json::array();
  for (const auto& x : p) j.push_back(to_json(x));
  return j;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string family;
  std::string spec;
  long long n = -1, a = -1, b = -1, m = -1, count = -1, samples = -1, curves = -1, degree = -1;
  long long range = -1, max_den = -1, bits = -1;
  std::string g;
  std::string field;
};

CommandResult cmd_generate(const Common& common, const GenerateArgs& a) {
  GeneratorSpec spec;
  CommandResult res;
  if (!a.spec.empty()) {
    const Json j = read_json(a.spec);
    res.inputs.push_back(a.spec);
    spec.name = j.value("name", std::string());
    spec.params = j.value("params", Json::object());
    spec.seed = j.value("seed", common.seed);
  } else {
    if (a.family.empty()) throw InputError("generate needs --family or --spec");
    spec.name = a.family;
    spec.seed = common.seed;
    auto need = [&](const char* flag, long long v) {
      if (v < 0) throw InputError("generate --family " + a.family + " requires " + flag);
      return v;
    };
    Json& p = spec.params;
    if (a.family == "grid-lines" || a.family == "unit-circles") {
      p["N"] = need("--n", a.n);
    } else if (a.family == "complex-lines") {
      p["a"] = a.a >= 0 ? a.a : need("--n", a.n);
      p["b"] = a.b >= 0 ? a.b : need("--n", a.n);
    } else if (a.family == "leaf") {
      if (a.g.empty()) throw InputError("generate --family leaf requires --g");
      p["g"] = a.g;
      p["count"] = need("--count", a.count);
      if (a.samples >= 0) p["samples"] = a.samples;
    } else if (a.family == "uniform") {
      p["m"] = need("--m", a.m);
      if (a.bits >= 0) p["bits"] = a.bits;
    } else if (a.family == "box-lines") {
      p["count"] = need("--count", a.count);
    } else if (a.family == "random") {
      p["field"] = a.field.empty() ? "R2" : a.field;
      p["m"] = need("--m", a.m);
      p["n"] = need("--curves", a.curves);
      if (a.degree >= 0) p["degree"] = a.degree;
      if (a.range >= 0) p["range"] = a.range;
      if (a.max_den >= 0) p["max_den"] = a.max_den;
    } else {
      throw InputError("unknown family '" + a.family + "'");
    }
  }
  Configuration c;
  try {
    c = generate(spec);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (common.format == "json") {
    res.report = dump(to_json(c));
  } else {
    const bool real = c.field == GroundField::R2;
    res.report = real ? "point,x,y\n" : "point,z1_re,z1_im,z2_re,z2_im\n";
    for (std::size_t i = 0; i < c.m(); ++i) {
      res.report += std::to_string(i);
      for (const auto& z : c.points[i]) res.report += "," + z.re.to_string() + (real ? "" : "," + z.im.to_string());
      res.report += "\n";
    }
  }
  return res;
}

// ---- count ----------------------------------------------------------------

CommandResult cmd_count(const Common& common, const std::string& config, const std::string& matrix, bool cross) {
  CommandResult res;
  const Configuration c = read_configuration(config);
  res.inputs.push_back(config);
  const IncidenceMatrix M = build_matrix(c, {common.threads, cross});
  if (common.format == "json") {
    Json j;
    j["schema"] = "incwb.count/1";
    j["field"] = std::string(to_string(c.field));
    j["m"] = M.m();
    j["n"] = M.n();
    j["incidences"] = M.incidences();
    res.report = dump(j);
  } else {
    res.report = "m,n,incidences\n" + std::to_string(M.m()) + "," + std::to_string(M.n()) + "," +
                 std::to_string(M.incidences()) + "\n";
  }
  if (!matrix.empty()) res.extra.push_back({matrix, matrix_to_csv(M)});
  return res;
}

// ---- certify --------------------------------------------------------------

CommandResult cmd_certify(const Common& common, const std::string& config, std::size_t k, std::size_t s,
                          std::uint64_t cap, std::ostream& err) {
  CommandResult res;
  if (k < 1 || s < 1) throw InputError("--k and --s must be at least 1");
  const Configuration c = read_configuration(config);
  res.inputs.push_back(config);
  const IncidenceMatrix M = build_matrix(c, {common.threads, false});
  const DofCertificate cert = certify_dof(M, k, s, common.threads, cap);
  Json j = to_json(cert);
  if (cert.status == DofStatus::Certified) j["kst"] = to_json(kst_double_count(M, k, s));
  if (common.format == "json") {
    res.report = dump(j);
  } else {
    res.report = "k,s,status,table_entries,table_cap\n" + std::to_string(k) + "," + std::to_string(s) + "," +
                 std::string(to_string(cert.status)) + "," + std::to_string(cert.table_entries) + "," +
                 std::to_string(cert.table_cap) + "\n";
  }
  if (cert.status == DofStatus::Violated) {
    Json w = Json::object();
    if (j.contains("subset_witness")) w["subset_witness"] = j["subset_witness"];
    if (j.contains("pair_witness")) w["pair_witness"] = j["pair_witness"];
    err << "violated: " << w.dump() << "\n";
    res.code = kViolated;
  } else if (cert.status == DofStatus::Indeterminate) {
    err << "indeterminate: " << cert.table_entries << " k-subsets exceed the cap " << cert.table_cap << "\n";
    res.code = kIndeterminate;
  }
  return res;
}

// ---- partition ------------------------------------------------------------

struct PartitionArgs {
  std::string config;
  unsigned r = 0;
  double delta = 0.1;
  int restarts = 200;
  std::size_t lines = 0;
};

CommandResult cmd_partition(const Common& common, const PartitionArgs& a) {
  CommandResult res;
  if (a.r < 1) throw InputError("--r must be at least 1");
  if (!(a.delta > 0)) throw InputError("--delta must be positive");
  if (a.restarts < 1) throw InputError("--restarts must be at least 1");
  const Configuration c = read_configuration(a.config);
  res.inputs.push_back(a.config);
  if (c.field != GroundField::R2) throw InputError("partition needs an R2 point configuration");
  std::vector<RationalPoint> pts;
  for (const auto& p : c.points) pts.push_back({p[0].re, p[1].re});
  PartitionOptions opt;
  opt.delta = a.delta;
  opt.restarts = a.restarts;
  opt.seed = common.seed;
  opt.threads = common.threads;
  const PartitionResult r = polynomial_partition(pts, a.r, opt);

  Json j = to_json(r);
  j["m"] = pts.size();
  j["occupancy_guarantee"] = occupancy_bound(pts.size(), a.delta, r.stages.size());
  j["cell_bound_4m_over_r2"] = 4.0 * static_cast<double>(pts.size()) / (static_cast<double>(a.r) * a.r);
  if (a.lines > 0) {
    const Configuration lines = gen_box_lines(a.lines, derive_seed(common.seed, "partition-lines"));
    std::vector<Json> rows(lines.n());
    parallel_for(lines.n(), common.threads, [&](std::size_t t) {
      const RealPoly f = *as_real(lines.curves[t]);
      Json row = to_json(curve_crossings(f, r));
      row["curve"] = to_json(f);
      rows[t] = std::move(row);
    });
    std::size_t worst = 0;
    for (const auto& row : rows) worst = std::max(worst, row.at("classes_visited").get<std::size_t>());
    j["line_crossings"] = rows;
    j["max_classes_visited"] = worst;
  }
  if (common.format == "json") {
    res.report = dump(j);
  } else {
    res.report = "class,count\n";
    for (const auto& [key, count] : r.occupancy) res.report += key + "," + std::to_string(count) + "\n";
  }
  if (r.status == SearchStatus::BudgetExhausted) res.code = kIndeterminate;
  return res;
}

// ---- foliate --------------------------------------------------------------

RealPoly read_hypersurface(const std::string& path) {
  const Json j = read_json(path);
  try {
    if (j.contains("terms")) return real_poly_from_json(j);
    if (j.contains("polynomial")) return real_poly_from_json(j.at("polynomial"));
    if (j.contains("hypersurface")) return real_poly_from_json(j.at("hypersurface"));
  } catch (const std::exception& e) {
    throw InputError("'" + path + "': " + e.what());
  }
  throw InputError("'" + path + "' holds no hypersurface polynomial");
}

CommandResult cmd_foliate(const Common& common, const std::string& hyper_path, const std::string& curves_path) {
  CommandResult res;
  const Configuration c = read_configuration(curves_path);
  res.inputs.push_back(curves_path);
  RealPoly P(4);
  if (!hyper_path.empty()) {
    P = read_hypersurface(hyper_path);
    res.inputs.push_back(hyper_path);
  } else if (c.hypersurface) {
    P = *c.hypersurface;
  } else {
    throw InputError("foliate needs --hypersurface or a configuration carrying one");
  }
  if (c.field != GroundField::C2) throw InputError("foliate needs a C2 curve configuration");
  Hypersurface Z;
  std::vector<ComplexCurve> curves;
  try {
    Z = Hypersurface(P);
    for (const auto& f : c.curves) curves.emplace_back(f);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }

  const IncidenceMatrix M = build_matrix(c, {common.threads, false});
  std::vector<Json> curve_rows(curves.size());
  parallel_for(curves.size(), common.threads, [&](std::size_t j) {
    const ContainmentResult cr = containment_check(Z, curves[j], derive_seed(common.seed, j));
    curve_rows[j] = {{"curve", j}, {"containment", std::string(to_string(cr.verdict))}};
  });

  std::vector<Json> records(c.m());
  std::vector<TangencyStatus> tangency(c.m());
  std::vector<bool> defect_zero(c.m());
  parallel_for(c.m(), common.threads, [&](std::size_t i) {
    const Point4 p = iota(ComplexPoint2{c.points[i][0], c.points[i][1]});
    const BracketDefect d = bracket_defect(Z, p);
    Json rec;
    rec["point"] = point4_json(p);
    const auto& on = M.point_curves()[i];
    TangencyRecord t{p, TangencyStatus::Skipped, PointStatus::NotOnCurve};
    if (!on.empty()) {
      rec["curve"] = on.front();
      t = leaf_tangency_check(Z, curves[on.front()], {p}).front();
    } else {
      rec["curve"] = nullptr;
    }
    rec["status"] = std::string(to_string(d.status));
    rec["defect"] = d.status == PointStatus::Ok ? Json(d.raw.to_string()) : Json(nullptr);
    rec["defect_normalized"] = d.status == PointStatus::Ok ? Json(d.normalized.to_string()) : Json(nullptr);
    rec["tangency"] = std::string(to_string(t.status));
    rec["tangency_reason"] = std::string(to_string(t.reason));
    tangency[i] = t.status;
    defect_zero[i] = d.status == PointStatus::Ok && d.raw.is_zero();
    records[i] = std::move(rec);
  });

  std::size_t pass = 0, fail = 0, skipped = 0, zero = 0;
  for (std::size_t i = 0; i < c.m(); ++i) {
    pass += tangency[i] == TangencyStatus::Pass;
    fail += tangency[i] == TangencyStatus::Fail;
    skipped += tangency[i] == TangencyStatus::Skipped;
    zero += defect_zero[i];
  }
  bool not_contained = false;
  for (const auto& row : curve_rows) not_contained |= row.at("containment") == "not_contained";

  if (common.format == "json") {
    Json j;
    j["schema"] = "incwb.foliation/1";
    j["hypersurface"] = to_json(P);
    j["curves"] = curve_rows;
    j["records"] = records;
    j["summary"] = {{"points", c.m()},     {"tangency_pass", pass}, {"tangency_fail", fail},
                    {"tangency_skipped", skipped}, {"defect_zero", zero}};
    res.report = dump(j);
  } else {
    res.report = "point,curve,status,defect,tangency\n";
    for (std::size_t i = 0; i < c.m(); ++i) {
      const Json& r = records[i];
      res.report += std::to_string(i) + "," + (r["curve"].is_null() ? "" : std::to_string(r["curve"].get<std::size_t>())) +
                    "," + r["status"].get<std::string>() + "," +
                    (r["defect"].is_null() ? "" : r["defect"].get<std::string>()) + "," +
                    r["tangency"].get<std::string>() + "\n";
    }
  }
  if (fail > 0 || not_contained) res.code = kViolated;
  return res;
}

// ---- bound ----------------------------------------------------------------

struct BoundArgs {
  std::string config;
  long long m = -1, n = -1, incidences = -1;
  std::size_t k = 0, s = 1;
  double epsilon = 0, constant = 1;
};

CommandResult cmd_bound(const Common& common, const BoundArgs& a) {
  CommandResult res;
  std::uint64_t m = 0, n = 0, I = 0;
  if (!a.config.empty()) {
    const Configuration c = read_configuration(a.config);
    res.inputs.push_back(a.config);
    const IncidenceMatrix M = build_matrix(c, {common.threads, false});
    m = M.m();
    n = M.n();
    I = M.incidences();
  } else {
    if (a.m < 0 || a.n < 0) throw InputError("bound needs --config or both --m and --n");
    m = static_cast<std::uint64_t>(a.m);
    n = static_cast<std::uint64_t>(a.n);
    I = a.incidences < 0 ? 0 : static_cast<std::uint64_t>(a.incidences);
  }
  if (a.k < 1) throw InputError("--k must be at least 1");
  BoundReport r;
  try {
    r = evaluate_bounds(m, n, a.k, a.s, a.epsilon, I, a.constant);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const Json j = to_json(r);
  if (common.format == "json") {
    res.report = dump(j);
  } else {
    std::string header, row;
    for (const auto& [key, value] : j.items()) {
      if (key == "schema") continue;
      header += (header.empty() ? "" : ",") + key;
      row += (row.empty() ? "" : ",") + (value.is_string() ? value.get<std::string>() : value.dump());
    }
    res.report = header + "\n" + row + "\n";
  }
  return res;
}

// ---- fit ------------------------------------------------------------------

struct FitArgs {
  std::string series;
  std::string family;
  long long from = 3, to = 8;
};

std::vector<SeriesPoint> read_series_csv(const std::string& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::vector<SeriesPoint> out;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("m,n,", 0) == 0) continue;
    }
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c, ','))
      throw InputError("series rows must be m,n,incidences");
    try {
      out.push_back({std::stold(a), std::stold(b), std::stold(c)});
    } catch (const std::exception&) {
      throw InputError("series row '" + line + "' is not numeric");
    }
  }
  return out;
}

CommandResult cmd_fit(const Common& common, const FitArgs& a) {
  CommandResult res;
  std::vector<SeriesPoint> series;
  if (!a.series.empty()) {
    series = read_series_csv(a.series);
    res.inputs.push_back(a.series);
  } else {
    if (a.family != "grid-lines" && a.family != "complex-lines")
      throw InputError("fit needs --series or --family grid-lines|complex-lines");
    if (a.from < 1 || a.to < a.from) throw InputError("--from/--to must satisfy 1 <= from <= to");
    for (long long N = a.from; N <= a.to; ++N) {
      const auto size = static_cast<std::size_t>(N);
      const Configuration c =
          a.family == "grid-lines" ? gen_grid_lines(size) : gen_complex_lines_product(size, size, common.seed);
      const IncidenceMatrix M = build_matrix(c, {common.threads, false});
      series.push_back({static_cast<long double>(M.m()), static_cast<long double>(M.n()),
                        static_cast<long double>(M.incidences())});
    }
  }
  ExponentFit f;
  try {
    f = exponent_fit(series);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (common.format == "json") {
    Json j = to_json(f);
    Json rows = Json::array();
    for (const auto& s : series)
      rows.push_back({{"m", static_cast<double>(s.m)},
                      {"n", static_cast<double>(s.n)},
                      {"incidences", static_cast<double>(s.incidences)},
                      {"predicted", static_cast<double>(f.predict(s.m, s.n))}});
    j["series"] = std::move(rows);
    res.report = dump(j);
  } else {
    res.report = "m,n,incidences,log_m,log_n,log_incidences,predicted\n";
    for (const auto& s : series)
      res.report += num(s.m) + "," + num(s.n) + "," + num(s.incidences) + "," + num(std::log(s.m)) + "," +
                    num(std::log(s.n)) + "," + num(std::log(s.incidences)) + "," + num(f.predict(s.m, s.n)) + "\n";
  }
  return res;
}

// ---- driver ---------------------------------------------------------------

void add_common(CLI::App* app, Common& c) {
  app->add_option("--threads", c.threads, "Worker threads (results do not depend on it)")->capture_default_str();
  app->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app->add_option("--format", c.format, "json or csv")->capture_default_str();
  app->add_option("--out", c.out, "Report path; a manifest is written beside it");
}

Json option_values(const CLI::App* app) {
  Json params = Json::object();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    if (opt->count() > 0) {
      const auto& rs = opt->results();
      if (opt->get_expected_max() == 0)
        params[name] = true;
      else if (rs.size() == 1)
        params[name] = rs.front();
      else
        params[name] = rs;
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

int finish(const std::string& command, const std::vector<std::string>& args, const Json& params,
           const Common& common, const CommandResult& res, double seconds, std::ostream& out) {
  if (common.out.empty()) {
    out << res.report;
    for (const auto& f : res.extra) write_text(f.path, f.content);
    return res.code;
  }
  write_text(common.out, res.report);
  for (const auto& f : res.extra) write_text(f.path, f.content);
  Json m;
  m["schema"] = "incwb.manifest/1";
  m["command"] = command;
  m["args"] = args;
  m["parameters"] = params;
  m["seed"] = common.seed;
  m["threads"] = common.threads;
  Json inputs = Json::array();
  for (const auto& path : res.inputs) {
    const std::string bytes = read_text(path);
    inputs.push_back({{"path", path}, {"bytes", bytes.size()}, {"fnv1a64", fnv1a_hex(bytes)}});
  }
  m["inputs"] = std::move(inputs);
  Json outputs = Json::array();
  outputs.push_back(common.out);
  for (const auto& f : res.extra) outputs.push_back(f.path);
  m["outputs"] = std::move(outputs);
  m["exit_code"] = res.code;
  m["artifact_version"] = kArtifactVersion;
  m["wall_clock_seconds"] = seconds;
  write_text(common.out + ".manifest.json", dump(m));
  return res.code;
}

// Replaces (or appends) "--key value" in an argument list.
void apply_override(std::vector<std::string>& args, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw InputError("--override expects key=value");
  const std::string flag = "--" + assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  for (std::size_t t = 0; t < args.size(); ++t) {
    if (args[t] == flag && t + 1 < args.size()) {
      args[t + 1] = value;
      return;
    }
    if (args[t].rfind(flag + "=", 0) == 0) {
      args[t] = flag + "=" + value;
      return;
    }
  }
  args.push_back(flag);
  args.push_back(value);
}

int cmd_rerun(const std::string& manifest_path, const std::vector<std::string>& overrides, bool check,
              std::ostream& out, std::ostream& err) {
  const Json manifest = read_json(manifest_path);
  if (manifest.value("schema", std::string()) != "incwb.manifest/1")
    throw InputError("'" + manifest_path + "' is not a run manifest");
  std::vector<std::string> args = manifest.at("args").get<std::vector<std::string>>();
  if (!args.empty() && args.front() == "rerun") throw InputError("manifest records a rerun; refusing to nest");
  std::vector<std::string> before;
  const auto old_outputs = manifest.at("outputs").get<std::vector<std::string>>();
  if (check)
    for (const auto& path : old_outputs) before.push_back(read_text(path));
  for (const auto& o : overrides) apply_override(args, o);
  const int code = run(args, out, err);
  if (!check) return code;

  // Locate the new outputs through the rerun's own manifest.
  std::string new_out;
  for (std::size_t t = 0; t + 1 < args.size(); ++t)
    if (args[t] == "--out") new_out = args[t + 1];
  for (const auto& a : args)
    if (a.rfind("--out=", 0) == 0) new_out = a.substr(6);
  if (new_out.empty()) throw InputError("rerun --check needs the command to write --out");
  const auto new_outputs = read_json(new_out + ".manifest.json").at("outputs").get<std::vector<std::string>>();
  if (new_outputs.size() != before.size()) {
    err << "rerun produced a different set of outputs\n";
    return kViolated;
  }
  for (std::size_t t = 0; t < before.size(); ++t) {
    if (read_text(new_outputs[t]) != before[t]) {
      err << "output differs: " << old_outputs[t] << " vs " << new_outputs[t] << "\n";
      return kViolated;
    }
  }
  err << "reproduced " << before.size() << " output file(s) byte for byte\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Incidence workbench: configurations, incidences, certificates, partitions, foliation checks"};
  app.name("incwb");
  app.require_subcommand(1);

  Common common;
  GenerateArgs gen;
  std::string config, matrix_path, hyper_path, curves_path, manifest_path;
  bool cross = false, check = false;
  std::size_t k = 0, s = 0;
  std::uint64_t cap = kDefaultTableCap;
  PartitionArgs part;
  BoundArgs bound;
  FitArgs fit;
  std::vector<std::string> overrides;

  auto* g = app.add_subcommand("generate", "Write a configuration");
  add_common(g, common);
  g->add_option("--family", gen.family,
                "grid-lines | unit-circles | complex-lines | leaf | uniform | box-lines | random");
  g->add_option("--spec", gen.spec, "GeneratorSpec JSON file {name, params, seed}");
  g->add_option("--n", gen.n, "Scale N (grid-lines, unit-circles; both sizes of complex-lines)");
  g->add_option("--a", gen.a, "|A| for complex-lines");
  g->add_option("--b", gen.b, "|B| for complex-lines");
  g->add_option("--g", gen.g, "Leaf function g(z1)");
  g->add_option("--count", gen.count, "Leaves (leaf) or lines (box-lines)");
  g->add_option("--samples", gen.samples, "Sample points per leaf");
  g->add_option("--m", gen.m, "Points (uniform, random)");
  g->add_option("--bits", gen.bits, "Dyadic precision (uniform)");
  g->add_option("--curves", gen.curves, "Curves (random)");
  g->add_option("--degree", gen.degree, "Curve degree (random)");
  g->add_option("--field", gen.field, "R2 or C2 (random)");
  g->add_option("--range", gen.range, "Numerator range (random)");
  g->add_option("--max-den", gen.max_den, "Largest denominator (random)");

  auto* c = app.add_subcommand("count", "Count incidences");
  add_common(c, common);
  c->add_option("--config", config, "Configuration JSON")->required();
  c->add_option("--matrix", matrix_path, "Also write the sparse pair list CSV here");
  c->add_flag("--cross-check", cross, "Over C2, re-test each pair through the realified polynomials");

  auto* ce = app.add_subcommand("certify", "Certify k degrees of freedom and multiplicity type s");
  add_common(ce, common);
  ce->add_option("--config", config, "Configuration JSON")->required();
  ce->add_option("--k", k, "Degrees of freedom")->required();
  ce->add_option("--s", s, "Multiplicity type")->required();
  ce->add_option("--cap", cap, "Largest k-subset table")->capture_default_str();

  auto* p = app.add_subcommand("partition", "Polynomial partition of an R2 point set");
  add_common(p, common);
  p->add_option("--config", part.config, "Configuration JSON (points are used)")->required();
  p->add_option("--r", part.r, "Partition parameter r")->required();
  p->add_option("--delta", part.delta, "Per-stage imbalance tolerance")->capture_default_str();
  p->add_option("--restarts", part.restarts, "Restart budget per stage")->capture_default_str();
  p->add_option("--lines", part.lines, "Seeded lines whose sign-class crossings are reported")->capture_default_str();

  auto* f = app.add_subcommand("foliate", "Leaf tangency, bracket defect and containment diagnostics");
  add_common(f, common);
  f->add_option("--hypersurface", hyper_path, "Hypersurface JSON (defaults to the one in --curves)");
  f->add_option("--curves", curves_path, "C2 configuration with curves and sample points")->required();

  auto* b = app.add_subcommand("bound", "Evaluate the incidence bound formulas");
  add_common(b, common);
  b->add_option("--config", bound.config, "Measure m, n, I from a configuration");
  b->add_option("--m", bound.m, "Points");
  b->add_option("--n", bound.n, "Curves");
  b->add_option("--incidences", bound.incidences, "Measured incidences");
  b->add_option("--k", bound.k, "Degrees of freedom")->required();
  b->add_option("--s", bound.s, "Multiplicity type")->capture_default_str();
  b->add_option("--epsilon", bound.epsilon, "Exponent loss")->capture_default_str();
  b->add_option("--constant", bound.constant, "Constant on the complex first term")->capture_default_str();

  auto* fi = app.add_subcommand("fit", "Fit log I = a log m + b log n + c");
  add_common(fi, common);
  fi->add_option("--series", fit.series, "CSV with header m,n,incidences");
  fi->add_option("--family", fit.family, "grid-lines or complex-lines, generated and counted");
  fi->add_option("--from", fit.from, "First N")->capture_default_str();
  fi->add_option("--to", fit.to, "Last N")->capture_default_str();

  auto* rr = app.add_subcommand("rerun", "Re-execute a command from its manifest");
  rr->add_option("--manifest", manifest_path, "Manifest JSON")->required();
  rr->add_option("--override", overrides, "key=value replacing --key in the recorded arguments");
  rr->add_flag("--check", check, "Compare the new outputs with the recorded ones byte for byte");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (rr->parsed()) return cmd_rerun(manifest_path, overrides, check, out, err);
    check_format(common);
    if (common.threads < 1) throw InputError("--threads must be at least 1");
    CLI::App* sub = app.get_subcommands().front();
    CommandResult res;
    if (g->parsed()) res = cmd_generate(common, gen);
    if (c->parsed()) res = cmd_count(common, config, matrix_path, cross);
    if (ce->parsed()) res = cmd_certify(common, config, k, s, cap, err);
    if (p->parsed()) res = cmd_partition(common, part);
    if (f->parsed()) res = cmd_foliate(common, hyper_path, curves_path);
    if (b->parsed()) res = cmd_bound(common, bound);
    if (fi->parsed()) res = cmd_fit(common, fit);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return finish(sub->get_name(), args, option_values(sub), common, res, seconds, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace incwb::cli
