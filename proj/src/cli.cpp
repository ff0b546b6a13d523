#include "ashgeo/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ashgeo/ashtekar.hpp"
#include "ashgeo/error.hpp"

namespace ashgeo::cli {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Config reading
// ---------------------------------------------------------------------------

std::string child(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}

std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

void require_array(const json& j, const std::string& path, std::size_t size) {
  if (!j.is_array() || j.size() != size) {
    throw ConfigError(path, "expected an array of " + std::to_string(size) + " entries");
  }
}

void reject_unknown_keys(const json& j, const std::string& path,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(child(path, key), "unknown key");
    }
  }
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

Expr read_expr(const json& j, const std::string& path) {
  if (j.is_number()) return Expr(read_number(j, path));
  if (!j.is_string()) throw ConfigError(path, "expected an expression string or a number");
  try {
    return parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ConfigError(path, e.what());
  }
}

ExprMat3 read_expr_matrix(const json& j, const std::string& path) {
  require_array(j, path, 3);
  ExprMat3 m;
  for (std::size_t r = 0; r < 3; ++r) {
    const std::string row = child(path, r);
    require_array(j[r], row, 3);
    for (std::size_t c = 0; c < 3; ++c) m[r][c] = read_expr(j[r][c], child(row, c));
  }
  return m;
}

SliceMetric read_metric(const json& j, const std::string& path) {
  const ExprMat3 q = read_expr_matrix(j, path);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      if (!structurally_equal(q[a][b], q[b][a])) {
        throw ConfigError(child(child(path, b), a),
                          "metric is not symmetric: " + q[b][a].str() + " differs from " +
                              q[a][b].str() + " at " + child(child(path, a), b));
      }
    }
  }
  return SliceMetric(q);
}

Interval read_interval(const json& j, const std::string& path) {
  require_array(j, path, 2);
  const Interval iv{read_number(j[0], child(path, 0)), read_number(j[1], child(path, 1))};
  if (!(iv.lo < iv.hi)) throw ConfigError(path, "interval must satisfy lo < hi");
  return iv;
}

std::array<Interval, 3> read_slice_box(const json& parent, const std::string& path,
                                       std::optional<Interval>* time) {
  std::array<Interval, 3> box{Interval{-1.0, 1.0}, Interval{-1.0, 1.0}, Interval{-1.0, 1.0}};
  if (time) *time = std::nullopt;
  if (!parent.contains("box")) return box;
  const json& j = parent["box"];
  const std::string bpath = child(path, "box");
  require_object(j, bpath);
  if (time) {
    reject_unknown_keys(j, bpath, {"t", "x1", "x2", "x3"});
    if (j.contains("t")) *time = read_interval(j["t"], child(bpath, "t"));
  } else {
    reject_unknown_keys(j, bpath, {"x1", "x2", "x3"});
  }
  for (int a = 0; a < 3; ++a) {
    const std::string name(kCoordNames[a]);
    if (j.contains(name)) box[a] = read_interval(j[name], child(bpath, name));
  }
  return box;
}

Complex read_complex(const json& j, const std::string& path) {
  Complex v;
  if (j.is_number()) {
    v = Complex(read_number(j, path), 0.0);
  } else if (j.is_string()) {
    try {
      v = parse_complex(j.get<std::string>());
    } catch (const InvalidArgument& e) {
      throw ConfigError(path, e.what());
    }
  } else if (j.is_object()) {
    reject_unknown_keys(j, path, {"re", "im"});
    const double re = j.contains("re") ? read_number(j["re"], child(path, "re")) : 0.0;
    const double im = j.contains("im") ? read_number(j["im"], child(path, "im")) : 0.0;
    v = Complex(re, im);
  } else {
    throw ConfigError(path, "expected a complex number such as \"0.5+2i\" or {\"re\": .., \"im\": ..}");
  }
  if (v == Complex(0.0, 0.0)) throw ConfigError(path, "beta must be nonzero");
  return v;
}

int frw_kappa(const std::string& preset, const std::string& path) {
  std::string_view name = preset;
  if (name.substr(0, 4) == "frw:") name.remove_prefix(4);
  if (name == "flat") return 0;
  if (name == "closed") return 1;
  if (name == "open") return -1;
  throw ConfigError(path, "unknown preset '" + preset + "' (expected frw:flat, frw:closed or frw:open)");
}

Model read_frw(const json& j, const std::string& path, double time) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"preset", "a", "time_interval"});
  if (!j.contains("preset") || !j["preset"].is_string()) {
    throw ConfigError(child(path, "preset"), "expected a preset name");
  }
  const int kappa = frw_kappa(j["preset"].get<std::string>(), child(path, "preset"));
  if (!j.contains("a")) throw ConfigError(child(path, "a"), "missing scale factor");
  const Expr a = read_expr(j["a"], child(path, "a"));
  Interval interval{-2.0, 2.0};
  if (j.contains("time_interval")) {
    interval = read_interval(j["time_interval"], child(path, "time_interval"));
  }
  if (!interval.contains(time)) throw ConfigError("/time", "time lies outside the time interval");
  FrwModel m = [&] {
    try {
      return make_frw(kappa, a, interval);
    } catch (const InvalidArgument& e) {
      throw ConfigError(path, e.what());
    }
  }();
  return Model::from_frw(m, time, j["preset"].get<std::string>());
}

Model read_split(const json& j, const std::string& path, double time) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"lapse", "metric", "box"});
  const Expr lapse = j.contains("lapse") ? read_expr(j["lapse"], child(path, "lapse")) : Expr(1.0);
  if (!j.contains("metric")) throw ConfigError(child(path, "metric"), "missing metric");
  const SliceMetric g = read_metric(j["metric"], child(path, "metric"));
  std::optional<Interval> t_box;
  const auto box = read_slice_box(j, path, &t_box);
  const Interval t_iv = t_box.value_or(Interval{-1.0, 1.0});
  if (!t_iv.contains(time)) throw ConfigError("/time", "time lies outside the time interval");
  try {
    const SpacetimeSplit st(lapse, g.components(), Chart::spacetime(t_iv, box));
    return Model::from_split(st, time, "split");
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, e.what());
  }
}

Model read_slice(const json& j, const std::string& path, double time) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"metric", "weingarten", "box"});
  if (!j.contains("metric")) throw ConfigError(child(path, "metric"), "missing metric");
  const SliceMetric q = read_metric(j["metric"], child(path, "metric"));
  EndoField w = EndoField::zero();
  if (j.contains("weingarten")) w.m = read_expr_matrix(j["weingarten"], child(path, "weingarten"));
  const auto box = read_slice_box(j, path, nullptr);
  Model m = Model::from_slice(q, w, Chart::slice(box), "slice");
  m.time = time;
  return m;
}

Binding read_point(const json& j, const std::string& path, const Model& model) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"x1", "x2", "x3"});
  Binding p;
  for (auto name : kCoordNames) {
    const std::string key(name);
    if (!j.contains(key)) throw ConfigError(child(path, key), "missing coordinate");
    p.set(name, read_number(j[key], child(path, key)));
  }
  p.set(time_id(), model.time);
  if (!model.chart.contains(p)) throw ConfigError(path, "point lies outside the model chart");
  return p;
}

std::uint64_t read_seed(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

void read_samples(const json& j, const std::string& path, RunConfig& config) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"count", "seed", "points"});
  if (j.contains("points") && j.contains("count")) {
    throw ConfigError(path, "give either points or count, not both");
  }
  if (j.contains("count")) {
    const json& c = j["count"];
    if (!c.is_number_integer() || c.get<long long>() < 1 || c.get<long long>() > 1000000) {
      throw ConfigError(child(path, "count"), "expected an integer in [1, 1000000]");
    }
    config.count = static_cast<int>(c.get<long long>());
  }
  if (j.contains("seed")) config.seed = read_seed(j["seed"], child(path, "seed"));
  if (j.contains("points")) {
    const json& pts = j["points"];
    const std::string ppath = child(path, "points");
    if (!pts.is_array() || pts.empty()) throw ConfigError(ppath, "expected a non-empty array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      config.points.push_back(read_point(pts[i], child(ppath, i), config.model));
    }
  }
}

void check_suite_name(const std::string& name, const std::string& path) {
  try {
    suite_info(name);
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, e.what());
  }
}

double check_tolerance(double eps, const std::string& path) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError(path, "tolerance must be positive");
  return eps;
}

Format parse_format(const std::string& text, const std::string& path) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw ConfigError(path, "format must be json or csv");
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

std::string number_text(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

json number_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json complex_json(Complex z) { return {{"re", number_json(z.real())}, {"im", number_json(z.imag())}}; }

template <typename Matrix>
json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      if constexpr (std::is_same_v<typename Matrix::Scalar, Complex>) {
        row.push_back(complex_json(m(r, c)));
      } else {
        row.push_back(number_json(m(r, c)));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvTable {
 public:
  explicit CsvTable(std::ostream& out) : out_(out) { out_ << "point,quantity,row,col,re,im\n"; }

  void add(std::size_t point, std::string_view quantity, int row, int col, Complex v) {
    out_ << point << ',' << quantity << ',' << row << ',' << col << ',' << number_text(v.real())
         << ',' << number_text(v.imag()) << '\n';
  }

  template <typename Matrix>
  void add_matrix(std::size_t point, std::string_view quantity, const Matrix& m) {
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) add(point, quantity, r, c, Complex(m(r, c)));
    }
  }

 private:
  std::ostream& out_;
};

// Runs f(i) for i in [0, n) on up to `threads` workers and rethrows the
// exception of the smallest failing index.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F f) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < count; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct PointReport {
  Binding p;
  Mat3 q, e, E, K, W, gamma, k;
  double det_e = 0.0;
  CMat3 A;
};

// 0 on success, 1 on a numerical failure, 2 on a configuration error.
template <typename F>
int guarded(std::ostream& err, F f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    err << "ashgeo: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    err << "ashgeo: invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "ashgeo: numerical failure: " << e.what() << '\n';
    return 1;
  }
}

std::string read_file(const std::string& path, const std::string& option) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(option, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) throw InvalidArgument("empty complex number");
  auto number = [&](std::string_view part, double unit) -> double {
    if (part.empty() || part == "+") return unit;
    if (part == "-") return -unit;
    std::size_t start = part.front() == '+' ? 1 : 0;
    double v = 0.0;
    const char* first = part.data() + start;
    const char* last = part.data() + part.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
      throw InvalidArgument("malformed complex number '" + std::string(text) + "'");
    }
    return v;
  };
  if (s.back() != 'i') return {number(s, 1.0), 0.0};
  const std::string_view body(s.data(), s.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, number(body, 1.0)};
  return {number(body.substr(0, split), 1.0), number(body.substr(split), 1.0)};
}

RunConfig parse_config(std::string_view json_text) {
  const json j = parse_json(json_text);
  require_object(j, "");
  reject_unknown_keys(j, "", {"frw", "split", "slice", "time", "beta", "betas", "samples", "suites",
                              "tolerances", "format"});
  const double time = j.contains("time") ? read_number(j["time"], "/time") : 0.0;
  const int sources = static_cast<int>(j.contains("frw")) + static_cast<int>(j.contains("split")) +
                      static_cast<int>(j.contains("slice"));
  if (sources != 1) throw ConfigError("", "exactly one of frw, split, slice is required");
  RunConfig config(j.contains("frw")     ? read_frw(j["frw"], "/frw", time)
                   : j.contains("split") ? read_split(j["split"], "/split", time)
                                         : read_slice(j["slice"], "/slice", time));

  if (j.contains("beta")) config.beta = read_complex(j["beta"], "/beta");
  if (j.contains("betas")) {
    const json& b = j["betas"];
    if (!b.is_array() || b.empty()) throw ConfigError("/betas", "expected a non-empty array");
    for (std::size_t i = 0; i < b.size(); ++i) {
      config.betas.push_back(read_complex(b[i], child("/betas", i)));
    }
  }
  if (j.contains("samples")) read_samples(j["samples"], "/samples", config);
  if (j.contains("suites")) {
    const json& s = j["suites"];
    if (!s.is_array()) throw ConfigError("/suites", "expected an array of suite names");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string path = child("/suites", i);
      if (!s[i].is_string()) throw ConfigError(path, "expected a suite name");
      check_suite_name(s[i].get<std::string>(), path);
      config.suites.push_back(s[i].get<std::string>());
    }
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    require_object(t, "/tolerances");
    for (const auto& [name, value] : t.items()) {
      const std::string path = child("/tolerances", name);
      check_suite_name(name, path);
      config.tolerances[name] = check_tolerance(read_number(value, path), path);
    }
  }
  if (j.contains("format")) {
    if (!j["format"].is_string()) throw ConfigError("/format", "expected json or csv");
    config.format = parse_format(j["format"].get<std::string>(), "/format");
  }
  return config;
}

HolonomyRequest parse_path(std::string_view json_text) {
  const json j = parse_json(json_text);
  require_object(j, "");
  reject_unknown_keys(j, "", {"path", "steps", "form"});
  int steps = 200;
  if (j.contains("steps")) {
    const json& s = j["steps"];
    if (!s.is_number_integer() || s.get<long long>() < 10 || s.get<long long>() > 10000000) {
      throw ConfigError("/steps", "expected an integer in [10, 10000000]");
    }
    steps = static_cast<int>(s.get<long long>());
  }
  if (!j.contains("path")) throw ConfigError("/path", "missing path");
  require_array(j["path"], "/path", 3);
  std::array<std::string, 3> components;
  for (std::size_t a = 0; a < 3; ++a) {
    const json& c = j["path"][a];
    if (c.is_number()) {
      components[a] = number_text(read_number(c, child("/path", a)));
    } else if (c.is_string()) {
      components[a] = c.get<std::string>();
    } else {
      throw ConfigError(child("/path", a), "expected an expression in s");
    }
  }
  HolonomyRequest request;
  for (std::size_t a = 0; a < 3; ++a) {
    try {
      PathSpec::parse({components[a], "0", "0"}, steps);
    } catch (const ParseError& e) {
      throw ConfigError(child("/path", a), e.what());
    }
  }
  request.path = PathSpec::parse(components, steps);
  if (j.contains("form")) {
    const json& f = j["form"];
    require_object(f, "/form");
    reject_unknown_keys(f, "/form", {"components"});
    if (!f.contains("components")) throw ConfigError("/form/components", "missing components");
    request.form = read_expr_matrix(f["components"], "/form/components");
  }
  return request;
}

std::vector<Binding> sample_points(const RunConfig& config) {
  if (!config.points.empty()) return config.points;
  SplitMix64 rng(config.seed);
  std::vector<Binding> out;
  const int n = config.count.value_or(1);
  for (int i = 0; i < n; ++i) out.push_back(config.model.sample(rng));
  return out;
}

unsigned thread_count() {
  if (const char* env = std::getenv("ASHGEO_THREADS")) {
    const std::string_view text(env);
    unsigned v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size() || v == 0) {
      throw ConfigError("ASHGEO_THREADS", "expected a positive integer, got '" + std::string(text) + "'");
    }
    return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

std::string cmd_eval(const RunConfig& config) {
  const Model& model = config.model;
  const std::vector<Binding> points = sample_points(config);
  const AshtekarConnection conn(Beta(config.beta), model.q, model.w);
  const LocalFormField form(conn, orthonormal_frame_field(model.q));

  std::vector<PointReport> reports(points.size());
  parallel_for(points.size(), thread_count(), [&](std::size_t i) {
    PointReport& r = reports[i];
    r.p = points[i];
    r.q = model.q.require_positive_definite(r.p);
    r.e = form.frame().at(r.p).matrix();
    r.det_e = r.e.determinant();
    r.E = densitize(Frame(r.e)).matrix();
    r.W = conn.weingarten_at(r.p);
    r.K = (r.q * r.W).transpose();
    const PhysicsComponents pc = form.physics_components(r.p);
    r.gamma = pc.gamma;
    r.k = pc.k;
    r.A = pc.A;
  });

  std::ostringstream out;
  if (config.format == Format::Csv) {
    CsvTable table(out);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const PointReport& r = reports[i];
      table.add(i, "t", 0, 0, r.p.get(time_id()));
      for (int a = 0; a < 3; ++a) table.add(i, kCoordNames[a], 0, 0, r.p.get(coord_id(a)));
      table.add_matrix(i, "q", r.q);
      table.add_matrix(i, "e", r.e);
      table.add(i, "det_e", 0, 0, r.det_e);
      table.add_matrix(i, "E", r.E);
      table.add_matrix(i, "K", r.K);
      table.add_matrix(i, "W", r.W);
      table.add_matrix(i, "Gamma", r.gamma);
      table.add_matrix(i, "k", r.k);
      table.add_matrix(i, "A", r.A);
    }
    return out.str();
  }

  json doc;
  doc["model"] = model.description;
  doc["beta"] = complex_json(config.beta);
  doc["points"] = json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const PointReport& r = reports[i];
    json pj;
    pj["index"] = i;
    pj["coords"] = {{"t", r.p.get(time_id())},
                    {"x1", r.p.get(coord_id(0))},
                    {"x2", r.p.get(coord_id(1))},
                    {"x3", r.p.get(coord_id(2))}};
    pj["q"] = matrix_json(r.q);
    pj["e"] = matrix_json(r.e);
    pj["det_e"] = number_json(r.det_e);
    pj["E"] = matrix_json(r.E);
    pj["K"] = matrix_json(r.K);
    pj["W"] = matrix_json(r.W);
    pj["Gamma"] = matrix_json(r.gamma);
    pj["k"] = matrix_json(r.k);
    pj["A"] = matrix_json(r.A);
    doc["points"].push_back(std::move(pj));
  }
  out << doc.dump(2) << '\n';
  return out.str();
}

std::pair<std::string, bool> cmd_check(const RunConfig& config) {
  SuiteOptions options;
  if (!config.betas.empty()) options.betas = config.betas;
  options.samples = config.count.value_or(100);
  options.seed = config.seed;
  const auto results =
      run_suites(config.suites, config.model, options, config.tolerances, thread_count());
  const bool passed =
      std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed(); });
  auto status = [](const SuiteResult& r) {
    return r.skipped ? "skipped" : (r.passed() ? "pass" : "fail");
  };

  std::ostringstream out;
  if (config.format == Format::Csv) {
    out << "suite,status,max_error,tolerance,samples,note\n";
    for (const auto& r : results) {
      out << r.name << ',' << status(r) << ',' << number_text(r.max_error) << ','
          << number_text(r.tolerance) << ',' << r.samples << ',' << csv_field(r.note) << '\n';
    }
    return {out.str(), passed};
  }
  json doc;
  doc["model"] = config.model.description;
  doc["seed"] = config.seed;
  doc["samples"] = options.samples;
  doc["suites"] = json::array();
  for (const auto& r : results) {
    doc["suites"].push_back({{"name", r.name},
                             {"status", status(r)},
                             {"max_error", number_json(r.max_error)},
                             {"tolerance", r.tolerance},
                             {"samples", r.samples},
                             {"note", r.note}});
  }
  doc["passed"] = passed;
  out << doc.dump(2) << '\n';
  return {out.str(), passed};
}

std::string cmd_holonomy(const RunConfig& config, const HolonomyRequest& request) {
  const Model& model = config.model;
  LieFormField form;
  if (request.form) {
    form = component_form(*request.form);
  } else {
    const AshtekarConnection conn(Beta(config.beta), model.q, model.w);
    form = ashtekar_form(LocalFormField(conn, orthonormal_frame_field(model.q)));
  }
  HolonomyDomain domain{model.chart, Binding{}};
  domain.fixed.set(time_id(), model.time);

  const CMat3 h = holonomy_so3(form, request.path, domain);
  const Mat2c u = holonomy_su2(form, request.path, domain);
  const double residual = (covering_map_complex(u) - h).norm();
  const double unitarity = (u.adjoint() * u - Mat2c::Identity()).norm();
  const Complex det = u.determinant();

  std::ostringstream out;
  if (config.format == Format::Csv) {
    CsvTable table(out);
    table.add_matrix(0, "so3", h);
    table.add_matrix(0, "su2", u);
    table.add(0, "det_su2", 0, 0, det);
    table.add(0, "residual", 0, 0, residual);
    table.add(0, "unitarity_drift", 0, 0, unitarity);
    return out.str();
  }
  json doc;
  doc["model"] = model.description;
  doc["beta"] = complex_json(config.beta);
  doc["steps"] = request.path.steps;
  doc["so3"] = matrix_json(h);
  doc["su2"] = matrix_json(u);
  doc["det_su2"] = complex_json(det);
  doc["residual"] = number_json(residual);
  doc["unitarity_drift"] = number_json(unitarity);
  out << doc.dump(2) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Command line
// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ashtekar variables on Cauchy slices: evaluate, check, holonomy", "ashgeo"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> suites;
  std::vector<std::string> tols;
  std::string path_file;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "configuration file (json)")->required();
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", seed, "seed for sampled points");
  };
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate the Ashtekar variables at points");
  common(eval_cmd);
  CLI::App* check_cmd = app.add_subcommand("check", "run the identity and property suites");
  common(check_cmd);
  check_cmd->add_option("--suite", suites, "run only this suite (repeatable)");
  check_cmd->add_option("--tol", tols, "tolerance override SUITE=EPS (repeatable)");
  CLI::App* hol_cmd = app.add_subcommand("holonomy", "holonomy along a path");
  common(hol_cmd);
  hol_cmd->add_option("--path", path_file, "path file (json)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ashgeo: " << e.what() << '\n';
    return 2;
  }

  return guarded(err, [&]() -> int {
    RunConfig config = parse_config(read_file(config_path, "--config"));
    if (!format.empty()) config.format = parse_format(format, "--format");
    if (seed) config.seed = *seed;
    if (!suites.empty()) {
      for (const auto& s : suites) check_suite_name(s, "--suite");
      config.suites = suites;
    }
    for (const auto& t : tols) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw ConfigError("--tol", "expected SUITE=EPS, got '" + t + "'");
      const std::string name = t.substr(0, eq);
      check_suite_name(name, "--tol");
      double eps = 0.0;
      const std::string value = t.substr(eq + 1);
      const auto res = std::from_chars(value.data(), value.data() + value.size(), eps);
      if (value.empty() || res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw ConfigError("--tol", "malformed tolerance '" + value + "'");
      }
      config.tolerances[name] = check_tolerance(eps, "--tol");
    }
    thread_count();  // validate ASHGEO_THREADS before doing any work

    if (eval_cmd->parsed()) {
      out << cmd_eval(config);
      return 0;
    }
    if (check_cmd->parsed()) {
      auto [text, passed] = cmd_check(config);
      out << text;
      return passed ? 0 : 1;
    }
    const HolonomyRequest request = parse_path(read_file(path_file, "--path"));
    out << cmd_holonomy(config, request);
    return 0;
  });
}

}  // namespace ashgeo::cli
