#include "mcfsol/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "mcfsol/error.hpp"

namespace mcfsol {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

// ---------------------------------------------------------------------------
// TOML subset reader

struct Value {
  enum class Type { Number, String, Bool, Array } type = Type::Number;
  double number = 0.0;
  bool integer = false;
  std::string text;
  bool flag = false;
  std::vector<Value> items;
  int line = 0;
};

struct Entry {
  std::string table;
  std::string key;
  Value value;
  int line = 0;
};

class Reader {
 public:
  explicit Reader(const std::string& text) : s_(text) {}

  std::vector<Entry> read() {
    std::vector<Entry> out;
    std::string table;
    std::set<std::string> tables, keys;
    while (true) {
      skip_space();
      if (pos_ >= s_.size()) break;
      if (s_[pos_] == '[') {
        const int header_line = line_;
        ++pos_;
        const std::size_t close = s_.find(']', pos_);
        if (close == std::string::npos) error("unterminated table header");
        table = trim(s_.substr(pos_, close - pos_));
        pos_ = close + 1;
        if (table.empty() || !is_bare(table)) error("bad table name '" + table + "'", header_line);
        if (!tables.insert(table).second) error("table [" + table + "] appears twice", header_line);
        continue;
      }
      Entry e;
      e.line = line_;
      e.key = bare_key();
      if (table.empty()) error("key '" + e.key + "' outside any table");
      skip_inline();
      if (pos_ >= s_.size() || s_[pos_] != '=') error("expected '=' after '" + e.key + "'");
      ++pos_;
      e.table = table;
      e.value = value();
      if (!keys.insert(table + "." + e.key).second) error("key '" + e.key + "' repeated in [" + table + "]", e.line);
      out.push_back(std::move(e));
    }
    return out;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;

  [[noreturn]] void error(const std::string& msg, int line = 0) const {
    fail(ErrorCode::ParseError, "line " + std::to_string(line ? line : line_) + ": " + msg);
  }

  static std::string trim(const std::string& x) {
    const auto a = x.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    return x.substr(a, x.find_last_not_of(" \t") - a + 1);
  }

  static bool bare_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

  static bool is_bare(const std::string& x) {
    for (char c : x) {
      if (!bare_char(c)) return false;
    }
    return true;
  }

  void skip_space() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void skip_inline() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  std::string bare_key() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && bare_char(s_[pos_])) ++pos_;
    if (pos_ == start) error(std::string("unexpected character '") + s_[pos_] + "'");
    return s_.substr(start, pos_ - start);
  }

  Value value() {
    skip_inline();
    Value v;
    v.line = line_;
    if (pos_ >= s_.size() || s_[pos_] == '\n') error("missing value");
    const char c = s_[pos_];
    if (c == '"') {
      v.type = Value::Type::String;
      ++pos_;
      while (true) {
        if (pos_ >= s_.size() || s_[pos_] == '\n') error("unterminated string");
        const char d = s_[pos_++];
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= s_.size()) error("unterminated string");
          const char e = s_[pos_++];
          switch (e) {
            case 'n': v.text += '\n'; break;
            case 't': v.text += '\t'; break;
            case '"': v.text += '"'; break;
            case '\\': v.text += '\\'; break;
            default: error(std::string("unknown escape \\") + e);
          }
        } else {
          v.text += d;
        }
      }
      return v;
    }
    if (c == '[') {
      v.type = Value::Type::Array;
      ++pos_;
      while (true) {
        skip_space();
        if (pos_ >= s_.size()) error("unterminated array", v.line);
        if (s_[pos_] == ']') {
          ++pos_;
          break;
        }
        v.items.push_back(value());
        if (v.items.back().type == Value::Type::Array) error("nested arrays are not supported");
        skip_space();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
        } else if (pos_ < s_.size() && s_[pos_] != ']') {
          error("expected ',' or ']' in array");
        }
      }
      return v;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (bare_char(s_[pos_]) || s_[pos_] == '.' || s_[pos_] == '+')) ++pos_;
    std::string word = s_.substr(start, pos_ - start);
    if (word == "true" || word == "false") {
      v.type = Value::Type::Bool;
      v.flag = word == "true";
      return v;
    }
    std::erase(word, '_');
    if (word == "inf" || word == "+inf") {
      v.number = INFINITY;
      return v;
    }
    if (word == "-inf") {
      v.number = -INFINITY;
      return v;
    }
    const char* first = word.data() + (word.starts_with('+') ? 1 : 0);
    const auto res = std::from_chars(first, word.data() + word.size(), v.number);
    if (word.empty() || res.ec != std::errc() || res.ptr != word.data() + word.size()) {
      error("bad value '" + word + "'");
    }
    v.integer = word.find_first_of(".eE") == std::string::npos;
    return v;
  }
};

// ---------------------------------------------------------------------------
// Binding of entries to the config structs

class Binder {
 public:
  using Setter = std::function<void(const Value&)>;

  void on(const std::string& key, Setter setter) { setters_[key] = std::move(setter); }

  void apply(const Entry& e) {
    auto it = setters_.find(e.key);
    if (it == setters_.end()) invalid(e, "unknown key");
    current_ = &e;
    it->second(e.value);
  }

  [[noreturn]] static void invalid(const Entry& e, const std::string& msg) {
    fail(ErrorCode::ValidationError,
         "line " + std::to_string(e.line) + ": [" + e.table + "] " + e.key + ": " + msg);
  }

  const Entry& current() const { return *current_; }

 private:
  std::map<std::string, Setter> setters_;
  const Entry* current_ = nullptr;
};

struct Context {
  Binder* binder = nullptr;

  [[noreturn]] void bad(const std::string& msg) const { Binder::invalid(binder->current(), msg); }

  double number(const Value& v) const {
    if (v.type != Value::Type::Number) bad("expected a number");
    return v.number;
  }
  double finite(const Value& v) const {
    const double x = number(v);
    if (!std::isfinite(x)) bad("expected a finite number");
    return x;
  }
  int integer(const Value& v) const {
    const double x = number(v);
    if (!(x == std::floor(x)) || std::abs(x) > 1e9) bad("expected an integer");
    return static_cast<int>(x);
  }
  std::string string(const Value& v) const {
    if (v.type != Value::Type::String) bad("expected a string");
    return v.text;
  }
  std::vector<double> numbers(const Value& v) const {
    if (v.type != Value::Type::Array) bad("expected an array of numbers");
    std::vector<double> out;
    for (const auto& item : v.items) out.push_back(finite(item));
    return out;
  }
  std::array<double, 2> pair(const Value& v) const {
    const auto xs = numbers(v);
    if (xs.size() != 2 || !(xs[0] < xs[1])) bad("expected [lo, hi] with lo < hi");
    return {xs[0], xs[1]};
  }
  std::string one_of(const Value& v, std::initializer_list<const char*> names) const {
    const std::string s = string(v);
    for (const char* n : names) {
      if (s == n) return s;
    }
    std::string list;
    for (const char* n : names) list += std::string(list.empty() ? "" : ", ") + n;
    bad("'" + s + "' is not one of " + list);
  }
};

bool schwarzschild_kind(const std::string& kind) { return kind == "schwarzschild" || kind == "ads" || kind == "rn"; }

std::pair<std::vector<double>, std::vector<double>> read_two_columns(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ValidationError, "cannot open table '" + path + "'");
  std::vector<double> a, b;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string x, y;
    if (!std::getline(ss, x, ',') || !std::getline(ss, y)) {
      fail(ErrorCode::ParseError, path + ":" + std::to_string(lineno) + ": expected two columns");
    }
    try {
      a.push_back(std::stod(x));
      b.push_back(std::stod(y));
    } catch (const std::exception&) {
      if (a.empty() && lineno == 1) continue;  // header
      fail(ErrorCode::ParseError, path + ":" + std::to_string(lineno) + ": bad number");
    }
  }
  return {a, b};
}

}  // namespace

AmbientSpace build_space(const SpaceConfig& sc) {
  AmbientSpace space = [&] {
    const std::string& k = sc.kind;
    if (k == "euclidean-cone") return AmbientSpace::euclidean_cone(sc.dim_m);
    if (k == "hyperbolic-horo") return AmbientSpace::hyperbolic_horosphere(sc.dim_m);
    if (k == "hyperbolic-hyper") return AmbientSpace::hyperbolic_hypersphere(sc.dim_m);
    if (k == "sphere-cone") return AmbientSpace::sphere_cone(sc.dim_m);
    if (k == "product") return AmbientSpace::product(sc.dim_m, sc.h0);
    if (schwarzschild_kind(k)) {
      SchwarzschildParams p;
      p.m = sc.dim_m;
      p.mass = sc.mass;
      p.kbar = sc.kbar;
      p.charge = sc.charge;
      p.family = k == "ads" ? SchwarzschildFamily::AntiDeSitter
                 : k == "rn" ? SchwarzschildFamily::ReissnerNordstrom
                             : SchwarzschildFamily::Plain;
      return AmbientSpace::schwarzschild(p);
    }
    if (k == "table") {
      auto [t, h] = read_two_columns(sc.table);
      return AmbientSpace::from_table(sc.dim_m, std::move(t), std::move(h), sc.fiber_curvature);
    }
    fail(ErrorCode::ValidationError, "unknown space kind '" + k + "'");
  }();
  if (sc.window) space = space.with_window((*sc.window)[0], (*sc.window)[1]);
  if (sc.base_point) space = space.with_base_point(*sc.base_point);
  return space;
}

SolitonProblem build_problem(const RunConfig& config) {
  if (!config.space) fail(ErrorCode::ValidationError, "the command needs a [space] table");
  return make_problem(build_space(*config.space), config.soliton ? config.soliton->c : 0.0);
}

FiberGeometry fiber_from_name(const std::string& name, const SolitonProblem& problem) {
  if (name == "flat") return FiberGeometry::Flat;
  if (name == "hyperbolic") return FiberGeometry::Hyperbolic;
  if (name == "spherical") return FiberGeometry::Spherical;
  return default_fiber(problem.space);
}

Boundary boundary_from_name(const std::string& name) {
  if (name == "neumann") return Boundary::Neumann;
  if (name == "closed") return Boundary::Closed;
  return Boundary::Dirichlet;
}

RunConfig parse_config(const std::string& text) {
  const std::vector<Entry> entries = Reader(text).read();
  RunConfig cfg;
  std::map<std::string, Binder> binders;
  Context cx;
  // Lines of the entries, for diagnostics raised after binding.
  std::map<std::string, const Entry*> where;

  auto& space = binders["space"];
  space.on("kind", [&](const Value& v) {
    cfg.space->kind = cx.one_of(v, {"euclidean-cone", "hyperbolic-horo", "hyperbolic-hyper", "sphere-cone", "product",
                                    "schwarzschild", "ads", "rn", "table"});
  });
  space.on("dim_m", [&](const Value& v) { cfg.space->dim_m = cx.integer(v); });
  space.on("mass", [&](const Value& v) { cfg.space->mass = cx.finite(v); });
  space.on("kbar", [&](const Value& v) { cfg.space->kbar = cx.integer(v); });
  space.on("charge", [&](const Value& v) { cfg.space->charge = cx.finite(v); });
  space.on("h0", [&](const Value& v) { cfg.space->h0 = cx.finite(v); });
  space.on("table", [&](const Value& v) { cfg.space->table = cx.string(v); });
  space.on("fiber_curvature", [&](const Value& v) { cfg.space->fiber_curvature = cx.finite(v); });
  space.on("window", [&](const Value& v) { cfg.space->window = cx.pair(v); });
  space.on("base_point", [&](const Value& v) { cfg.space->base_point = cx.finite(v); });

  auto& soliton = binders["soliton"];
  soliton.on("c", [&](const Value& v) { cfg.soliton->c = cx.finite(v); });
  std::optional<int> soliton_m;
  soliton.on("m", [&](const Value& v) { soliton_m = cx.integer(v); });

  auto& slices = binders["slices"];
  slices.on("nodes", [&](const Value& v) { cfg.slices->nodes = cx.integer(v); });
  slices.on("dip_tolerance", [&](const Value& v) { cfg.slices->dip_tolerance = cx.finite(v); });

  auto& shoot = binders["shoot"];
  shoot.on("u0", [&](const Value& v) { cfg.shoot->u0 = cx.finite(v); });
  shoot.on("rho_max", [&](const Value& v) { cfg.shoot->rho_max = cx.finite(v); });
  shoot.on("grid", [&](const Value& v) { cfg.shoot->grid = cx.integer(v); });
  shoot.on("fiber", [&](const Value& v) { cfg.shoot->fiber = cx.one_of(v, {"auto", "flat", "hyperbolic", "spherical"}); });
  shoot.on("shots", [&](const Value& v) { cfg.shoot->shots = cx.integer(v); });
  shoot.on("u0_grid", [&](const Value& v) { cfg.shoot->u0_grid = cx.numbers(v); });

  auto& curve = binders["curve"];
  curve.on("k", [&](const Value& v) { cfg.curve->k = cx.finite(v); });
  curve.on("tau", [&](const Value& v) { cfg.curve->tau = cx.pair(v); });
  curve.on("samples", [&](const Value& v) { cfg.curve->samples = cx.integer(v); });

  auto& spectrum = binders["spectrum"];
  spectrum.on("target", [&](const Value& v) {
    cfg.spectrum->target = cx.one_of(v, {"none", "slice", "equator", "horosphere"});
  });
  spectrum.on("t0", [&](const Value& v) { cfg.spectrum->t0 = cx.finite(v); });
  spectrum.on("interval", [&](const Value& v) { cfg.spectrum->interval = cx.pair(v); });
  spectrum.on("boundary", [&](const Value& v) {
    cfg.spectrum->boundary = cx.one_of(v, {"dirichlet", "neumann", "closed"});
  });
  spectrum.on("grid_n", [&](const Value& v) { cfg.spectrum->grid_n = cx.integer(v); });
  spectrum.on("weight", [&](const Value& v) { cfg.spectrum->weight = cx.string(v); });
  spectrum.on("q", [&](const Value& v) { cfg.spectrum->q = cx.finite(v); });
  spectrum.on("potential", [&](const Value& v) { cfg.spectrum->potential = cx.string(v); });

  auto& osc = binders["oscillate"];
  osc.on("v", [&](const Value& v) { cfg.oscillate->v = cx.string(v); });
  osc.on("A", [&](const Value& v) { cfg.oscillate->A = cx.string(v); });
  osc.on("R", [&](const Value& v) { cfg.oscillate->R = cx.finite(v); });
  osc.on("window", [&](const Value& v) { cfg.oscillate->window = cx.pair(v); });
  osc.on("min_zeros", [&](const Value& v) { cfg.oscillate->min_zeros = cx.integer(v); });
  osc.on("samples", [&](const Value& v) { cfg.oscillate->samples = cx.integer(v); });
  osc.on("kinks", [&](const Value& v) { cfg.oscillate->kinks = cx.numbers(v); });

  auto& growth = binders["growth"];
  growth.on("kind", [&](const Value& v) { cfg.growth->kind = cx.one_of(v, {"ball-volume", "sphere-area"}); });
  growth.on("profile", [&](const Value& v) { cfg.growth->profile = cx.string(v); });
  growth.on("r_min", [&](const Value& v) { cfg.growth->r_min = cx.finite(v); });
  growth.on("r_max", [&](const Value& v) { cfg.growth->r_max = cx.finite(v); });

  auto& output = binders["output"];
  output.on("path", [&](const Value& v) { cfg.output.path = cx.string(v); });
  output.on("format", [&](const Value& v) { cfg.output.format = cx.one_of(v, {"csv", "json"}); });

  for (const Entry& e : entries) {
    auto it = binders.find(e.table);
    if (it == binders.end()) {
      fail(ErrorCode::ValidationError, "line " + std::to_string(e.line) + ": unknown table [" + e.table + "]");
    }
    if (e.table == "space" && !cfg.space) cfg.space.emplace();
    if (e.table == "soliton" && !cfg.soliton) cfg.soliton.emplace();
    if (e.table == "slices" && !cfg.slices) cfg.slices.emplace();
    if (e.table == "shoot" && !cfg.shoot) cfg.shoot.emplace();
    if (e.table == "curve" && !cfg.curve) cfg.curve.emplace();
    if (e.table == "spectrum" && !cfg.spectrum) cfg.spectrum.emplace();
    if (e.table == "oscillate" && !cfg.oscillate) cfg.oscillate.emplace();
    if (e.table == "growth" && !cfg.growth) cfg.growth.emplace();
    cx.binder = &it->second;
    it->second.apply(e);
    where[e.table + "." + e.key] = &e;
  }

  // Cross-field checks, reported against the most relevant line.
  auto invalid = [&](const std::string& table, const std::string& key, const std::string& msg) {
    auto it = where.find(table + "." + key);
    if (it != where.end()) Binder::invalid(*it->second, msg);
    fail(ErrorCode::ValidationError, "[" + table + "] " + key + ": " + msg);
  };

  if (cfg.space) {
    const SpaceConfig& s = *cfg.space;
    if (s.kind.empty()) invalid("space", "kind", "missing space kind");
    if (s.dim_m < 1) invalid("space", "dim_m", "dim_m must be at least 1");
    if (schwarzschild_kind(s.kind)) {
      if (s.dim_m < 2) invalid("space", "dim_m", "Schwarzschild spaces need dim_m >= 2");
      if (!(s.mass > 0.0)) invalid("space", "mass", "mass must be positive");
      if (s.kind == "ads" && (s.kbar < -1 || s.kbar > 1)) invalid("space", "kbar", "kbar must be -1, 0 or 1");
    }
    if (s.kind == "product" && !(s.h0 > 0.0)) invalid("space", "h0", "h0 must be positive");
    if (s.kind == "table" && s.table.empty()) invalid("space", "table", "table spaces need a csv path");
    try {
      build_space(s);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ValidationError || e.code() == ErrorCode::ParseError) throw;
      const std::string key = s.kind == "rn" && where.count("space.charge") ? "charge" : "kind";
      if (e.code() == ErrorCode::DegenerateHorizon) invalid("space", key, std::string("extremal horizon (") + e.what() + ")");
      invalid("space", key, e.what());
    }
    if (soliton_m && *soliton_m != s.dim_m) invalid("soliton", "m", "m must equal [space] dim_m");
  }
  if (cfg.slices && cfg.slices->nodes < 16) invalid("slices", "nodes", "nodes must be at least 16");
  if (cfg.shoot) {
    if (!(cfg.shoot->rho_max > 0.0)) invalid("shoot", "rho_max", "rho_max must be positive");
    if (cfg.shoot->grid < 1) invalid("shoot", "grid", "grid must be positive");
    if (cfg.shoot->shots < 1) invalid("shoot", "shots", "shots must be positive");
  }
  if (cfg.curve) {
    if (!(cfg.curve->k > 0.0)) invalid("curve", "k", "k must be positive");
    if (cfg.curve->samples < 3) invalid("curve", "samples", "samples must be at least 3");
  }
  if (cfg.spectrum) {
    if (cfg.spectrum->grid_n < 16) invalid("spectrum", "grid_n", "grid_n must be at least 16");
    if (cfg.spectrum->q && cfg.spectrum->potential) invalid("spectrum", "potential", "give q or potential, not both");
    for (const char* key : {"weight", "potential"}) {
      const std::string spec = std::string(key) == "weight" ? cfg.spectrum->weight : cfg.spectrum->potential.value_or("power:0");
      try {
        RadialFunction::parse(spec);
      } catch (const Error& e) {
        invalid("spectrum", key, e.what());
      }
    }
  }
  if (cfg.oscillate) {
    for (const char* key : {"v", "A"}) {
      try {
        RadialFunction::parse(std::string(key) == "v" ? cfg.oscillate->v : cfg.oscillate->A);
      } catch (const Error& e) {
        invalid("oscillate", key, e.what());
      }
    }
    if (!(cfg.oscillate->R >= 0.0)) invalid("oscillate", "R", "R must be nonnegative");
    if (cfg.oscillate->min_zeros < 1) invalid("oscillate", "min_zeros", "min_zeros must be positive");
    if (cfg.oscillate->samples < 2) invalid("oscillate", "samples", "samples must be at least 2");
  }
  if (cfg.growth) {
    try {
      RadialFunction::parse(cfg.growth->profile);
    } catch (const Error& e) {
      invalid("growth", "profile", e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string array(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + format_double(xs[i]);
  return out + "]";
}

std::string array(const std::array<double, 2>& xs) { return array(std::vector<double>(xs.begin(), xs.end())); }

}  // namespace

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  auto kv = [&](const std::string& key, const std::string& value) { os << key << " = " << value << "\n"; };
  auto num = [&](const std::string& key, double x) { kv(key, format_double(x)); };
  auto str = [&](const std::string& key, const std::string& s) { kv(key, quoted(s)); };
  if (c.space) {
    const auto& s = *c.space;
    os << "[space]\n";
    str("kind", s.kind);
    num("dim_m", s.dim_m);
    num("mass", s.mass);
    num("kbar", s.kbar);
    num("charge", s.charge);
    num("h0", s.h0);
    str("table", s.table);
    if (s.fiber_curvature) num("fiber_curvature", *s.fiber_curvature);
    if (s.window) kv("window", array(*s.window));
    if (s.base_point) num("base_point", *s.base_point);
    os << "\n";
  }
  if (c.soliton) {
    os << "[soliton]\n";
    num("c", c.soliton->c);
    os << "\n";
  }
  if (c.slices) {
    os << "[slices]\n";
    num("nodes", c.slices->nodes);
    num("dip_tolerance", c.slices->dip_tolerance);
    os << "\n";
  }
  if (c.shoot) {
    const auto& s = *c.shoot;
    os << "[shoot]\n";
    num("u0", s.u0);
    num("rho_max", s.rho_max);
    num("grid", s.grid);
    str("fiber", s.fiber);
    num("shots", s.shots);
    kv("u0_grid", array(s.u0_grid));
    os << "\n";
  }
  if (c.curve) {
    os << "[curve]\n";
    num("k", c.curve->k);
    kv("tau", array(c.curve->tau));
    num("samples", c.curve->samples);
    os << "\n";
  }
  if (c.spectrum) {
    const auto& s = *c.spectrum;
    os << "[spectrum]\n";
    str("target", s.target);
    num("t0", s.t0);
    kv("interval", array(s.interval));
    str("boundary", s.boundary);
    num("grid_n", s.grid_n);
    str("weight", s.weight);
    if (s.q) num("q", *s.q);
    if (s.potential) str("potential", *s.potential);
    os << "\n";
  }
  if (c.oscillate) {
    const auto& s = *c.oscillate;
    os << "[oscillate]\n";
    str("v", s.v);
    str("A", s.A);
    num("R", s.R);
    if (s.window) kv("window", array(*s.window));
    num("min_zeros", s.min_zeros);
    num("samples", s.samples);
    kv("kinks", array(s.kinks));
    os << "\n";
  }
  if (c.growth) {
    const auto& s = *c.growth;
    os << "[growth]\n";
    str("kind", s.kind);
    str("profile", s.profile);
    num("r_min", s.r_min);
    num("r_max", s.r_max);
    os << "\n";
  }
  os << "[output]\n";
  str("path", c.output.path);
  str("format", c.output.format);
  return os.str();
}

}  // namespace mcfsol
