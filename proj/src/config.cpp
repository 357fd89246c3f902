#include "glhs/config.hpp"

#include "glhs/testcases.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace glhs {

std::string_view to_string(WeightMode m) {
  return m == WeightMode::reciprocal ? "reciprocal" : "literal";
}
std::string_view to_string(EtaMode m) { return m == EtaMode::literal ? "literal" : "rms"; }
std::string_view to_string(Truncation t) {
  return t == Truncation::hyperbolic_cross ? "hyperbolic_cross" : "total_degree";
}
std::string_view to_string(DesignMode m) { return m == DesignMode::shared ? "shared" : "per_rep"; }

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Parsers return an error message, empty on success.
std::string parse_real(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [p, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || p != last || !std::isfinite(out)) return "expected a real number, got '" + s + "'";
  return {};
}

std::string parse_count(const std::string& s, std::uint64_t& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec == std::errc() && p == s.data() + s.size()) return {};
  // Scientific notation with an integral value, e.g. 1e7.
  double d = 0.0;
  if (parse_real(s, d).empty() && d >= 0.0 && d <= 9.007199254740992e15 && std::floor(d) == d) {
    out = static_cast<std::uint64_t>(d);
    return {};
  }
  return "expected a non-negative integer, got '" + s + "'";
}

std::string parse_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "yes" || s == "on" || s == "1") {
    out = true;
    return {};
  }
  if (s == "false" || s == "no" || s == "off" || s == "0") {
    out = false;
    return {};
  }
  return "expected true or false, got '" + s + "'";
}

struct Key {
  std::string section;
  std::string name;
  std::function<std::string(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <class T>
Key count_key(std::string section, std::string name, T GlhsConfig::*field) {
  return {std::move(section), std::move(name),
          [field](ExperimentConfig& c, const std::string& v) {
            std::uint64_t n = 0;
            auto err = parse_count(v, n);
            if (err.empty()) c.glhs.*field = static_cast<T>(n);
            return err;
          },
          [field](const ExperimentConfig& c) { return std::to_string(c.glhs.*field); }};
}

Key int_key(std::string section, std::string name, int GlhsConfig::*field) {
  return {std::move(section), std::move(name),
          [field](ExperimentConfig& c, const std::string& v) {
            int n = 0;
            auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
            if (ec != std::errc() || p != v.data() + v.size()) return "expected an integer, got '" + v + "'";
            c.glhs.*field = n;
            return std::string();
          },
          [field](const ExperimentConfig& c) { return std::to_string(c.glhs.*field); }};
}

Key real_key(std::string section, std::string name, double GlhsConfig::*field) {
  return {std::move(section), std::move(name),
          [field](ExperimentConfig& c, const std::string& v) { return parse_real(v, c.glhs.*field); },
          [field](const ExperimentConfig& c) { return real(c.glhs.*field); }};
}

Key bool_key(std::string section, std::string name, bool GlhsConfig::*field) {
  return {std::move(section), std::move(name),
          [field](ExperimentConfig& c, const std::string& v) { return parse_bool(v, c.glhs.*field); },
          [field](const ExperimentConfig& c) { return std::string(c.glhs.*field ? "true" : "false"); }};
}

template <class E>
Key enum_key(std::string section, std::string name, E GlhsConfig::*field, std::vector<E> values) {
  return {std::move(section), std::move(name),
          [field, values](ExperimentConfig& c, const std::string& v) {
            std::string options;
            for (E e : values) {
              if (to_string(e) == v) {
                c.glhs.*field = e;
                return std::string();
              }
              options += (options.empty() ? "" : ", ") + std::string(to_string(e));
            }
            return "expected one of " + options + ", got '" + v + "'";
          },
          [field](const ExperimentConfig& c) { return std::string(to_string(c.glhs.*field)); }};
}

std::vector<Key> build_keys() {
  std::vector<Key> k;
  k.push_back({"testcases", "case",
               [](ExperimentConfig& c, const std::string& v) {
                 c.test_case = v;
                 return std::string();
               },
               [](const ExperimentConfig& c) { return c.test_case; }});

  k.push_back(enum_key("basis", "truncation", &GlhsConfig::truncation,
                       {Truncation::hyperbolic_cross, Truncation::total_degree}));
  k.push_back(count_key("basis", "index_cap", &GlhsConfig::index_cap));

  k.push_back(int_key("regression", "cv_folds", &GlhsConfig::cv_folds));
  k.push_back(bool_key("regression", "incremental", &GlhsConfig::incremental));
  k.push_back(real_key("regression", "incremental_tolerance", &GlhsConfig::incremental_tolerance));

  k.push_back(enum_key("christoffel", "weight_mode", &GlhsConfig::weight_mode,
                       {WeightMode::reciprocal, WeightMode::literal}));

  k.push_back(count_key("domain_learning", "dense_zone_size", &GlhsConfig::dense_zone_size));
  k.push_back(real_key("domain_learning", "batch_factor", &GlhsConfig::batch_factor));
  k.push_back(real_key("domain_learning", "rect_padding", &GlhsConfig::rect_padding));

  k.push_back(count_key("glhs", "grid_points", &GlhsConfig::grid_points));
  k.push_back(real_key("glhs", "conservativeness", &GlhsConfig::conservativeness));
  k.push_back(real_key("glhs", "alpha", &GlhsConfig::alpha));
  k.push_back(count_key("glhs", "initial_samples", &GlhsConfig::initial_samples));
  k.push_back(int_key("glhs", "global_order", &GlhsConfig::global_order));
  k.push_back(int_key("glhs", "local_max_order", &GlhsConfig::local_max_order));
  k.push_back({"glhs", "local_samples",
               [](ExperimentConfig& c, const std::string& v) {
                 if (v == "auto") {
                   c.glhs.local_samples.reset();
                   return std::string();
                 }
                 std::uint64_t n = 0;
                 auto err = parse_count(v, n);
                 if (err.empty()) c.glhs.local_samples = static_cast<std::size_t>(n);
                 return err;
               },
               [](const ExperimentConfig& c) {
                 return c.glhs.local_samples ? std::to_string(*c.glhs.local_samples) : std::string("auto");
               }});
  k.push_back(bool_key("glhs", "auto_raise_local_samples", &GlhsConfig::auto_raise_local_samples));
  k.push_back(int_key("glhs", "max_iterations", &GlhsConfig::max_iterations));
  k.push_back(enum_key("glhs", "eta_mode", &GlhsConfig::eta_mode, {EtaMode::literal, EtaMode::rms}));
  k.push_back({"glhs", "design_seed",
               [](ExperimentConfig& c, const std::string& v) {
                 std::uint64_t n = 0;
                 auto err = parse_count(v, n);
                 if (err.empty()) c.design_seed = n;
                 return err;
               },
               [](const ExperimentConfig& c) { return std::to_string(c.design_seed); }});
  k.push_back({"glhs", "design_mode",
               [](ExperimentConfig& c, const std::string& v) {
                 if (v == "shared") c.design_mode = DesignMode::shared;
                 else if (v == "per_rep") c.design_mode = DesignMode::per_rep;
                 else return "expected shared or per_rep, got '" + v + "'";
                 return std::string();
               },
               [](const ExperimentConfig& c) { return std::string(to_string(c.design_mode)); }});

  k.push_back(count_key("estimators", "mc_samples", &GlhsConfig::mc_samples));
  k.push_back({"estimators", "ni_budget",
               [](ExperimentConfig& c, const std::string& v) {
                 if (v == "auto") {
                   c.ni_budget.reset();
                   return std::string();
                 }
                 std::uint64_t n = 0;
                 auto err = parse_count(v, n);
                 if (err.empty()) c.ni_budget = static_cast<std::size_t>(n);
                 return err;
               },
               [](const ExperimentConfig& c) {
                 return c.ni_budget ? std::to_string(*c.ni_budget) : std::string("auto");
               }});
  auto plain_count = [](std::string name, std::size_t ExperimentConfig::*field) {
    return Key{"estimators", std::move(name),
               [field](ExperimentConfig& c, const std::string& v) {
                 std::uint64_t n = 0;
                 auto err = parse_count(v, n);
                 if (err.empty()) c.*field = static_cast<std::size_t>(n);
                 return err;
               },
               [field](const ExperimentConfig& c) { return std::to_string(c.*field); }};
  };
  k.push_back(plain_count("ni_max_draws", &ExperimentConfig::ni_max_draws));
  k.push_back(plain_count("li_samples", &ExperimentConfig::li_samples));
  k.push_back(plain_count("li_group_size", &ExperimentConfig::li_group_size));
  k.push_back({"estimators", "li_tolerance",
               [](ExperimentConfig& c, const std::string& v) {
                 if (v == "auto") {
                   c.li_tolerance.reset();
                   return std::string();
                 }
                 double d = 0.0;
                 auto err = parse_real(v, d);
                 if (err.empty()) c.li_tolerance = d;
                 return err;
               },
               [](const ExperimentConfig& c) {
                 return c.li_tolerance ? real(*c.li_tolerance) : std::string("auto");
               }});
  k.push_back(plain_count("li_max_groups", &ExperimentConfig::li_max_groups));
  return k;
}

const std::vector<Key>& keys() {
  static const std::vector<Key> k = build_keys();
  return k;
}

struct Assignment {
  std::string value;
  int line;
};

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Key& k : keys()) out.push_back(k.section + "." + k.name);
    return out;
  }();
  return names;
}

ConfigLoad parse_config(std::string_view text, std::string_view origin) {
  ConfigLoad out;
  auto where = [&](int line) { return std::string(origin) + ":" + std::to_string(line) + ": "; };

  std::set<std::string> sections;
  for (const Key& k : keys()) sections.insert(k.section);

  std::map<std::string, Assignment> found;  // "section.key"
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string line = trim(raw);
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        out.errors.push_back(where(line_no) + "unterminated section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!sections.count(section)) {
        out.errors.push_back(where(line_no) + "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      out.errors.push_back(where(line_no) + "expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      out.errors.push_back(where(line_no) + "'" + key + "' appears before any [section]");
      continue;
    }
    const std::string full = section + "." + key;
    bool known = false;
    for (const Key& k : keys()) known = known || (k.section == section && k.name == key);
    if (!known) {
      if (sections.count(section)) {
        out.errors.push_back(where(line_no) + "unknown key '" + key + "' in [" + section + "]");
      }
      continue;
    }
    if (value.empty()) {
      out.errors.push_back(where(line_no) + "'" + key + "' has no value");
      continue;
    }
    if (auto it = found.find(full); it != found.end()) {
      out.errors.push_back(where(line_no) + "'" + full + "' already set on line " +
                           std::to_string(it->second.line));
      continue;
    }
    found[full] = {value, line_no};
  }

  // Defaults come from the selected test case.
  ExperimentConfig config;
  if (auto it = found.find("testcases.case"); it != found.end()) config.test_case = it->second.value;
  try {
    const TestCase& tc = find_case(config.test_case);
    config.glhs = tc.config;
    config.design_seed = tc.design_seed;
  } catch (const LookupError& e) {
    const int line = found.count("testcases.case") ? found["testcases.case"].line : 0;
    out.errors.push_back(where(line) + e.what());
  }

  for (const Key& k : keys()) {
    const std::string full = k.section + "." + k.name;
    auto it = found.find(full);
    if (it == found.end()) {
      out.defaulted.push_back(full);
      continue;
    }
    if (std::string err = k.set(config, it->second.value); !err.empty()) {
      out.errors.push_back(where(it->second.line) + full + ": " + err);
    }
  }

  if (out.errors.empty()) {
    auto line_of = [&](const std::string& full) {
      auto it = found.find(full);
      return it == found.end() ? 0 : it->second.line;
    };
    static const std::map<std::string, std::string> message_keys = {
        {"α must lie in (0, 1]", "glhs.alpha"},
        {"conservativeness must be positive", "glhs.conservativeness"},
        {"batch_factor must exceed 1", "domain_learning.batch_factor"},
        {"cv_folds must be at least 2", "regression.cv_folds"},
    };
    for (const std::string& e : validate(config.glhs)) {
      auto mk = message_keys.find(e);
      const int line = mk == message_keys.end() ? 0 : line_of(mk->second);
      out.errors.push_back(line > 0 ? where(line) + e : std::string(origin) + ": " + e);
    }
    if (config.li_group_size == 0) out.errors.push_back(std::string(origin) + ": li_group_size must be positive");
    if (config.li_samples == 0) out.errors.push_back(std::string(origin) + ": li_samples must be positive");
    if (config.ni_budget && *config.ni_budget == 0) {
      out.errors.push_back(std::string(origin) + ": ni_budget must be positive");
    }
    for (const std::string& w : warnings(config.glhs)) out.warnings.push_back(w);
  }
  if (!out.defaulted.empty()) {
    std::string list;
    for (const auto& d : out.defaulted) list += (list.empty() ? "" : ", ") + d;
    out.warnings.push_back("defaulted from " + config.test_case + ": " + list);
  }
  out.config = std::move(config);
  return out;
}

ConfigLoad load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    ConfigLoad out;
    out.errors.push_back(path.string() + ": cannot open file");
    return out;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

ConfigError::ConfigError(std::vector<std::string> messages)
  : Error([&] {
      std::string s = "invalid configuration";
      for (const auto& m : messages) s += "\n  " + m;
      return s;
    }()),
    messages_(std::move(messages)) {}

ExperimentConfig validate_config(const std::filesystem::path& path,
                                 std::vector<std::string>* warnings) {
  ConfigLoad load = load_config(path);
  if (!load.ok()) throw ConfigError(load.errors);
  if (warnings) *warnings = load.warnings;
  return load.config;
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  std::string section;
  for (const Key& k : keys()) {
    if (k.section != section) {
      out += (section.empty() ? "[" : "\n[") + k.section + "]\n";
      section = k.section;
    }
    out += k.name + " = " + k.get(config) + "\n";
  }
  return out;
}

}  // namespace glhs
