#include "stagecert/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace stagecert {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& v, long min_value) {
  std::size_t pos = 0;
  long x = 0;
  try {
    x = std::stol(v, &pos);
  } catch (const std::exception&) {
    fail(ErrorKind::Usage, key + ": expected an integer, got '" + v + "'");
  }
  if (pos != v.size()) fail(ErrorKind::Usage, key + ": expected an integer, got '" + v + "'");
  if (x < min_value) fail(ErrorKind::Usage, key + " must be >= " + std::to_string(min_value));
  return x;
}

}  // namespace

GrowthSequence parse_sequence(const std::string& text, TailPolicy tail) {
  const std::string s = trim(text);
  if (s.empty()) fail(ErrorKind::Usage, "empty sequence");
  const auto names = GrowthSequence::preset_names();
  if (std::find(names.begin(), names.end(), s) != names.end()) return GrowthSequence::preset(s);
  std::string body = s;
  if (body.front() == '(' || body.front() == '[') {
    const char close = body.front() == '(' ? ')' : ']';
    if (body.back() != close) fail(ErrorKind::Usage, "unbalanced brackets in sequence '" + s + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::replace(body.begin(), body.end(), ',', ' ');
  std::istringstream is(body);
  std::vector<BigInt> entries;
  std::string tok;
  while (is >> tok) {
    BigInt v;
    if (v.set_str(tok, 10) != 0) fail(ErrorKind::Usage, "sequence entry '" + tok + "' is not an integer");
    entries.push_back(v);
  }
  if (entries.empty()) fail(ErrorKind::Usage, "empty sequence");
  return GrowthSequence(entries, {}, tail, s);
}

GrowthSequence RunConfig::growth_sequence() const { return parse_sequence(sequence, tail); }

void RunConfig::validate() const {
  if (n_max < 1) fail(ErrorKind::Usage, "n_max must be >= 1");
  if (dimension_cap < 1) fail(ErrorKind::Usage, "dimension_cap must be >= 1");
  if (enum_degree < 0) fail(ErrorKind::Usage, "enum_degree must be >= 0");
  if (precision_bits < 1) fail(ErrorKind::Usage, "precision_bits must be >= 1");
  if (format != "json" && format != "csv") fail(ErrorKind::Usage, "format must be json or csv");
  (void)growth_sequence();
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "sequence") {
    cfg.sequence = value;
  } else if (key == "tail") {
    cfg.tail = parse_tail_policy(value);
  } else if (key == "n_max") {
    cfg.n_max = static_cast<std::size_t>(parse_long(key, value, 1));
  } else if (key == "dimension_cap") {
    cfg.dimension_cap = parse_long(key, value, 1);
  } else if (key == "enum_degree") {
    cfg.enum_degree = parse_long(key, value, 0);
  } else if (key == "precision_bits") {
    cfg.precision_bits = parse_long(key, value, 1);
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "format") {
    if (value != "json" && value != "csv") fail(ErrorKind::Usage, "format must be json or csv");
    cfg.format = value;
  } else if (key == "backend") {
    if (value == "serial")
      cfg.backend = kernels::Backend::Serial;
    else if (value == "parallel")
      cfg.backend = kernels::Backend::Parallel;
    else
      fail(ErrorKind::Usage, "backend must be serial or parallel");
  } else {
    fail(ErrorKind::Usage, "unknown config key '" + key + "'");
  }
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::Usage, "config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail(ErrorKind::Usage, "config line " + std::to_string(lineno) + ": empty key");
    apply_setting(base, key, value);
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

void apply_environment(RunConfig& cfg) {
  if (const char* v = std::getenv("BREAD_PRECISION_BITS"); v && *v)
    cfg.precision_bits = parse_long("BREAD_PRECISION_BITS", trim(v), 1);
}

}  // namespace stagecert
