#include "entspec/config_io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "entspec/errors.hpp"

namespace entspec {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, std::string_view key, const std::string& what) {
  std::string msg = "line " + std::to_string(line);
  if (!key.empty()) msg += " (" + std::string(key) + ")";
  throw ConfigError(msg + ": " + what);
}

double parse_double(std::string_view text, int line, std::string_view key) {
  const std::string s(trim(text));
  if (s.empty()) fail(line, key, "expected a number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) fail(line, key, "bad number '" + s + "'");
  return v;
}

int parse_int(std::string_view text, int line, std::string_view key) {
  const auto s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    fail(line, key, "bad integer '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

RealVec parse_vector(std::string_view text, int line, std::string_view key) {
  const auto parts = split_list(text);
  if (parts.size() > 2) fail(line, key, "expected one or two components");
  RealVec v{0.0, 0.0};
  for (std::size_t i = 0; i < parts.size(); ++i) v[i] = parse_double(parts[i], line, key);
  return v;
}

std::vector<int> parse_int_list(std::string_view text, int line, std::string_view key) {
  std::vector<int> out;
  if (trim(text).empty()) return out;
  for (auto part : split_list(text)) out.push_back(parse_int(part, line, key));
  return out;
}

bool parse_bool(std::string_view text, int line, std::string_view key) {
  const auto s = trim(text);
  if (s == "true") return true;
  if (s == "false") return false;
  fail(line, key, "expected true or false");
}

const std::map<std::string, std::set<std::string>, std::less<>>& schema() {
  static const std::map<std::string, std::set<std::string>, std::less<>> keys = {
      {"physics", {"d", "L", "m1", "m2", "hbar", "n_max"}},
      {"packet1", {"N_c", "X_c", "sigma"}},
      {"packet2", {"N_c", "X_c", "sigma"}},
      {"potential", {"kind", "A", "w", "T", "counterterm"}},
      {"run",
       {"t_end", "t_end_t0", "n_samples", "K", "mode_samples", "mode_ranks", "mode_resolution"}},
  };
  return keys;
}

struct Entry {
  std::string value;
  int line;
};

std::string format_vector(const RealVec& v, int dim) {
  std::string s = format_double(v[0]);
  if (dim == 2 || v[1] != 0.0) s += ", " + format_double(v[1]);
  return s;
}

std::string format_list(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

SimConfig parse_config(std::string_view text) {
  std::map<std::string, std::map<std::string, Entry>> seen;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, {}, "unterminated section header");
      const auto name = trim(line.substr(1, line.size() - 2));
      if (!schema().contains(name)) fail(line_no, {}, "unknown section [" + std::string(name) + "]");
      section = name;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, {}, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) fail(line_no, {}, "missing key");
    if (section.empty()) fail(line_no, key, "key outside any section");
    if (!schema().find(section)->second.contains(key)) {
      fail(line_no, key, "unknown key in [" + section + "]");
    }
    auto& slot = seen[section];
    if (const auto it = slot.find(key); it != slot.end()) {
      fail(line_no, key, "duplicate key (first set on line " + std::to_string(it->second.line) + ")");
    }
    slot.emplace(key, Entry{value, line_no});
  }

  auto get = [&](const std::string& sec, const std::string& key) -> const Entry* {
    const auto s = seen.find(sec);
    if (s == seen.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };

  SimConfig cfg;
  if (const auto* e = get("physics", "d")) cfg.dim = parse_int(e->value, e->line, "d");
  if (const auto* e = get("physics", "L")) cfg.box_length = parse_double(e->value, e->line, "L");
  if (const auto* e = get("physics", "m1")) cfg.mass1 = parse_double(e->value, e->line, "m1");
  if (const auto* e = get("physics", "m2")) cfg.mass2 = parse_double(e->value, e->line, "m2");
  if (const auto* e = get("physics", "hbar")) cfg.hbar = parse_double(e->value, e->line, "hbar");
  if (const auto* e = get("physics", "n_max")) cfg.n_max = parse_int(e->value, e->line, "n_max");

  if (const auto* e = get("packet1", "N_c")) {
    cfg.packet1.central_momentum = parse_vector(e->value, e->line, "N_c");
  }
  if (const auto* e = get("packet1", "X_c")) {
    cfg.packet1.position = parse_vector(e->value, e->line, "X_c");
  }
  if (const auto* e = get("packet1", "sigma")) {
    cfg.packet1.sigma = parse_double(e->value, e->line, "sigma");
  }
  const auto& p1 = cfg.packet1;
  cfg.packet2.central_momentum = {-p1.central_momentum[0], -p1.central_momentum[1]};
  cfg.packet2.position = {-p1.position[0], -p1.position[1]};
  cfg.packet2.sigma = p1.sigma;
  if (const auto* e = get("packet2", "N_c")) {
    cfg.packet2.central_momentum = parse_vector(e->value, e->line, "N_c");
  }
  if (const auto* e = get("packet2", "X_c")) {
    cfg.packet2.position = parse_vector(e->value, e->line, "X_c");
  }
  if (const auto* e = get("packet2", "sigma")) {
    cfg.packet2.sigma = parse_double(e->value, e->line, "sigma");
  }

  if (const auto* e = get("potential", "kind")) {
    if (e->value == "delta") {
      cfg.potential.kind = PotentialKind::delta;
    } else if (e->value == "gaussian") {
      cfg.potential.kind = PotentialKind::gaussian;
    } else {
      fail(e->line, "kind", "expected delta or gaussian");
    }
  }
  const auto* strength = get("potential", "A");
  const auto* target = get("potential", "T");
  const auto* counterterm = get("potential", "counterterm");
  if (strength && target) fail(target->line, "T", "give either A or T, not both");
  if (counterterm && !target) fail(counterterm->line, "counterterm", "only meaningful with T");
  if (strength) cfg.potential.strength = parse_double(strength->value, strength->line, "A");
  if (const auto* e = get("potential", "w")) cfg.potential.width = parse_double(e->value, e->line, "w");
  if (target) {
    StrengthTarget t;
    t.transmission = parse_double(target->value, target->line, "T");
    t.counterterm = cfg.potential.kind == PotentialKind::delta;
    if (counterterm) t.counterterm = parse_bool(counterterm->value, counterterm->line, "counterterm");
    cfg.strength_target = t;
  }

  if (const auto* e = get("run", "t_end")) cfg.t_end = parse_double(e->value, e->line, "t_end");
  if (const auto* e = get("run", "t_end_t0")) {
    cfg.t_end_over_t0 = parse_double(e->value, e->line, "t_end_t0");
  }
  if (const auto* e = get("run", "n_samples")) {
    cfg.n_samples = parse_int(e->value, e->line, "n_samples");
  }
  if (const auto* e = get("run", "K")) cfg.report_count = parse_int(e->value, e->line, "K");
  if (const auto* e = get("run", "mode_samples")) {
    cfg.modes.samples = parse_int_list(e->value, e->line, "mode_samples");
  }
  if (const auto* e = get("run", "mode_ranks")) {
    cfg.modes.ranks = parse_int_list(e->value, e->line, "mode_ranks");
  }
  if (const auto* e = get("run", "mode_resolution")) {
    cfg.modes.resolution = parse_int(e->value, e->line, "mode_resolution");
  }
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file " + path.string());
  return parse_config(buf.str());
}

std::string emit_config(const SimConfig& cfg) {
  std::ostringstream out;
  out << "[physics]\n"
      << "d = " << cfg.dim << '\n'
      << "L = " << format_double(cfg.box_length) << '\n'
      << "m1 = " << format_double(cfg.mass1) << '\n'
      << "m2 = " << format_double(cfg.mass2) << '\n'
      << "hbar = " << format_double(cfg.hbar) << '\n'
      << "n_max = " << cfg.n_max << '\n';
  const std::pair<const char*, const PacketSpec*> packets[] = {{"packet1", &cfg.packet1},
                                                               {"packet2", &cfg.packet2}};
  for (const auto& [name, p] : packets) {
    out << "\n[" << name << "]\n"
        << "N_c = " << format_vector(p->central_momentum, cfg.dim) << '\n'
        << "X_c = " << format_vector(p->position, cfg.dim) << '\n'
        << "sigma = " << format_double(p->sigma) << '\n';
  }
  out << "\n[potential]\n"
      << "kind = " << (cfg.potential.kind == PotentialKind::delta ? "delta" : "gaussian") << '\n';
  if (cfg.strength_target) {
    out << "T = " << format_double(cfg.strength_target->transmission) << '\n'
        << "counterterm = " << (cfg.strength_target->counterterm ? "true" : "false") << '\n';
  } else {
    out << "A = " << format_double(cfg.potential.strength) << '\n';
  }
  if (cfg.potential.kind == PotentialKind::gaussian || cfg.potential.width != 0.0) {
    out << "w = " << format_double(cfg.potential.width) << '\n';
  }
  out << "\n[run]\n";
  if (cfg.t_end) out << "t_end = " << format_double(*cfg.t_end) << '\n';
  if (cfg.t_end_over_t0) out << "t_end_t0 = " << format_double(*cfg.t_end_over_t0) << '\n';
  out << "n_samples = " << cfg.n_samples << '\n' << "K = " << cfg.report_count << '\n';
  if (!cfg.modes.samples.empty()) out << "mode_samples = " << format_list(cfg.modes.samples) << '\n';
  if (!cfg.modes.ranks.empty()) out << "mode_ranks = " << format_list(cfg.modes.ranks) << '\n';
  if (cfg.modes.resolution != 0) out << "mode_resolution = " << cfg.modes.resolution << '\n';
  return out.str();
}

}  // namespace entspec
