#include "dtc/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

namespace dtc {

ConfigSyntaxError::ConfigSyntaxError(int line, int column, const std::string& what)
    : ConfigError("syntax error at line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

UnknownKeyError::UnknownKeyError(int line, const std::string& key)
    : ConfigError("unknown key '" + key + "'" +
                  (line > 0 ? " at line " + std::to_string(line) : std::string{})),
      key_(key) {}

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Evolve:
      return "evolve";
    case Command::Spectrum:
      return "spectrum";
    case Command::Ensemble:
      return "ensemble";
    case Command::Scan:
      return "scan";
    case Command::Compare:
      return "compare";
  }
  return "?";
}

Command parse_command(std::string_view name) {
  for (auto c : {Command::Evolve, Command::Spectrum, Command::Ensemble, Command::Scan,
                 Command::Compare}) {
    if (command_name(c) == name) return c;
  }
  throw RangeError("unknown command '" + std::string(name) +
                   "' (expected evolve, spectrum, ensemble, scan or compare)");
}

std::vector<double> default_epsilon_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 15; ++i) grid.push_back(i / 50.0);
  return grid;
}

std::string format_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "command",        "output",         "model.n_sites",  "model.g",
      "model.t1",       "model.t2",       "model.t3",       "model.coupling",
      "model.J0",       "model.delta_J",  "model.alpha",    "model.Wx",
      "model.Wy",       "model.Wz",       "model.seed",     "model.realization_index",
      "run.K",          "run.n_realizations",               "run.initial_state",
      "run.epsilon_grid",                 "run.window",     "run.aggregate",
  };
  return keys;
}

struct Entry {
  std::string value;
  int line = 0;
  int column = 0;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int column_of(std::string_view line, std::string_view part) {
  return static_cast<int>(part.data() - line.data()) + 1;
}

/// Splits "key = value" at the first '='. `line_no` 0 marks a --set override.
void parse_assignment(std::string_view raw, std::string_view full_line, int line_no,
                      const std::string& section, std::map<std::string, Entry>& out,
                      bool allow_replace) {
  const auto eq = raw.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigSyntaxError(line_no, column_of(full_line, trim(raw)),
                            "expected 'key = value'");
  }
  const auto key_part = trim(raw.substr(0, eq));
  const auto value_part = trim(raw.substr(eq + 1));
  if (key_part.empty()) {
    throw ConfigSyntaxError(line_no, column_of(full_line, raw.substr(0, eq + 1)),
                            "missing key before '='");
  }
  for (char c : key_part) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) {
      throw ConfigSyntaxError(line_no, column_of(full_line, key_part),
                              "invalid character in key '" + std::string(key_part) + "'");
    }
  }
  std::string key(key_part);
  if (!section.empty() && key.find('.') == std::string::npos) key = section + "." + key;

  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw UnknownKeyError(line_no, key);
  }
  if (!allow_replace && out.count(key)) {
    throw ConfigSyntaxError(line_no, column_of(full_line, key_part),
                            "duplicate key '" + key + "'");
  }
  const int col = value_part.empty() ? static_cast<int>(raw.size()) + 1
                                     : column_of(full_line, value_part);
  out[key] = Entry{std::string(value_part), line_no, col};
}

std::map<std::string, Entry> tokenize(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                     : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    auto body = line.substr(0, line.find('#'));
    const auto t = trim(body);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigSyntaxError(line_no, column_of(line, t) + static_cast<int>(t.size()),
                                "section header missing ']'");
      }
      const auto name = trim(t.substr(1, t.size() - 2));
      if (name != "model" && name != "run") {
        throw ConfigSyntaxError(line_no, column_of(line, t) + 1,
                                "unknown section '" + std::string(name) + "'");
      }
      section = std::string(name);
      continue;
    }
    parse_assignment(body, line, line_no, section, entries, false);
  }
  return entries;
}

class Resolver {
 public:
  explicit Resolver(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  const Entry* find(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  double real(const std::string& key, double fallback) const {
    const Entry* e = find(key);
    return e ? parse_real(*e, key) : fallback;
  }

  template <typename Int>
  Int integer(const std::string& key, Int fallback) const {
    const Entry* e = find(key);
    if (!e) return fallback;
    Int v{};
    const auto& s = e->value;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc::result_out_of_range) {
      throw RangeError("value of '" + key + "' is out of range: " + s);
    }
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw ConfigSyntaxError(e->line, e->column, "'" + key + "' expects an integer, got '" +
                                                      s + "'");
    }
    return v;
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    const Entry* e = find(key);
    return e ? e->value : fallback;
  }

  std::vector<double> real_list(const std::string& key,
                                const std::vector<double>& fallback) const {
    const Entry* e = find(key);
    if (!e) return fallback;
    std::vector<double> out;
    std::string_view rest = e->value;
    int offset = 0;
    while (true) {
      const auto comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      Entry sub{std::string(item), e->line, e->column + offset};
      out.push_back(parse_real(sub, key));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
      offset += static_cast<int>(comma) + 1;
    }
    return out;
  }

  static double parse_real(const Entry& e, const std::string& key) {
    double v = 0.0;
    const auto& s = e.value;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc::result_out_of_range) {
      throw RangeError("value of '" + key + "' is out of range: " + s);
    }
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw ConfigSyntaxError(e.line, e.column,
                              "'" + key + "' expects a real number, got '" + s + "'");
    }
    return v;
  }

 private:
  std::map<std::string, Entry> entries_;
};

}  // namespace

void validate_config(const RunConfig& c) {
  try {
    validate(c.model);
  } catch (const std::invalid_argument& e) {
    throw RangeError(e.what());
  } catch (const std::out_of_range& e) {
    throw RangeError(e.what());
  }
  const auto& r = c.run;
  if (c.command == Command::Evolve) {
    if (r.K < 2) throw RangeError("run.K must be >= 2, got " + std::to_string(r.K));
  } else if (r.K < 2 || r.K % 2 != 0) {
    throw RangeError("run.K must be even and >= 2 for the " +
                     std::string(command_name(c.command)) + " command, got " +
                     std::to_string(r.K));
  }
  if (r.n_realizations < 1) throw RangeError("run.n_realizations must be >= 1");
  if (c.command == Command::Spectrum && c.model.n_sites > kMaxDenseSites) {
    throw RangeError("the spectrum command supports at most " +
                     std::to_string(kMaxDenseSites) + " sites");
  }
  if (c.command == Command::Compare && !(c.model.g > 0.0 && c.model.g <= 1.0)) {
    throw RangeError("compare needs 0 < g <= 1 (epsilon = 1 - g)");
  }
  try {
    validate_epsilon_grid(r.epsilon_grid);
    (void)initial_bits(r.initial_state, c.model.n_sites);
  } catch (const std::invalid_argument& e) {
    throw RangeError(e.what());
  }
  if (c.output.empty()) throw RangeError("output directory must not be empty");
}

RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides,
                       const std::string& default_output) {
  auto entries = tokenize(text);
  for (const auto& o : overrides) {
    parse_assignment(o, o, 0, "", entries, true);
  }
  Resolver res(std::move(entries));

  RunConfig c;
  const Entry* cmd = res.find("command");
  if (!cmd) throw RangeError("missing required key 'command'");
  c.command = parse_command(cmd->value);
  if (!res.find("model.n_sites")) throw RangeError("missing required key 'model.n_sites'");
  c.output = res.text("output", default_output);

  auto& m = c.model;
  m.n_sites = res.integer<int>("model.n_sites", m.n_sites);
  m.g = res.real("model.g", m.g);
  m.t1 = res.real("model.t1", m.t1);
  m.t2 = res.real("model.t2", m.t2);
  m.t3 = res.real("model.t3", m.t3);
  const std::string kind = res.text("model.coupling", "nearest_neighbor");
  if (kind == "nearest_neighbor") {
    m.coupling.kind = CouplingKind::NearestNeighbor;
  } else if (kind == "power_law") {
    m.coupling.kind = CouplingKind::PowerLaw;
  } else {
    throw RangeError("model.coupling must be nearest_neighbor or power_law, got '" + kind +
                     "'");
  }
  m.coupling.J0 = res.real("model.J0", m.coupling.J0);
  m.coupling.delta_J = res.real("model.delta_J", m.coupling.delta_J);
  m.coupling.alpha = res.real("model.alpha", m.coupling.alpha);
  m.Wx = res.real("model.Wx", m.Wx);
  m.Wy = res.real("model.Wy", m.Wy);
  m.Wz = res.real("model.Wz", m.Wz);
  m.seed = res.integer<std::uint64_t>("model.seed", m.seed);
  m.realization_index =
      res.integer<std::uint64_t>("model.realization_index", m.realization_index);

  auto& r = c.run;
  r.K = res.integer<int>("run.K", r.K);
  r.n_realizations = res.integer<int>("run.n_realizations", r.n_realizations);
  try {
    r.initial_state = InitialStateSpec::parse(res.text("run.initial_state", "neel"));
  } catch (const std::invalid_argument& e) {
    throw RangeError(e.what());
  }
  r.epsilon_grid = res.real_list("run.epsilon_grid", default_epsilon_grid());
  const std::string window = res.text("run.window", "none");
  if (window == "none") {
    r.window = Window::None;
  } else if (window == "hann") {
    r.window = Window::Hann;
  } else {
    throw RangeError("run.window must be none or hann, got '" + window + "'");
  }
  const std::string agg = res.text("run.aggregate", "per-site");
  if (agg == "per-site") {
    r.aggregate = Aggregate::PerSite;
  } else if (agg == "averaged") {
    r.aggregate = Aggregate::Averaged;
  } else {
    throw RangeError("run.aggregate must be per-site or averaged, got '" + agg + "'");
  }

  validate_config(c);
  return c;
}

std::string serialize_config(const RunConfig& c, bool include_output) {
  std::ostringstream os;
  const auto& m = c.model;
  const auto& r = c.run;
  os << "command = " << command_name(c.command) << '\n';
  if (include_output) os << "output = " << c.output << '\n';
  os << "[model]\n";
  os << "n_sites = " << m.n_sites << '\n';
  os << "g = " << format_real(m.g) << '\n';
  os << "t1 = " << format_real(m.t1) << '\n';
  os << "t2 = " << format_real(m.t2) << '\n';
  os << "t3 = " << format_real(m.t3) << '\n';
  os << "coupling = "
     << (m.coupling.kind == CouplingKind::NearestNeighbor ? "nearest_neighbor" : "power_law")
     << '\n';
  os << "J0 = " << format_real(m.coupling.J0) << '\n';
  os << "delta_J = " << format_real(m.coupling.delta_J) << '\n';
  os << "alpha = " << format_real(m.coupling.alpha) << '\n';
  os << "Wx = " << format_real(m.Wx) << '\n';
  os << "Wy = " << format_real(m.Wy) << '\n';
  os << "Wz = " << format_real(m.Wz) << '\n';
  os << "seed = " << m.seed << '\n';
  os << "realization_index = " << m.realization_index << '\n';
  os << "[run]\n";
  os << "K = " << r.K << '\n';
  os << "n_realizations = " << r.n_realizations << '\n';
  os << "initial_state = " << r.initial_state.to_string() << '\n';
  os << "epsilon_grid = ";
  for (std::size_t i = 0; i < r.epsilon_grid.size(); ++i) {
    os << (i ? ", " : "") << format_real(r.epsilon_grid[i]);
  }
  os << '\n';
  os << "window = " << (r.window == Window::None ? "none" : "hann") << '\n';
  os << "aggregate = " << (r.aggregate == Aggregate::PerSite ? "per-site" : "averaged")
     << '\n';
  return os.str();
}

RunOptions run_options(const RunConfig& c, unsigned threads) {
  RunOptions o;
  o.K = c.run.K;
  o.initial = c.run.initial_state;
  o.window = c.run.window;
  o.aggregate = c.run.aggregate;
  o.threads = threads;
  return o;
}

}  // namespace dtc
