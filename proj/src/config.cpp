#include "qagent/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qagent/csv.hpp"
#include "qagent/errors.hpp"

namespace qagent {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  int column = 0;  // column of the value
};

using Table = std::map<std::string, Entry>;  // "section.key" -> value

const std::map<std::string, std::set<std::string>>& grammar() {
  static const std::map<std::string, std::set<std::string>> g{
      {"world", {"gamma_t", "delta_t", "eta", "chi", "kappa"}},
      {"agent",
       {"kinds", "gamma0", "delta0", "gamma_min", "gamma_max", "delta_min", "delta_max",
        "learning_rate", "shots", "fd_step", "backend", "update", "seconds_per_shot"}},
      {"run", {"iterations", "seed", "output_dir", "temperatures"}},
      {"oracle", {"kappas", "cavity_kappas", "chi", "n_max", "t_max", "steps"}},
  };
  return g;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void syntax_error(const std::string& origin, int line, int col, const std::string& msg) {
  std::ostringstream os;
  os << origin << ':' << line << ':' << col << ": " << msg;
  throw ConfigError(os.str());
}

Table tokenize(const std::string& text, const std::string& origin) {
  Table table;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const int indent = static_cast<int>(line.find_first_not_of(" \t")) + 1;

    if (body.front() == '[') {
      if (body.back() != ']') syntax_error(origin, line_no, indent, "unterminated section header");
      section = trim(body.substr(1, body.size() - 2));
      if (!grammar().contains(section)) {
        syntax_error(origin, line_no, indent + 1, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) syntax_error(origin, line_no, indent, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) syntax_error(origin, line_no, indent, "missing key before '='");
    if (section.empty()) {
      syntax_error(origin, line_no, indent, "key '" + key + "' outside of any [section]");
    }
    const std::string full = section + "." + key;
    if (!grammar().at(section).contains(key)) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": unknown key '" + full + "'");
    }
    if (table.contains(full)) {
      syntax_error(origin, line_no, indent, "duplicate key '" + full + "'");
    }
    if (value.empty()) {
      syntax_error(origin, line_no, static_cast<int>(eq) + 2, "missing value for '" + full + "'");
    }
    const int value_col = static_cast<int>(line.find_first_not_of(" \t", eq + 1)) + 1;
    table[full] = Entry{value, line_no, value_col};
  }
  return table;
}

class Reader {
 public:
  Reader(Table t, std::string origin) : table_(std::move(t)), origin_(std::move(origin)) {}

  template <typename Fn>
  void with(const std::string& key, Fn&& fn) {
    auto it = table_.find(key);
    if (it == table_.end()) return;
    try {
      fn(it->second.value);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(key, it->second, e.what());
    }
  }

  double number(const std::string& key, const std::string& v) const {
    double x = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || std::isnan(x)) {
      fail(key, table_.at(key), "expected a number, got '" + v + "'");
    }
    return x;
  }

  std::uint64_t unsigned_int(const std::string& key, const std::string& v) const {
    std::uint64_t x = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
      fail(key, table_.at(key), "expected an unsigned integer, got '" + v + "'");
    }
    return x;
  }

  std::vector<std::string> list(const std::string& v) const {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
  }

  std::vector<double> numbers(const std::string& key, const std::string& v) const {
    std::vector<double> out;
    for (const auto& item : list(v)) out.push_back(number(key, item));
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const Entry& e, const std::string& msg) const {
    std::ostringstream os;
    os << origin_ << ':' << e.line << ':' << e.column << ": invalid value for '" << key
       << "': " << msg;
    throw ConfigError(os.str());
  }

 private:
  Table table_;
  std::string origin_;
};

// Re-throw a validation failure of a sub-config as a ConfigError naming the key.
template <typename Fn>
void validate_as(const std::string& key, Fn&& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    throw ConfigError("validation error in '" + key + "': " + e.what());
  }
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  validate_as("world.gamma_t", [&] { world.f_true.validate(); });
  validate_as("world", [&] { world.detector.validate(); });
  if (agents.empty()) throw ConfigError("validation error in 'agent.kinds': no agents");
  for (const auto& a : agents) {
    validate_as("agent", [&] { a.validate(); });
    if (!a.bounds.contains(world.f_true)) {
      throw ConfigError("validation error in 'world.gamma_t': true parameters outside agent bounds");
    }
  }
  if (temperatures.empty()) throw ConfigError("validation error in 'run.temperatures': empty");
  for (double mu : temperatures) {
    if (!(mu > 0.0)) throw ConfigError("validation error in 'run.temperatures': mu must be > 0");
  }
  if (!(oracle.chi > 0.0 && oracle.chi <= 1.0)) {
    throw ConfigError("validation error in 'oracle.chi': must lie in (0, 1]");
  }
  if (oracle.n_max < 1) throw ConfigError("validation error in 'oracle.n_max': must be >= 1");
  if (!(oracle.t_max > 0.0)) throw ConfigError("validation error in 'oracle.t_max': must be > 0");
  if (oracle.steps < 1) throw ConfigError("validation error in 'oracle.steps': must be >= 1");
  for (double k : oracle.kappas) {
    if (!(k > 0.0)) throw ConfigError("validation error in 'oracle.kappas': must be > 0");
  }
  for (double k : oracle.cavity_kappas) {
    if (!(k > 0.0)) throw ConfigError("validation error in 'oracle.cavity_kappas': must be > 0");
  }
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.world.f_true = {1.0, 2.0};
  cfg.world.detector = DetectorParams{};
  AgentConfig quantum;
  quantum.max_iterations = cfg.run.iterations;
  AgentConfig classical = quantum;
  classical.kind = DetectionModel::kClassical;
  cfg.agents = {quantum, classical};
  cfg.temperatures = {std::numeric_limits<double>::infinity(), 2.0, 1.0};
  return cfg;
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  Reader r(tokenize(text, origin), origin);
  ExperimentConfig cfg = default_config();
  AgentConfig proto = cfg.agents.front();
  std::vector<DetectionModel> kinds{DetectionModel::kQuantum, DetectionModel::kClassical};

  r.with("world.gamma_t", [&](auto& v) { cfg.world.f_true.gamma = r.number("world.gamma_t", v); });
  r.with("world.delta_t", [&](auto& v) { cfg.world.f_true.delta = r.number("world.delta_t", v); });
  r.with("world.eta", [&](auto& v) { cfg.world.detector.eta = r.number("world.eta", v); });
  r.with("world.chi", [&](auto& v) { cfg.world.detector.chi = r.number("world.chi", v); });
  r.with("world.kappa", [&](auto& v) { cfg.world.detector.kappa = r.number("world.kappa", v); });

  r.with("agent.kinds", [&](auto& v) {
    kinds.clear();
    for (const auto& k : r.list(v)) kinds.push_back(parse_detection_model(k));
  });
  r.with("agent.gamma0", [&](auto& v) { proto.f0.gamma = r.number("agent.gamma0", v); });
  r.with("agent.delta0", [&](auto& v) { proto.f0.delta = r.number("agent.delta0", v); });
  r.with("agent.gamma_min", [&](auto& v) { proto.bounds.gamma.lo = r.number("agent.gamma_min", v); });
  r.with("agent.gamma_max", [&](auto& v) { proto.bounds.gamma.hi = r.number("agent.gamma_max", v); });
  r.with("agent.delta_min", [&](auto& v) { proto.bounds.delta.lo = r.number("agent.delta_min", v); });
  r.with("agent.delta_max", [&](auto& v) { proto.bounds.delta.hi = r.number("agent.delta_max", v); });
  r.with("agent.learning_rate",
         [&](auto& v) { proto.learning_rate = r.number("agent.learning_rate", v); });
  r.with("agent.shots", [&](auto& v) { proto.shots = r.unsigned_int("agent.shots", v); });
  r.with("agent.fd_step", [&](auto& v) { proto.fd_step = r.number("agent.fd_step", v); });
  r.with("agent.backend", [&](auto& v) {
    if (v == "analytic") {
      proto.backend = GradientBackend::kAnalytic;
    } else if (v == "empirical") {
      proto.backend = GradientBackend::kEmpirical;
    } else {
      throw std::invalid_argument("expected analytic|empirical");
    }
  });
  r.with("agent.update", [&](auto& v) {
    if (v == "descent") {
      proto.ascend = false;
    } else if (v == "printed") {
      proto.ascend = true;
    } else {
      throw std::invalid_argument("expected descent|printed");
    }
  });
  r.with("agent.seconds_per_shot",
         [&](auto& v) { proto.seconds_per_shot = r.number("agent.seconds_per_shot", v); });

  r.with("run.iterations", [&](auto& v) {
    cfg.run.iterations = static_cast<std::size_t>(r.unsigned_int("run.iterations", v));
  });
  r.with("run.seed", [&](auto& v) { cfg.run.seed = r.unsigned_int("run.seed", v); });
  r.with("run.output_dir", [&](auto& v) { cfg.run.output_dir = v; });
  r.with("run.temperatures",
         [&](auto& v) { cfg.temperatures = r.numbers("run.temperatures", v); });

  r.with("oracle.kappas", [&](auto& v) { cfg.oracle.kappas = r.numbers("oracle.kappas", v); });
  r.with("oracle.cavity_kappas",
         [&](auto& v) { cfg.oracle.cavity_kappas = r.numbers("oracle.cavity_kappas", v); });
  r.with("oracle.chi", [&](auto& v) { cfg.oracle.chi = r.number("oracle.chi", v); });
  r.with("oracle.n_max", [&](auto& v) {
    cfg.oracle.n_max = static_cast<int>(r.unsigned_int("oracle.n_max", v));
  });
  r.with("oracle.t_max", [&](auto& v) { cfg.oracle.t_max = r.number("oracle.t_max", v); });
  r.with("oracle.steps", [&](auto& v) {
    cfg.oracle.steps = static_cast<std::size_t>(r.unsigned_int("oracle.steps", v));
  });

  proto.max_iterations = cfg.run.iterations;
  cfg.agents.clear();
  for (DetectionModel k : kinds) {
    AgentConfig a = proto;
    a.kind = k;
    cfg.agents.push_back(a);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::string to_text(const ExperimentConfig& cfg) {
  const AgentConfig& a = cfg.agents.front();
  std::ostringstream os;
  os << "[world]\n"
     << "gamma_t = " << format_double(cfg.world.f_true.gamma) << "\n"
     << "delta_t = " << format_double(cfg.world.f_true.delta) << "\n"
     << "eta = " << format_double(cfg.world.detector.eta) << "\n"
     << "chi = " << format_double(cfg.world.detector.chi) << "\n"
     << "kappa = " << format_double(cfg.world.detector.kappa) << "\n\n"
     << "[agent]\nkinds = ";
  for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
    os << (i ? ", " : "") << to_string(cfg.agents[i].kind);
  }
  os << "\n"
     << "gamma0 = " << format_double(a.f0.gamma) << "\n"
     << "delta0 = " << format_double(a.f0.delta) << "\n"
     << "gamma_min = " << format_double(a.bounds.gamma.lo) << "\n"
     << "gamma_max = " << format_double(a.bounds.gamma.hi) << "\n"
     << "delta_min = " << format_double(a.bounds.delta.lo) << "\n"
     << "delta_max = " << format_double(a.bounds.delta.hi) << "\n"
     << "learning_rate = " << format_double(a.learning_rate) << "\n"
     << "shots = " << a.shots << "\n"
     << "fd_step = " << format_double(a.fd_step) << "\n"
     << "backend = " << to_string(a.backend) << "\n"
     << "update = " << (a.ascend ? "printed" : "descent") << "\n";
  if (a.seconds_per_shot) os << "seconds_per_shot = " << format_double(*a.seconds_per_shot) << "\n";
  os << "\n[run]\n"
     << "iterations = " << cfg.run.iterations << "\n"
     << "seed = " << cfg.run.seed << "\n"
     << "output_dir = " << cfg.run.output_dir.string() << "\n"
     << "temperatures = " << join(cfg.temperatures) << "\n\n"
     << "[oracle]\n"
     << "kappas = " << join(cfg.oracle.kappas) << "\n"
     << "cavity_kappas = " << join(cfg.oracle.cavity_kappas) << "\n"
     << "chi = " << format_double(cfg.oracle.chi) << "\n"
     << "n_max = " << cfg.oracle.n_max << "\n"
     << "t_max = " << format_double(cfg.oracle.t_max) << "\n"
     << "steps = " << cfg.oracle.steps << "\n";
  return os.str();
}

ExperimentConfig canned_config(const std::string& name) {
  ExperimentConfig cfg = default_config();
  if (name == "fig2") {
    cfg.run.output_dir = "fig2";
  } else if (name == "fig4") {
    cfg.run.output_dir = "fig4";
    cfg.run.iterations = 400;
    for (auto& a : cfg.agents) a.max_iterations = cfg.run.iterations;
  } else {
    throw ConfigError("unknown canned configuration '" + name + "' (expected fig2|fig4)");
  }
  return cfg;
}

}  // namespace qagent
