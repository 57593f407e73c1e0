#include "shc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace shc {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

using Section = std::map<std::string, std::string>;

struct IniFile {
  std::map<std::string, Section> sections;
};

IniFile parse_ini(const std::string& text) {
  static const std::set<std::string> kSections = {"process", "domain",
                                                  "experiment", "output"};
  IniFile ini;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw SpecError("config line " + std::to_string(line_no) +
                        ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!kSections.count(section))
        throw SpecError("config: unknown section [" + section + "]");
      ini.sections[section];
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos || section.empty())
      throw SpecError("config line " + std::to_string(line_no) +
                      ": expected key = value inside a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw SpecError("config line " + std::to_string(line_no) +
                      ": empty key or value");
    if (!ini.sections[section].emplace(key, value).second)
      throw SpecError("config: duplicate key '" + key + "' in [" + section +
                      "]");
  }
  return ini;
}

// Reads a key, consuming it so leftovers can be reported.
class SectionReader {
 public:
  SectionReader(std::string name, Section section)
      : name_(std::move(name)), section_(std::move(section)) {}

  bool has(const std::string& key) const { return section_.count(key) > 0; }

  std::string take(const std::string& key) {
    auto it = section_.find(key);
    if (it == section_.end())
      throw SpecError("config: [" + name_ + "] is missing key '" + key + "'");
    std::string v = it->second;
    section_.erase(it);
    return v;
  }
  std::string take_or(const std::string& key, const std::string& def) {
    return has(key) ? take(key) : def;
  }
  double take_double(const std::string& key) {
    const std::string v = take(key);
    try {
      size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw SpecError("config: [" + name_ + "] " + key + " = '" + v +
                      "' is not a number");
    }
  }
  double take_double_or(const std::string& key, double def) {
    return has(key) ? take_double(key) : def;
  }
  int64_t take_int(const std::string& key) {
    const double x = take_double(key);
    if (x != std::floor(x))
      throw SpecError("config: [" + name_ + "] " + key + " must be an integer");
    return static_cast<int64_t>(x);
  }
  int64_t take_int_or(const std::string& key, int64_t def) {
    return has(key) ? take_int(key) : def;
  }

  void finish() const {
    if (!section_.empty())
      throw SpecError("config: unknown key '" + section_.begin()->first +
                      "' in [" + name_ + "]");
  }

 private:
  std::string name_;
  Section section_;
};

ProcessSpec build_process(SectionReader& p) {
  const std::string kind = p.take("kind");
  const int d = static_cast<int>(p.take_int_or("dimension", 2));
  ProcessSpec spec;
  if (kind == "brownian") {
    spec = ProcessSpec::brownian(d);
  } else if (kind == "stable") {
    spec = ProcessSpec::stable(p.take_double("alpha"), d);
  } else if (kind == "mixed_stable") {
    spec = ProcessSpec::mixed_stable(p.take_double("alpha"),
                                     p.take_double("beta"), d);
  } else if (kind == "relativistic_stable") {
    spec = ProcessSpec::relativistic(p.take_double("alpha"),
                                     p.take_double("m"), d);
  } else if (kind == "log_up") {
    spec = ProcessSpec::log_up(p.take_double("alpha"), p.take_double("beta"), d);
  } else if (kind == "log_down") {
    spec =
        ProcessSpec::log_down(p.take_double("alpha"), p.take_double("beta"), d);
  } else if (kind == "jump_diffusion") {
    spec = ProcessSpec::jump_diffusion(p.take_double("alpha"),
                                       p.take_double_or("a", 1.0), d);
  } else if (kind == "truncated") {
    const std::string base_kind = p.take("base");
    ProcessSpec base;
    if (base_kind == "stable") {
      base = ProcessSpec::stable(p.take_double("alpha"), d);
    } else if (base_kind == "mixed_stable") {
      base = ProcessSpec::mixed_stable(p.take_double("alpha"),
                                       p.take_double("beta"), d);
    } else if (base_kind == "jump_diffusion") {
      base = ProcessSpec::jump_diffusion(p.take_double("alpha"),
                                         p.take_double_or("a", 1.0), d);
    } else {
      throw SpecError("config: truncated base '" + base_kind +
                      "' is not supported (use stable, mixed_stable or "
                      "jump_diffusion)");
    }
    spec = ProcessSpec::truncated(base, p.take_double_or("cutoff", 1.0));
  } else {
    throw SpecError("config: unknown process kind '" + kind + "'");
  }
  spec.validate();
  return spec;
}

Domain build_domain(SectionReader& dsec, int dimension) {
  const std::string shape = dsec.take_or("shape", "ball");
  if (shape == "ball")
    return Domain::ball(dimension, dsec.take_double_or("radius", 1.0));
  if (shape == "annulus")
    return Domain::annulus(dimension, dsec.take_double("r1"),
                           dsec.take_double("r2"));
  throw SpecError("config: unknown domain shape '" + shape + "'");
}

}  // namespace

std::vector<double> RunConfig::t_grid() const {
  std::vector<double> grid(n_t);
  if (n_t == 1) {
    grid[0] = t_max;
    return grid;
  }
  const double step = std::log(t_min / t_max) / (n_t - 1);
  for (int i = 0; i < n_t; ++i) grid[i] = t_max * std::exp(step * i);
  grid.back() = t_min;
  return grid;
}

RunConfig parse_config_text(const std::string& text) {
  IniFile ini = parse_ini(text);
  if (!ini.sections.count("process"))
    throw SpecError("config: missing [process] section");

  RunConfig cfg;
  SectionReader proc("process", ini.sections["process"]);
  cfg.process = build_process(proc);
  proc.finish();

  SectionReader dom("domain", ini.sections["domain"]);
  cfg.domain = build_domain(dom, cfg.process.dimension);
  dom.finish();

  SectionReader exp("experiment", ini.sections["experiment"]);
  cfg.t_max = exp.take_double_or("t_max", cfg.t_max);
  cfg.t_min = exp.take_double_or("t_min", cfg.t_min);
  cfg.n_t = static_cast<int>(exp.take_int_or("n_t", cfg.n_t));
  cfg.n_paths = static_cast<uint64_t>(exp.take_int_or("n_paths", 100000));
  cfg.seed = static_cast<uint64_t>(exp.take_int_or("seed", 0));
  cfg.workers = static_cast<int>(exp.take_int_or("workers", 1));
  cfg.schedule.k = exp.take_double_or("schedule_k", 64.0);
  cfg.schedule.gamma = exp.take_double_or("schedule_gamma", 0.5);
  cfg.layer.a = exp.take_double_or("layer_depth", 0.0);
  cfg.layer.boundary_fraction = exp.take_double_or("boundary_fraction", 0.8);
  cfg.tolerance = exp.take_double_or("tolerance", 0.05);
  exp.finish();

  SectionReader out("output", ini.sections["output"]);
  cfg.csv_path = out.take_or("csv", "");
  cfg.svg_path = out.take_or("svg", "");
  out.finish();

  if (!(cfg.t_min > 0.0) || !(cfg.t_max > cfg.t_min))
    throw SpecError("config: need 0 < t_min < t_max");
  if (cfg.n_t < 1) throw SpecError("config: n_t must be >= 1");
  if (cfg.n_paths < 1) throw SpecError("config: n_paths must be >= 1");
  if (cfg.workers < 0) throw SpecError("config: workers must be >= 0");
  if (!(cfg.schedule.k > 0.0) || !(cfg.schedule.gamma > 0.0))
    throw SpecError("config: schedule parameters must be positive");
  if (!(cfg.layer.boundary_fraction > 0.0 &&
        cfg.layer.boundary_fraction < 1.0))
    throw SpecError("config: boundary_fraction must lie in (0,1)");
  if (!(cfg.tolerance > 0.0))
    throw SpecError("config: tolerance must be positive");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace shc
