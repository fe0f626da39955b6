#include "upml/config.hpp"

#include <cstdio>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "upml/csv.hpp"
#include "upml/errors.hpp"
#include "upml/grid.hpp"

namespace upml {

namespace {

using nlohmann::json;

void read_num(const json& j, const char* where, const char* key, double& out,
              std::ostringstream& problems) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number()) {
    problems << "\n  - " << where << "." << key << " must be a number";
    return;
  }
  out = j.at(key).get<double>();
}

void read_int(const json& j, const char* where, const char* key, int& out,
              std::ostringstream& problems) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number_integer()) {
    problems << "\n  - " << where << "." << key << " must be an integer";
    return;
  }
  out = j.at(key).get<int>();
}

void read_size(const json& j, const char* where, const char* key,
               std::size_t& out, std::ostringstream& problems) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number_unsigned() && !j.at(key).is_number_integer()) {
    problems << "\n  - " << where << "." << key
             << " must be a non-negative integer";
    return;
  }
  const auto v = j.at(key).get<std::int64_t>();
  if (v < 0) {
    problems << "\n  - " << where << "." << key
             << " must be a non-negative integer";
    return;
  }
  out = std::size_t(v);
}

void read_vec3(const json& j, const char* where, const char* key,
               Eigen::Vector3d& out, std::ostringstream& problems) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (v.is_number()) {  // scalar shorthand fills all three axes
    out.setConstant(v.get<double>());
    return;
  }
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() ||
      !v[1].is_number() || !v[2].is_number()) {
    problems << "\n  - " << where << "." << key
             << " must be a number or an array of 3 numbers";
    return;
  }
  out = Eigen::Vector3d(v[0].get<double>(), v[1].get<double>(),
                        v[2].get<double>());
}

void read_list(const json& j, const char* where, const char* key,
               std::vector<double>& out, std::ostringstream& problems) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_array()) {
    problems << "\n  - " << where << "." << key << " must be an array";
    return;
  }
  std::vector<double> vals;
  for (const json& x : v) {
    if (!x.is_number()) {
      problems << "\n  - " << where << "." << key
               << " must contain only numbers";
      return;
    }
    vals.push_back(x.get<double>());
  }
  out = std::move(vals);
}

void check_keys(const json& j, const char* where,
                std::initializer_list<const char*> allowed,
                std::ostringstream& problems) {
  if (!j.is_object()) {
    problems << "\n  - " << where << " must be an object";
    return;
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) {
      problems << "\n  - unknown key \"" << item.key() << "\" in " << where;
    }
  }
}

Config config_from_json(const json& root) {
  std::ostringstream problems;
  Config c;
  check_keys(root, "top level",
             {"material", "layer", "time", "grid", "source", "scatterer",
              "sweep", "kernels", "simulate"},
             problems);

  if (root.contains("material")) {
    const json& b = root.at("material");
    check_keys(b, "material", {"eps", "mu"}, problems);
    read_num(b, "material", "eps", c.params.eps, problems);
    read_num(b, "material", "mu", c.params.mu, problems);
  }
  if (root.contains("layer")) {
    const json& b = root.at("layer");
    check_keys(b, "layer", {"L", "d", "sigma0", "m", "s1", "aspect_limit"},
               problems);
    read_vec3(b, "layer", "L", c.params.L, problems);
    read_num(b, "layer", "d", c.params.d, problems);
    read_num(b, "layer", "sigma0", c.params.sigma0, problems);
    read_int(b, "layer", "m", c.params.m, problems);
    read_num(b, "layer", "s1", c.params.s1, problems);
    read_num(b, "layer", "aspect_limit", c.params.aspect_limit, problems);
  }
  if (root.contains("time")) {
    const json& b = root.at("time");
    check_keys(b, "time", {"T", "cfl"}, problems);
    read_num(b, "time", "T", c.params.T, problems);
    read_num(b, "time", "cfl", c.cfl, problems);
  }
  if (root.contains("grid")) {
    const json& b = root.at("grid");
    check_keys(b, "grid", {"h"}, problems);
    read_num(b, "grid", "h", c.h, problems);
  }
  if (root.contains("source")) {
    const json& b = root.at("source");
    check_keys(b, "source",
               {"location", "polarization", "amplitude", "t0", "tau"},
               problems);
    read_vec3(b, "source", "location", c.source.location, problems);
    read_int(b, "source", "polarization", c.source.polarization, problems);
    read_num(b, "source", "amplitude", c.source.amplitude, problems);
    read_num(b, "source", "t0", c.source.t0, problems);
    read_num(b, "source", "tau", c.source.tau, problems);
  }
  if (root.contains("scatterer") && !root.at("scatterer").is_null()) {
    const json& b = root.at("scatterer");
    check_keys(b, "scatterer", {"lo", "hi"}, problems);
    ScattererSpec sc;
    read_vec3(b, "scatterer", "lo", sc.lo, problems);
    read_vec3(b, "scatterer", "hi", sc.hi, problems);
    c.scatterer = sc;
  }
  if (root.contains("sweep")) {
    const json& b = root.at("sweep");
    check_keys(b, "sweep",
               {"sigma0_values", "d_values", "snapshots", "margin",
                "history_budget"},
               problems);
    read_list(b, "sweep", "sigma0_values", c.sigma0_values, problems);
    read_list(b, "sweep", "d_values", c.d_values, problems);
    read_int(b, "sweep", "snapshots", c.snapshots, problems);
    read_num(b, "sweep", "margin", c.ref_margin, problems);
    read_size(b, "sweep", "history_budget", c.history_budget, problems);
  }
  if (root.contains("kernels")) {
    const json& b = root.at("kernels");
    check_keys(b, "kernels", {"samples", "s2_span", "tol"}, problems);
    read_size(b, "kernels", "samples", c.kernels.samples, problems);
    read_num(b, "kernels", "s2_span", c.kernels.s2_span, problems);
    read_num(b, "kernels", "tol", c.kernels.tol, problems);
  }
  if (root.contains("simulate")) {
    const json& b = root.at("simulate");
    check_keys(b, "simulate", {"steps", "probe"}, problems);
    read_int(b, "simulate", "steps", c.simulate.steps, problems);
    read_vec3(b, "simulate", "probe", c.simulate.probe, problems);
  }

  const std::string msg = problems.str();
  if (!msg.empty()) throw ConfigError("invalid configuration:" + msg);
  return c;
}

json vec3_json(const Eigen::Vector3d& v) {
  return json::array({v[0], v[1], v[2]});
}

json echo_json(const Config& c) {
  json j;
  j["material"] = {{"eps", c.params.eps}, {"mu", c.params.mu}};
  j["layer"] = {{"L", vec3_json(c.params.L)},
                {"d", c.params.d},
                {"sigma0", c.params.sigma0},
                {"m", c.params.m},
                {"s1", c.params.s1},
                {"aspect_limit", c.params.aspect_limit}};
  j["time"] = {{"T", c.params.T}, {"cfl", c.cfl}};
  j["grid"] = {{"h", c.h}};
  j["source"] = {{"location", vec3_json(c.source.location)},
                 {"polarization", c.source.polarization},
                 {"amplitude", c.source.amplitude},
                 {"t0", c.source.t0},
                 {"tau", c.source.tau}};
  if (c.scatterer) {
    j["scatterer"] = {{"lo", vec3_json(c.scatterer->lo)},
                      {"hi", vec3_json(c.scatterer->hi)}};
  }
  j["sweep"] = {{"sigma0_values", c.sigma0_values},
                {"d_values", c.d_values},
                {"snapshots", c.snapshots},
                {"margin", c.ref_margin},
                {"history_budget", c.history_budget}};
  j["kernels"] = {{"samples", c.kernels.samples},
                  {"s2_span", c.kernels.s2_span},
                  {"tol", c.kernels.tol}};
  j["simulate"] = {{"steps", c.simulate.steps},
                   {"probe", vec3_json(c.simulate.probe)}};
  return j;
}

// Sorted keys come from the library's object ordering; numbers are
// re-rendered here so both integers and floats have one fixed spelling.
void dump_canonical(const json& j, std::ostream& os) {
  switch (j.type()) {
    case json::value_t::object: {
      os << '{';
      bool first = true;
      for (const auto& item : j.items()) {
        if (!first) os << ',';
        first = false;
        os << json(item.key()).dump() << ':';
        dump_canonical(item.value(), os);
      }
      os << '}';
      break;
    }
    case json::value_t::array: {
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) os << ',';
        dump_canonical(j[i], os);
      }
      os << ']';
      break;
    }
    case json::value_t::number_float:
      os << format_g17(j.get<double>());
      break;
    case json::value_t::number_integer:
      os << j.get<std::int64_t>();
      break;
    case json::value_t::number_unsigned:
      os << j.get<std::uint64_t>();
      break;
    case json::value_t::boolean:
      os << (j.get<bool>() ? "true" : "false");
      break;
    case json::value_t::string:
      os << j.dump();
      break;
    default:
      os << "null";
      break;
  }
}

}  // namespace

std::vector<std::string> Config::validate() {
  if (sigma0_values.empty()) sigma0_values = {params.sigma0};
  if (d_values.empty()) d_values = {params.d};
  std::vector<std::string> warnings;
  std::ostringstream problems;
  const auto absorb = [&problems](const std::function<void()>& f) {
    try {
      f();
    } catch (const ConfigError& e) {
      problems << '\n' << e.what();
    }
  };
  absorb([&] { warnings = params.validate(); });
  absorb([&] { source.validate(params); });
  if (!(cfl > 0.0) || cfl > 1.0) {
    problems << "\n  - cfl factor " << cfl << " outside (0, 1]";
  }
  absorb([&] { make_grid(params, h); });
  if (scatterer) absorb([&] { scatterer->validate(params, h); });
  for (const double s : sigma0_values) {
    if (!(s >= 0.0)) {
      problems << "\n  - sweep sigma0 value " << s << " is negative";
    }
  }
  for (const double dv : d_values) {
    if (!(dv > 0.0)) {
      problems << "\n  - sweep layer thickness " << dv << " is not positive";
    }
  }
  if (snapshots < 2) problems << "\n  - sweep.snapshots must be at least 2";
  if (!(ref_margin > 0.0)) problems << "\n  - sweep.margin must be positive";
  if (kernels.samples == 0) problems << "\n  - kernels.samples must be >= 1";
  if (!(kernels.s2_span >= 0.0)) {
    problems << "\n  - kernels.s2_span must be non-negative";
  }
  if (!(kernels.tol >= 0.0)) problems << "\n  - kernels.tol must be non-negative";
  if (simulate.steps < 0) problems << "\n  - simulate.steps must be >= 0";
  const std::string msg = problems.str();
  if (!msg.empty()) throw ConfigError("invalid configuration:" + msg);
  return warnings;
}

SweepConfig Config::sweep_config(int threads) const {
  SweepConfig sc;
  sc.params = params;
  sc.sigma0_values = sigma0_values;
  sc.d_values = d_values;
  sc.h = h;
  sc.cfl = cfl;
  sc.snapshots = snapshots;
  sc.ref_margin = ref_margin;
  sc.source = source;
  sc.scatterer = scatterer;
  sc.threads = threads;
  sc.history_budget = history_budget;
  return sc;
}

Config parse_config(const std::string& path,
                    std::vector<std::string>* warnings) {
  const std::string text = read_text_file(path);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not well-formed JSON: ") +
                      e.what());
  }
  Config c = config_from_json(root);
  std::vector<std::string> w = c.validate();
  if (warnings) warnings->insert(warnings->end(), w.begin(), w.end());
  return c;
}

std::string canonical_config(const Config& c) {
  std::ostringstream os;
  dump_canonical(echo_json(c), os);
  os << '\n';
  return os.str();
}

std::string config_digest(const Config& c) {
  const std::string text = canonical_config(c);
  std::uint64_t hash = 14695981039346656037ULL;
  for (const unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)hash);
  return buf;
}

}  // namespace upml
