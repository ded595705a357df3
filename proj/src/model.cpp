#include "cojam/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cojam/errors.hpp"
#include "cojam/rng.hpp"

namespace cojam {

double from_db(double x_db) {
  if (!std::isfinite(x_db)) throw DomainError("from_db: non-finite dB value");
  return std::pow(10.0, x_db / 10.0);
}

double to_db(double x_linear) {
  if (!(x_linear > 0.0)) {
    throw DomainError("to_db: value must be positive, got " +
                      std::to_string(x_linear));
  }
  return 10.0 * std::log10(x_linear);
}

RelayLink make_relay(const CVec2& h, const CVec2& g, double gamma_db) {
  RelayLink r;
  r.h = h;
  r.g = g;
  set_gamma_db(r, gamma_db);
  return r;
}

void set_gamma_db(RelayLink& relay, double gamma_db) {
  relay.gamma_db = gamma_db;
  relay.gamma = from_db(gamma_db);
}

void set_gamma0_db(SystemInstance& inst, double gamma0_db) {
  inst.gamma0_db = gamma0_db;
  inst.gamma0 = from_db(gamma0_db);
}

void set_all_relay_gammas_db(SystemInstance& inst, double gamma_db) {
  for (auto& r : inst.relays) set_gamma_db(r, gamma_db);
}

namespace {

bool finite(const cx& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

bool finite(const CVec2& v) { return finite(v.c1) && finite(v.c2); }

// Shared by check_instance (DomainError) and load_instance (ParseError):
// returns a description of the first violated invariant, or empty.
std::string instance_problem(const SystemInstance& inst) {
  if (inst.relays.empty()) return "relays: at least one relay required";
  if (!finite(inst.h0)) return "h0: non-finite";
  if (!finite(inst.g0)) return "g0: non-finite";
  if (!std::isfinite(inst.gamma0_db) || !(inst.gamma0 > 0.0)) {
    return "gamma0_db: must be finite with positive linear value";
  }
  for (std::size_t i = 0; i < inst.relays.size(); ++i) {
    const auto& r = inst.relays[i];
    const std::string tag = "relays[" + std::to_string(i) + "].";
    if (!finite(r.h)) return tag + "h: non-finite";
    if (!finite(r.g)) return tag + "g: non-finite";
    if (!std::isfinite(r.gamma_db) || !(r.gamma > 0.0)) {
      return tag + "gamma_db: must be finite with positive linear value";
    }
  }
  return {};
}

}  // namespace

void check_instance(const SystemInstance& inst) {
  const std::string problem = instance_problem(inst);
  if (!problem.empty()) throw DomainError("invalid instance: " + problem);
}

SystemInstance example_instance() {
  SystemInstance inst;
  inst.h0 = cx{0.24, 0.78};
  inst.g0 = cx{1.12, -1.15};
  set_gamma0_db(inst, 5.0);

  const CVec2 h_rows[5] = {
      {cx{0.76, -0.64}, cx{-0.10, -0.84}},
      {cx{-1.077, 1.15}, cx{-0.96, -0.18}},
      {cx{0.28, 0.09}, cx{-0.03, -0.65}},
      {cx{0.55, 0.69}, cx{-0.03, 0.23}},
      {cx{0.39, 0.01}, cx{-0.82, 0.27}},
  };
  const CVec2 g_rows[5] = {
      {cx{0.22, -0.03}, cx{0.88, 0.15}},
      {cx{-0.165, -0.29}, cx{0.24, 0.77}},
      {cx{1.10, -0.47}, cx{0.77, 0.27}},
      {cx{0.33, 0.79}, cx{0.20, -0.24}},
      {cx{0.88, -0.05}, cx{0.52, -0.50}},
  };
  inst.relays.reserve(5);
  for (int i = 0; i < 5; ++i) {
    inst.relays.push_back(make_relay(h_rows[i], g_rows[i], 2.0));
  }
  return inst;
}

SystemInstance random_instance(std::size_t n, std::uint64_t seed,
                               double variance) {
  if (n < 1) throw DomainError("random_instance: need at least one relay");
  if (!(variance > 0.0)) {
    throw DomainError("random_instance: variance must be positive");
  }
  GaussianRng rng(derive_seed(seed, 0));
  SystemInstance inst;
  // Fixed draw order so instances are reproducible: h0, g0, then per relay
  // h before g.
  inst.h0 = rng.complex_normal(variance);
  inst.g0 = rng.complex_normal(variance);
  set_gamma0_db(inst, 0.0);
  inst.relays.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CVec2 h = rng.complex_normal_pair(variance);
    const CVec2 g = rng.complex_normal_pair(variance);
    inst.relays.push_back(make_relay(h, g, 0.0));
  }
  return inst;
}

namespace {

using nlohmann::json;

json complex_to_json(const cx& v) { return json::array({v.real(), v.imag()}); }

json pair_to_json(const CVec2& v) {
  return json::array({complex_to_json(v.c1), complex_to_json(v.c2)});
}

const json& require_field(const json& j, const std::string& field) {
  const auto it = j.find(field);
  if (it == j.end()) throw ParseError("missing field: " + field);
  return *it;
}

double json_real(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field + ": expected a number");
  return j.get<double>();
}

cx json_complex(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(field + ": expected a two-element [re, im] array");
  }
  return {json_real(j[0], field + "[0]"), json_real(j[1], field + "[1]")};
}

CVec2 json_pair(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(field + ": expected an array of two complex numbers");
  }
  return {json_complex(j[0], field + "[0]"), json_complex(j[1], field + "[1]")};
}

}  // namespace

void save_instance(const SystemInstance& inst, std::ostream& out) {
  json j;
  j["h0"] = complex_to_json(inst.h0);
  j["g0"] = complex_to_json(inst.g0);
  j["gamma0_db"] = inst.gamma0_db;
  json relays = json::array();
  for (const auto& r : inst.relays) {
    relays.push_back({{"h", pair_to_json(r.h)},
                      {"g", pair_to_json(r.g)},
                      {"gamma_db", r.gamma_db}});
  }
  j["relays"] = std::move(relays);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("save_instance: write failed");
}

void save_instance(const SystemInstance& inst, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("save_instance: cannot open for writing: " + path);
  save_instance(inst, f);
  f.flush();
  if (!f) throw IoError("save_instance: write failed: " + path);
}

SystemInstance load_instance(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance document is not valid JSON: ") +
                     e.what());
  }
  if (!j.is_object()) throw ParseError("top level: expected an object");

  SystemInstance inst;
  inst.h0 = json_complex(require_field(j, "h0"), "h0");
  inst.g0 = json_complex(require_field(j, "g0"), "g0");
  set_gamma0_db(inst,
                json_real(require_field(j, "gamma0_db"), "gamma0_db"));

  const json& relays = require_field(j, "relays");
  if (!relays.is_array()) throw ParseError("relays: expected an array");
  for (std::size_t i = 0; i < relays.size(); ++i) {
    const std::string tag = "relays[" + std::to_string(i) + "]";
    const json& rj = relays[i];
    if (!rj.is_object()) throw ParseError(tag + ": expected an object");
    const CVec2 h = json_pair(require_field(rj, "h"), tag + ".h");
    const CVec2 g = json_pair(require_field(rj, "g"), tag + ".g");
    const double gamma_db =
        json_real(require_field(rj, "gamma_db"), tag + ".gamma_db");
    if (!std::isfinite(gamma_db)) {
      throw ParseError(tag + ".gamma_db: non-finite");
    }
    inst.relays.push_back(make_relay(h, g, gamma_db));
  }

  const std::string problem = instance_problem(inst);
  if (!problem.empty()) throw ParseError(problem);
  return inst;
}

SystemInstance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("load_instance: cannot open for reading: " + path);
  return load_instance(f);
}

}  // namespace cojam
