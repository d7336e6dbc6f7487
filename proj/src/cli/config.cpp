#include "tomowitness/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace tomowitness::cli {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(join(path, key), "missing required field");
  return *it;
}

const Json* optional_field(const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  return j;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

Complex complex_value(const Json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], index(path, 0)), number(j[1], index(path, 1))};
  throw ConfigError(path, "expected a number or [re, im]");
}

ComplexVector complex_vector(const Json& j, const std::string& path) {
  require_array(j, path);
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_value(j[i], index(path, i));
  return v;
}

ComplexMatrix complex_matrix(const Json& j, const std::string& path) {
  require_array(j, path);
  if (j.empty()) throw ConfigError(path, "matrix has no rows");
  const std::size_t n = j.size();
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const ComplexVector row = complex_vector(j[r], index(path, r));
    if (static_cast<std::size_t>(row.size()) != n) throw ConfigError(index(path, r), "matrix must be square");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

std::vector<double> number_list(const Json& j, const std::string& path, std::size_t expected) {
  require_array(j, path);
  if (j.size() != expected) throw ConfigError(path, "expected " + std::to_string(expected) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], index(path, i)));
  return out;
}

/// Runs a module constructor and reports its failure against a config field.
template <typename F>
auto anchored(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

Quorum parse_quorum(const Json& j, const std::string& path) {
  const Json& type = require(j, "type", path);
  if (!type.is_string()) throw ConfigError(join(path, "type"), "expected a string");
  const std::string kind = type.get<std::string>();
  if (kind == "pauli") {
    std::vector<double> w{1.0 / 3, 1.0 / 3, 1.0 / 3};
    if (const Json* weights = optional_field(j, "weights")) w = number_list(*weights, join(path, "weights"), 3);
    double sum = 0.0;
    for (double x : w) sum += x;
    if (std::abs(sum - 1.0) > 1e-12) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "weights must sum to 1 (got " << sum << ")";
      throw ConfigError(join(path, "weights"), msg.str());
    }
    return anchored(join(path, "weights"), [&] { return pauli_quorum(w[0], w[1], w[2]); });
  }
  if (kind == "bases") {
    const std::string spath = join(path, "sectors");
    const Json& sectors = require_array(require(j, "sectors", path), spath);
    if (sectors.empty()) throw ConfigError(spath, "at least one sector required");
    std::vector<QuorumSector> out;
    for (std::size_t a = 0; a < sectors.size(); ++a) {
      const std::string apath = index(spath, a);
      const Json& s = sectors[a];
      const double weight = number(require(s, "weight", apath), join(apath, "weight"));
      std::string label = std::to_string(a);
      if (const Json* l = optional_field(s, "label")) {
        if (!l->is_string()) throw ConfigError(join(apath, "label"), "expected a string");
        label = l->get<std::string>();
      }
      const std::string vpath = join(apath, "vectors");
      const Json& vecs = require_array(require(s, "vectors", apath), vpath);
      if (vecs.empty()) throw ConfigError(vpath, "no basis vectors");
      ComplexMatrix basis(static_cast<Eigen::Index>(vecs.size()), static_cast<Eigen::Index>(vecs.size()));
      for (std::size_t k = 0; k < vecs.size(); ++k) {
        const ComplexVector v = complex_vector(vecs[k], index(vpath, k));
        if (v.size() != basis.rows()) throw ConfigError(index(vpath, k), "vector length must equal the number of vectors");
        basis.col(static_cast<Eigen::Index>(k)) = v;
      }
      MeasurementBasis mb = anchored(vpath, [&] { return MeasurementBasis(basis); });
      out.push_back({std::move(mb), weight, label});
    }
    return anchored(spath, [&] { return Quorum(std::move(out)); });
  }
  throw ConfigError(join(path, "type"), "unknown quorum type '" + kind + "' (expected pauli or bases)");
}

struct ParsedGenerator {
  GkslGenerator generator;
  std::string name;
};

ParsedGenerator parse_generator(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  if (const Json* preset = optional_field(j, "preset")) {
    if (!preset->is_string()) throw ConfigError(join(path, "preset"), "expected a string");
    const std::string name = preset->get<std::string>();
    const auto omega = [&] {
      const Json* w = optional_field(j, "omega");
      return w ? number(*w, join(path, "omega")) : 1.0;
    };
    const auto gamma = [&] {
      const Json* g = optional_field(j, "gamma");
      return g ? number_list(*g, join(path, "gamma"), 3) : std::vector<double>{1.0, 1.0, 1.0};
    };
    if (name == "example1") {
      const double w = omega();
      return {example1_generator(w), name};
    }
    if (name == "example2") {
      const double w = omega();
      const auto g = gamma();
      return {anchored(join(path, "gamma"), [&] { return example2_generator(w, g[0], g[1], g[2]); }), name};
    }
    if (name == "example3") {
      const auto g = gamma();
      return {anchored(join(path, "gamma"), [&] { return example3_generator(g[0], g[1], g[2]); }), name};
    }
    throw ConfigError(join(path, "preset"), "unknown preset '" + name + "' (expected example1, example2 or example3)");
  }
  const ComplexMatrix h = complex_matrix(require(j, "hamiltonian", path), join(path, "hamiltonian"));
  std::vector<ComplexMatrix> jumps;
  if (const Json* js = optional_field(j, "jumps")) {
    require_array(*js, join(path, "jumps"));
    for (std::size_t k = 0; k < js->size(); ++k) {
      const std::string jpath = index(join(path, "jumps"), k);
      ComplexMatrix v = complex_matrix((*js)[k], jpath);
      if (v.rows() != h.rows()) throw ConfigError(jpath, "jump operator dimension differs from the Hamiltonian");
      jumps.push_back(std::move(v));
    }
  }
  return {anchored(path, [&] { return GkslGenerator(h, jumps); }), "explicit"};
}

std::vector<double> parse_grid(const Json& j, const std::string& path) {
  std::vector<double> grid;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) grid.push_back(number(j[i], index(path, i)));
    if (grid.empty()) throw ConfigError(path, "time grid is empty");
  } else if (j.is_object()) {
    const double start = number(require(j, "start", path), join(path, "start"));
    const double stop = number(require(j, "stop", path), join(path, "stop"));
    const Json& c = require(j, "count", path);
    if (!c.is_number_integer() || c.get<long long>() < 2) throw ConfigError(join(path, "count"), "expected an integer >= 2");
    if (!(start > 0.0) || !(stop > start)) throw ConfigError(path, "log range needs 0 < start < stop");
    bool zero = true;
    if (const Json* z = optional_field(j, "include_zero")) {
      if (!z->is_boolean()) throw ConfigError(join(path, "include_zero"), "expected a boolean");
      zero = z->get<bool>();
    }
    const auto count = c.get<long long>();
    if (zero) grid.push_back(0.0);
    const double ratio = std::log(stop / start) / static_cast<double>(count - 1);
    for (long long k = 0; k < count; ++k) grid.push_back(start * std::exp(ratio * static_cast<double>(k)));
  } else {
    throw ConfigError(path, "expected a list of times or a log range object");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0) throw ConfigError(index(path, i), "times must be >= 0");
  }
  return grid;
}

Json quorum_echo(const Quorum& q) {
  Json sectors = Json::array();
  for (const QuorumSector& s : q.sectors()) {
    Json vectors = Json::array();
    for (Eigen::Index k = 0; k < s.basis.vectors().cols(); ++k) {
      Json v = Json::array();
      for (Eigen::Index i = 0; i < s.basis.vectors().rows(); ++i) {
        const Complex c = s.basis.vectors()(i, k);
        v.push_back(Json::array({c.real(), c.imag()}));
      }
      vectors.push_back(std::move(v));
    }
    sectors.push_back(Json{{"label", s.label}, {"weight", s.weight}, {"vectors", std::move(vectors)}});
  }
  return Json{{"type", "bases"}, {"sectors", std::move(sectors)}};
}

Json generator_echo(const GkslGenerator& g, const std::string& name, const Json& source) {
  Json out;
  out["model"] = name;
  if (name != "explicit") {
    for (const char* key : {"omega", "gamma"})
      if (const Json* v = optional_field(source, key)) out[key] = *v;
  }
  out["hamiltonian"] = to_json(g.hamiltonian());
  Json jumps = Json::array();
  for (const ComplexMatrix& v : g.jumps()) jumps.push_back(to_json(v));
  out["jumps"] = std::move(jumps);
  return out;
}

}  // namespace

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

Json to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
}

DensityMatrix parse_state(const Json& j, int dimension, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object with bloch, density or pure");
  if (const Json* b = optional_field(j, "bloch")) {
    if (dimension != 2) throw ConfigError(join(path, "bloch"), "Bloch vectors describe qubits only");
    const auto r = number_list(*b, join(path, "bloch"), 3);
    return anchored(join(path, "bloch"), [&] { return bloch_to_density({r[0], r[1], r[2]}); });
  }
  if (const Json* d = optional_field(j, "density")) {
    const ComplexMatrix rho = complex_matrix(*d, join(path, "density"));
    if (rho.rows() != dimension) throw ConfigError(join(path, "density"), "dimension differs from the model");
    return anchored(join(path, "density"), [&] { return DensityMatrix(rho); });
  }
  if (const Json* p = optional_field(j, "pure")) {
    ComplexVector psi = complex_vector(*p, join(path, "pure"));
    if (psi.size() != dimension) throw ConfigError(join(path, "pure"), "dimension differs from the model");
    if (psi.norm() == 0.0) throw ConfigError(join(path, "pure"), "zero vector");
    psi.normalize();
    return DensityMatrix(psi * psi.adjoint());
  }
  throw ConfigError(path, "expected one of bloch, density, pure");
}

TomographicVector parse_tomogram(const Json& j, const Quorum& quorum, const std::string& path) {
  const std::string tpath = join(path, "tomogram");
  const Json& t = require_array(require(j, "tomogram", path), tpath);
  const auto values = number_list(t, tpath, static_cast<std::size_t>(quorum.size()));
  TomographicVector p{quorum.dim(), quorum.sector_count(), RealVector(quorum.size())};
  for (std::size_t i = 0; i < values.size(); ++i) p.values(static_cast<Eigen::Index>(i)) = values[i];
  return p;
}

ModelConfig parse_model_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "expected an object");
  ParsedGenerator gen = parse_generator(require(j, "generator", ""), "generator");

  std::optional<Quorum> quorum;
  if (const Json* q = optional_field(j, "quorum")) {
    quorum = parse_quorum(*q, "quorum");
  } else if (gen.generator.dim() == 2) {
    quorum = uniform_pauli_quorum();
  } else {
    throw ConfigError("quorum", "missing required field (only qubit models default to the uniform Pauli quorum)");
  }
  if (quorum->dim() != gen.generator.dim()) throw ConfigError("quorum", "dimension differs from the generator");
  if (const Json* d = optional_field(j, "dimension")) {
    if (!d->is_number_integer() || d->get<long long>() != gen.generator.dim()) {
      throw ConfigError("dimension", "expected " + std::to_string(gen.generator.dim()) + " to match the generator");
    }
  }

  ModelConfig c{.dimension = gen.generator.dim(),
                .quorum = std::move(*quorum),
                .generator = std::move(gen.generator),
                .model_name = gen.name};

  if (const Json* g = optional_field(j, "time_grid")) c.grid = parse_grid(*g, "time_grid");
  if (const Json* t = optional_field(j, "tolerance")) {
    c.tolerance = number(*t, "tolerance");
    if (!(c.tolerance > 0.0)) throw ConfigError("tolerance", "must be positive");
  }
  if (const Json* s = optional_field(j, "strategy")) {
    if (!s->is_string()) throw ConfigError("strategy", "expected a string");
    c.strategy = parse_lift_strategy(s->get<std::string>());
    if (!c.strategy) throw ConfigError("strategy", "expected pseudoinverse or sector-local");
  }
  if (const Json* s = optional_field(j, "seed")) {
    if (!s->is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
    c.seed = s->get<std::uint64_t>();
  }
  if (const Json* n = optional_field(j, "consistency_states")) {
    if (!n->is_number_integer() || n->get<long long>() < 0 || n->get<long long>() > 10000) {
      throw ConfigError("consistency_states", "expected an integer in [0, 10000]");
    }
    c.consistency_states = n->get<int>();
  }
  if (const Json* s = optional_field(j, "states")) {
    require_array(*s, "states");
    for (std::size_t i = 0; i < s->size(); ++i) c.states.push_back(parse_state((*s)[i], c.dimension, index("states", i)));
  }
  if (const Json* t = optional_field(j, "tomograms")) {
    require_array(*t, "tomograms");
    for (std::size_t i = 0; i < t->size(); ++i) c.tomograms.push_back(parse_tomogram((*t)[i], c.quorum, index("tomograms", i)));
  }

  c.echo["dimension"] = c.dimension;
  c.echo["quorum"] = quorum_echo(c.quorum);
  c.echo["generator"] = generator_echo(c.generator, c.model_name, require(j, "generator", ""));
  c.echo["time_grid"] = c.grid;
  c.echo["tolerance"] = c.tolerance;
  c.echo["strategy"] = c.strategy ? Json(std::string(to_string(*c.strategy))) : Json(nullptr);
  c.echo["seed"] = c.seed;
  c.echo["consistency_states"] = c.consistency_states;
  return c;
}

ModelConfig load_model_config(const std::filesystem::path& path) { return parse_model_config(read_json_file(path)); }

}  // namespace tomowitness::cli
