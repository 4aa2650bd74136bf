#include "collbell/io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace collbell {

BipartiteDensity read_density(std::istream& in) {
  int dA = 0, dB = 0;
  if (!(in >> dA >> dB) || dA < 1 || dB < 1) {
    throw std::invalid_argument("density file: expected a header line \"dA dB\" with positive dimensions");
  }
  const int n = dA * dB;
  CMatrix rho(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double re = 0.0, im = 0.0;
      if (!(in >> re >> im)) {
        throw std::invalid_argument("density file: expected " + std::to_string(n * n) + " \"re im\" pairs, got " +
                                    std::to_string(i * n + j));
      }
      rho(i, j) = cplx(re, im);
    }
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("density file: trailing data after matrix entries");

  // Text files carry limited precision: accept small deviations, then
  // restore exact Hermiticity and unit trace before the strict checks.
  if (!is_hermitian(rho, 1e-8)) throw std::invalid_argument("density file: matrix is not Hermitian");
  const cplx tr = rho.trace();
  if (std::abs(tr - cplx(1.0)) > 1e-8) throw std::invalid_argument("density file: trace differs from 1");
  rho = (rho + rho.adjoint()) * 0.5;
  rho /= rho.trace().real();
  return BipartiteDensity::from_matrix(std::move(rho), dA, dB);
}

BipartiteDensity load_density_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open density file: " + path);
  return read_density(in);
}

void write_density(std::ostream& out, const BipartiteDensity& rho) {
  out << rho.dA() << ' ' << rho.dB() << '\n' << std::setprecision(17);
  const CMatrix& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << m(i, j).real() << ' ' << m(i, j).imag() << (j + 1 == m.cols() ? '\n' : ' ');
    }
  }
}

namespace {

template <typename T>
T field(const json& obj, const char* key) {
  if (!obj.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

BipartiteDensity parse_state_spec(const json& spec) {
  if (!spec.is_object()) throw std::invalid_argument("state spec must be a JSON object");
  const std::string kind = field<std::string>(spec, "kind");
  if (kind == "schmidt") return to_density(schmidt_state(field<std::vector<double>>(spec, "coeffs")));
  if (kind == "werner") return werner(field<double>(spec, "p"));
  if (kind == "isotropic") return isotropic(field<int>(spec, "d"), field<double>(spec, "p"));
  if (kind == "densityfile") return load_density_file(field<std::string>(spec, "path"));
  throw std::invalid_argument("unknown state kind \"" + kind + "\"");
}

BellFunctional parse_functional(const json& spec) {
  if (!spec.is_object()) throw std::invalid_argument("inequality spec must be a JSON object");
  const std::string name = spec.contains("name") ? field<std::string>(spec, "name") : std::string("custom");
  const int oA = spec.contains("oA") ? field<int>(spec, "oA") : 2;
  const int oB = spec.contains("oB") ? field<int>(spec, "oB") : 2;
  BellFunctional::Builder b(name, field<int>(spec, "sA"), field<int>(spec, "sB"), oA, oB);
  auto terms = [&](const char* key) {
    if (!spec.contains(key)) return json::array();
    const json& arr = spec.at(key);
    if (!arr.is_array()) throw std::invalid_argument(std::string("field \"") + key + "\" must be an array");
    return arr;
  };
  for (const json& t : terms("joint")) {
    b.joint(field<int>(t, "a"), field<int>(t, "b"), field<int>(t, "k"), field<int>(t, "l"), field<double>(t, "c"));
  }
  for (const json& t : terms("margA")) b.margA(field<int>(t, "a"), field<int>(t, "k"), field<double>(t, "c"));
  for (const json& t : terms("margB")) b.margB(field<int>(t, "b"), field<int>(t, "l"), field<double>(t, "c"));
  return std::move(b).finalize();
}

json functional_to_json(const BellFunctional& f) {
  json j = {{"name", f.name()}, {"sA", f.sA()}, {"sB", f.sB()}, {"oA", f.oA()}, {"oB", f.oB()}};
  json joint = json::array(), margA = json::array(), margB = json::array();
  for (int a = 0; a < f.oA(); ++a) {
    for (int b = 0; b < f.oB(); ++b) {
      for (int k = 0; k < f.sA(); ++k) {
        for (int l = 0; l < f.sB(); ++l) {
          if (f.joint(a, b, k, l) != 0.0) joint.push_back({{"a", a}, {"b", b}, {"k", k}, {"l", l}, {"c", f.joint(a, b, k, l)}});
        }
      }
    }
  }
  for (int a = 0; a < f.oA(); ++a) {
    for (int k = 0; k < f.sA(); ++k) {
      if (f.margA(a, k) != 0.0) margA.push_back({{"a", a}, {"k", k}, {"c", f.margA(a, k)}});
    }
  }
  for (int b = 0; b < f.oB(); ++b) {
    for (int l = 0; l < f.sB(); ++l) {
      if (f.margB(b, l) != 0.0) margB.push_back({{"b", b}, {"l", l}, {"c", f.margB(b, l)}});
    }
  }
  j["joint"] = joint;
  j["margA"] = margA;
  j["margB"] = margB;
  j["lhv_bound"] = f.lhv_bound();
  return j;
}

json load_json_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::invalid_argument("cannot open " + arg.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

BellFunctional parse_functional_arg(const std::string& arg) {
  if (arg == "ch" || arg == "CH") return ch();
  if (arg == "chsh" || arg == "CHSH") return chsh();
  if (arg == "i3322" || arg == "I3322") return i3322();
  return parse_functional(load_json_arg(arg));
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace collbell
