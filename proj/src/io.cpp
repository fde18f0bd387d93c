#include "sstqp/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sstqp {

using nlohmann::json;

namespace {

Matrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidArgument(std::string(what) + " must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Matrix m(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
      throw InvalidArgument(std::string(what) + " must be square");
    }
    for (Eigen::Index k = 0; k < rows; ++k) {
      const json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) throw InvalidArgument(std::string(what) + " has a non-numeric entry");
      m(i, k) = v.get<double>();
    }
  }
  if (!m.allFinite()) throw NonFinite(std::string(what) + " has a non-finite entry");
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector vector_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidArgument(std::string(what) + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InvalidArgument(std::string(what) + " has a non-numeric entry");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  if (!v.allFinite()) throw NonFinite(std::string(what) + " has a non-finite entry");
  return v;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << content;
}

InstanceFile parse_instance(const std::string& json_text, std::vector<std::string>* warnings) {
  const json j = parse_json(json_text);
  if (!j.is_object() || !j.contains("Q")) throw InvalidArgument("instance: missing field 'Q'");
  const Matrix q = matrix_from_json(j["Q"], "instance Q");
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<long long>() != q.rows()) {
      throw InvalidArgument("instance: 'n' does not match the shape of Q");
    }
  }
  if (q.rows() < 1) throw InvalidArgument("instance: empty Q");
  const double asym = (q - q.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 && warnings) {
    std::ostringstream os;
    os << "Q is not symmetric (max |Q_ij - Q_ji| = " << asym << "); symmetrized";
    warnings->push_back(os.str());
  }
  InstanceFile f{SymMatrix(q), std::nullopt, "", std::nullopt, std::nullopt};
  if (j.contains("rho") && !j["rho"].is_null()) {
    if (!j["rho"].is_number_integer()) throw InvalidArgument("instance: 'rho' must be an integer");
    const int rho = j["rho"].get<int>();
    if (rho < 1 || rho > q.rows()) throw InvalidArgument("instance: rho must lie in [1, n]");
    f.rho = rho;
  }
  if (j.contains("label") && j["label"].is_string()) f.label = j["label"].get<std::string>();
  if (j.contains("seed") && j["seed"].is_number_integer()) f.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("known_value") && j["known_value"].is_number()) {
    f.known_value = j["known_value"].get<double>();
  }
  return f;
}

InstanceFile load_instance(const std::string& path, std::vector<std::string>* warnings) {
  return parse_instance(read_file(path), warnings);
}

std::string dump_instance(const InstanceFile& f) {
  json j;
  j["n"] = f.Q.n();
  if (f.rho) j["rho"] = *f.rho;
  j["Q"] = matrix_to_json(f.Q.dense());
  if (!f.label.empty()) j["label"] = f.label;
  if (f.seed) j["seed"] = *f.seed;
  if (f.known_value) j["known_value"] = *f.known_value;
  return j.dump(2) + "\n";
}

void save_instance(const InstanceFile& f, const std::string& path) {
  write_file(path, dump_instance(f));
}

InstanceFile to_file(const GeneratedInstance& g) {
  return {g.instance.Q, g.instance.rho, g.instance.label, g.seed, g.known_value};
}

std::string dump_witness(const ExtendedLiftedPoint& p, int rho) {
  p.check_dimensions();
  json j;
  j["x"] = vector_to_json(p.x);
  j["u"] = vector_to_json(p.u);
  j["X"] = matrix_to_json(p.X.dense());
  j["U"] = matrix_to_json(p.U.dense());
  j["R"] = matrix_to_json(p.R);
  j["rho"] = rho;
  return j.dump(2) + "\n";
}

ExtendedLiftedPoint parse_witness(const std::string& json_text, int* rho) {
  const json j = parse_json(json_text);
  for (const char* key : {"x", "u", "X", "U", "R"}) {
    if (!j.contains(key)) throw InvalidArgument(std::string("witness: missing field '") + key + "'");
  }
  ExtendedLiftedPoint p;
  p.x = vector_from_json(j["x"], "witness x");
  p.u = vector_from_json(j["u"], "witness u");
  p.X = SymMatrix(matrix_from_json(j["X"], "witness X"));
  p.U = SymMatrix(matrix_from_json(j["U"], "witness U"));
  p.R = matrix_from_json(j["R"], "witness R");
  p.check_dimensions();
  if (rho && j.contains("rho") && j["rho"].is_number_integer()) *rho = j["rho"].get<int>();
  return p;
}

Vector parse_vector(const std::string& text) {
  std::string t = text;
  const auto first = t.find_first_not_of(" \t\n");
  if (first != std::string::npos && t[first] == '[') return vector_from_json(parse_json(t), "vector");
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream is(t);
  std::vector<double> vals;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse '" + tok + "' as a number");
    }
  }
  if (vals.empty()) throw InvalidArgument("empty vector");
  Vector v = Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  if (!v.allFinite()) throw NonFinite("vector has a non-finite entry");
  return v;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream is(t);
  std::vector<int> out;
  std::string tok;
  auto to_int = [](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse '" + s + "' as an integer");
    }
  };
  while (is >> tok) {
    const auto dash = tok.find('-', 1);
    if (dash != std::string::npos) {
      const int lo = to_int(tok.substr(0, dash));
      const int hi = to_int(tok.substr(dash + 1));
      if (hi < lo) throw InvalidArgument("empty range '" + tok + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(to_int(tok));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw InvalidArgument("empty integer list");
  return out;
}

}  // namespace sstqp
