#include "problem_file.hpp"

#include <fstream>
#include <sstream>

#include "cdual/errors.hpp"

namespace cdual::cli {
namespace {

using nlohmann::json;

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Rational scalar(const json& v, const std::string& path) {
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number_float()) return Rational::from_double(v.get<double>());
  } catch (const ParseError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  throw ValidationError(path + " must be a number or a \"p/q\" string");
}

const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(path + (path.empty() ? "" : ".") + key + " is missing");
  return *it;
}

std::vector<Rational> vector_of(const json& v, std::size_t n, const std::string& path) {
  if (!v.is_array() || v.size() != n)
    throw ValidationError(path + " must be an array of length " + std::to_string(n));
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(scalar(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

RationalMatrix matrix_of(const json& v, std::size_t n, const std::string& path) {
  if (!v.is_array() || v.size() != n) throw ValidationError(path + " must have " + std::to_string(n) + " rows");
  RationalMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = vector_of(v[i], n, path + "[" + std::to_string(i) + "]");
    for (std::size_t j = 0; j < n; ++j) M(i, j) = row[j];
  }
  return M;
}

std::size_t count_of(const json& doc, const char* key) {
  const json& v = field(doc, key, "");
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0 || v.get<std::size_t>() > kMaxDim)
    throw ValidationError(std::string(key) + " must be an integer in [1, 4]");
  return v.get<std::size_t>();
}

json rational_json(const Rational& r) { return r.to_string(); }

json vector_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(rational_json(r));
  return out;
}

json matrix_json(const RationalMatrix& M) {
  json out = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(rational_json(M(i, j)));
    out.push_back(row);
  }
  return out;
}

}  // namespace

CanonicalProblem parse_problem(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(source) + ": " + location(text, e.byte == 0 ? 0 : e.byte - 1) +
                     ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) throw ValidationError(std::string(source) + ": top level must be an object");

  try {
    const std::size_t n = count_of(doc, "n");
    const std::size_t m = count_of(doc, "m");
    RationalMatrix A = matrix_of(field(doc, "A", ""), n, "A");
    std::vector<Rational> f = vector_of(field(doc, "f", ""), n, "f");

    const json& ops_json = field(doc, "operators", "");
    if (!ops_json.is_array() || ops_json.size() != m)
      throw ValidationError("operators must be an array of length m = " + std::to_string(m));
    std::vector<QuadOperator> ops;
    for (std::size_t k = 0; k < m; ++k) {
      const std::string path = "operators[" + std::to_string(k) + "]";
      const json& op = ops_json[k];
      if (!op.is_object()) throw ValidationError(path + " must be an object");
      QuadOperator q;
      q.C = matrix_of(field(op, "C", path), n, path + ".C");
      q.b = vector_of(field(op, "b", path), n, path + ".b");
      q.c = op.contains("c") ? scalar(op["c"], path + ".c") : Rational(0);
      ops.push_back(std::move(q));
    }

    const json& v_json = field(doc, "V", "");
    if (!v_json.is_array() || v_json.size() != m)
      throw ValidationError("V must be an array of length m = " + std::to_string(m));
    ConvexQuadV V;
    for (std::size_t k = 0; k < m; ++k) {
      const std::string path = "V[" + std::to_string(k) + "]";
      if (!v_json[k].is_object()) throw ValidationError(path + " must be an object");
      Rational a = scalar(field(v_json[k], "a", path), path + ".a");
      Rational beta = scalar(field(v_json[k], "beta", path), path + ".beta");
      if (a.sign() <= 0) throw ValidationError("a[" + std::to_string(k) + "] must be > 0");
      V.terms.push_back({a, beta});
    }
    return CanonicalProblem(std::move(A), std::move(f), std::move(ops), std::move(V));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(source) + ": " + e.what());
  }
}

CanonicalProblem load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str(), path.string());
}

nlohmann::ordered_json problem_to_json(const CanonicalProblem& pr) {
  nlohmann::ordered_json doc;
  doc["n"] = pr.n();
  doc["m"] = pr.m();
  doc["A"] = matrix_json(pr.A_exact());
  doc["f"] = vector_json(pr.f_exact());
  doc["operators"] = nlohmann::ordered_json::array();
  for (const auto& op : pr.ops_exact()) {
    nlohmann::ordered_json o;
    o["C"] = matrix_json(op.C);
    o["b"] = vector_json(op.b);
    o["c"] = op.c.to_string();
    doc["operators"].push_back(o);
  }
  doc["V"] = nlohmann::ordered_json::array();
  for (const auto& t : pr.V().terms) {
    nlohmann::ordered_json o;
    o["a"] = t.a.to_string();
    o["beta"] = t.beta.to_string();
    doc["V"].push_back(o);
  }
  return doc;
}

void save_problem_file(const CanonicalProblem& pr, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  out << problem_to_json(pr).dump(2) << '\n';
}

}  // namespace cdual::cli
