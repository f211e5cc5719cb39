#include "juryconv/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace juryconv {

Backend parse_backend(std::string_view name) {
  if (name == "rational") return Backend::rational;
  if (name == "complex") return Backend::complex;
  throw ParseError("backend", "expected 'rational' or 'complex', got '" + std::string(name) + "'");
}

std::string_view backend_name(Backend b) {
  return b == Backend::rational ? ScalarTraits<Rational>::name : ScalarTraits<Complex>::name;
}

Backend backend_of(const AnyMatrix& m) {
  return std::holds_alternative<ConvMatrix<Rational>>(m) ? Backend::rational : Backend::complex;
}

AnyMatrix to_backend(const AnyMatrix& m, Backend b) {
  if (backend_of(m) == b) return m;
  if (b == Backend::complex) return to_complex(std::get<ConvMatrix<Rational>>(m));
  throw BackendMismatch("cannot convert a complex matrix to the rational backend");
}

void require_same_backend(const AnyMatrix& a, const AnyMatrix& b) {
  if (backend_of(a) != backend_of(b))
    throw BackendMismatch("operands use different backends (" +
                          std::string(backend_name(backend_of(a))) + " vs " +
                          std::string(backend_name(backend_of(b))) + ")");
}

json scalar_to_json(const Rational& x) { return x.str(); }
json scalar_to_json(const Complex& x) { return json::array({x.real(), x.imag()}); }
json scalar_to_json(std::int64_t x) { return x; }

Rational rational_from_json(const json& j, const std::string& field) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) return Rational::parse(j.dump());
  } catch (const ParseError& e) {
    throw ParseError(field, e.what());
  } catch (const Error& e) {
    throw ParseError(field, e.what());
  }
  throw ParseError(field, "expected a rational (\"p/q\" or a number)");
}

Complex complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_string()) {
    try {
      return {Rational::parse(j.get<std::string>()).to_double(), 0.0};
    } catch (const Error& e) {
      throw ParseError(field, e.what());
    }
  }
  throw ParseError(field, "expected a number or [re, im]");
}

json matrix_to_json(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return matrix_to_json(x); }, m);
}

namespace {

std::size_t require_size(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(key, "missing");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ParseError(key, "expected a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

template <class T, class Decode>
ConvMatrix<T> decode_matrix(const json& j, std::size_t rows, std::size_t cols, Decode decode) {
  const json& data = j.at("data");
  if (!data.is_array()) throw ParseError("data", "expected an array");
  std::vector<T> out;
  out.reserve(rows * cols);
  if (data.size() != rows)
    throw ParseError("data", "expected " + std::to_string(rows) + " rows, got " +
                                 std::to_string(data.size()));
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = data[i];
    const std::string rf = "data[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != cols)
      throw ParseError(rf, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      out.push_back(decode(row[c], rf + "[" + std::to_string(c) + "]"));
  }
  try {
    return ConvMatrix<T>(rows, cols, std::move(out));
  } catch (const Error& e) {
    throw ParseError("data", e.what());
  }
}

}  // namespace

AnyMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("", "matrix JSON must be an object");
  const std::size_t rows = require_size(j, "rows");
  const std::size_t cols = require_size(j, "cols");
  if (!j.contains("data")) throw ParseError("data", "missing");
  std::string scalar = "rational";
  if (j.contains("scalar")) {
    if (!j.at("scalar").is_string()) throw ParseError("scalar", "expected a string");
    scalar = j.at("scalar").get<std::string>();
  }
  if (scalar == "rational")
    return decode_matrix<Rational>(j, rows, cols, rational_from_json);
  if (scalar == "complex") return decode_matrix<Complex>(j, rows, cols, complex_from_json);
  throw ParseError("scalar", "expected 'rational' or 'complex', got '" + scalar + "'");
}

GridDistribution<Rational> distribution_from_json(const json& j) {
  if (j.is_object() && j.contains("kind") && j.at("kind") != "distribution")
    throw ParseError("kind", "expected \"distribution\"");
  const AnyMatrix m = matrix_from_json(j);
  if (backend_of(m) != Backend::rational)
    throw ParseError("scalar", "distributions use the rational backend");
  try {
    return GridDistribution<Rational>(std::get<ConvMatrix<Rational>>(m));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("data", e.what());
  }
}

json distribution_to_json(const GridDistribution<Rational>& d) {
  json j = matrix_to_json(d.matrix());
  j["kind"] = "distribution";
  return j;
}

FunctionSpec function_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("function", "expected an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw ParseError("kind", "missing");
  const std::string kind = j.at("kind").get<std::string>();
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) throw ParseError(key, "expected a number");
    return j.at(key).get<double>();
  };
  auto coeffs = [&]() -> const json& {
    if (!j.contains("coeffs") || !j.at("coeffs").is_array() || j.at("coeffs").empty())
      throw ParseError("coeffs", "expected a nonempty array");
    return j.at("coeffs");
  };
  FunctionSpec f = FunctionSpec::exponential();
  try {
    if (kind == "exp") {
      f = FunctionSpec::exponential();
    } else if (kind == "power") {
      f = FunctionSpec::power(number("alpha"));
    } else if (kind == "poly") {
      std::vector<Rational> c;
      const json& cs = coeffs();
      for (std::size_t t = 0; t < cs.size(); ++t)
        c.push_back(rational_from_json(cs[t], "coeffs[" + std::to_string(t) + "]"));
      f = FunctionSpec::polynomial(std::move(c));
    } else if (kind == "series") {
      std::vector<double> c;
      const json& cs = coeffs();
      for (std::size_t t = 0; t < cs.size(); ++t) {
        if (!cs[t].is_number())
          throw ParseError("coeffs[" + std::to_string(t) + "]", "expected a number");
        c.push_back(cs[t].get<double>());
      }
      f = FunctionSpec::series(std::move(c), number("radius"));
    } else {
      throw ParseError("kind", "unknown function kind '" + kind + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("function", e.what());
  }
  if (j.contains("differentiability")) {
    if (!j.at("differentiability").is_number_integer())
      throw ParseError("differentiability", "expected an integer");
    f = f.with_differentiability(j.at("differentiability").get<int>());
  }
  return f;
}

json function_to_json(const FunctionSpec& f) {
  json j;
  switch (f.kind()) {
    case FunctionSpec::Kind::exp: j = {{"kind", "exp"}}; break;
    case FunctionSpec::Kind::power: j = {{"kind", "power"}, {"alpha", f.alpha()}}; break;
    case FunctionSpec::Kind::polynomial: {
      json c = json::array();
      for (const auto& x : f.poly_coeffs()) c.push_back(x.str());
      j = {{"kind", "poly"}, {"coeffs", c}};
      break;
    }
    case FunctionSpec::Kind::series:
      j = {{"kind", "series"}, {"coeffs", f.series_coeffs()}, {"radius", f.radius()}};
      break;
  }
  if (f.differentiability()) j["differentiability"] = *f.differentiability();
  return j;
}

FunctionSpec parse_function_spec(std::string_view text) {
  const std::string s(text);
  if (!s.empty() && s.front() == '{') {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::exception& e) {
      throw ParseError("function", e.what());
    }
    return function_from_json(j);
  }
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  auto split = [](const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
  };
  auto to_double = [](const std::string& tok) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos == tok.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("function", "bad number '" + tok + "'");
  };
  if (kind == "exp") return FunctionSpec::exponential();
  if (kind == "power") return FunctionSpec::power(to_double(rest));
  if (kind == "poly") {
    std::vector<Rational> c;
    for (const auto& tok : split(rest)) c.push_back(Rational::parse(tok));
    return FunctionSpec::polynomial(std::move(c));
  }
  if (kind == "series") {
    const auto at = rest.find('@');
    if (at == std::string::npos) throw ParseError("function", "series needs '@radius'");
    std::vector<double> c;
    for (const auto& tok : split(rest.substr(0, at))) c.push_back(to_double(tok));
    return FunctionSpec::series(std::move(c), to_double(rest.substr(at + 1)));
  }
  throw ParseError("function", "unknown function '" + s + "'");
}

std::string matrix_to_csv(const AnyMatrix& m) {
  std::ostringstream os;
  os << std::setprecision(17);
  std::visit(
      [&](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        for (std::size_t i = 0; i < x.rows(); ++i) {
          for (std::size_t j = 0; j < x.cols(); ++j) {
            if (j) os << ',';
            if constexpr (std::is_same_v<T, Complex>) {
              if (x(i, j).imag() != 0.0)
                throw Error("CSV export supports real matrices only");
              os << x(i, j).real();
            } else {
              os << x(i, j).str();
            }
          }
          os << '\n';
        }
      },
      m);
  return os.str();
}

AnyMatrix matrix_from_csv(std::string_view text, Backend b) {
  std::vector<std::vector<std::string>> cells;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const auto first = tok.find_first_not_of(" \t");
      const auto last = tok.find_last_not_of(" \t");
      row.push_back(first == std::string::npos ? "" : tok.substr(first, last - first + 1));
    }
    cells.push_back(std::move(row));
  }
  if (cells.empty()) throw ParseError("csv", "no rows");
  const std::size_t cols = cells.front().size();
  std::vector<Rational> values;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].size() != cols)
      throw ParseError("csv row " + std::to_string(i + 1), "expected " + std::to_string(cols) + " cells");
    for (std::size_t j = 0; j < cols; ++j) {
      try {
        values.push_back(Rational::parse(cells[i][j]));
      } catch (const Error& e) {
        throw ParseError("csv cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                         e.what());
      }
    }
  }
  ConvMatrix<Rational> m(cells.size(), cols, std::move(values));
  return to_backend(m, b);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string(), e.what());
  }
}

AnyMatrix read_matrix_file(const std::filesystem::path& path, Backend csv_backend) {
  if (path.extension() == ".csv") {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return matrix_from_csv(ss.str(), csv_backend);
  }
  return matrix_from_json(read_json_file(path));
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

json to_json(const PsdVerdict& v) {
  return {{"is_psd", v.is_psd},
          {"min_eig", v.min_eigenvalue},
          {"tolerance", v.tolerance},
          {"scale", v.scale}};
}

json to_json(const Violation& v) {
  json j{{"trial", v.trial}, {"matrix", matrix_to_json(v.matrix)}, {"min_eig", v.min_eigenvalue}};
  j["h"] = v.h ? json(*v.h) : json(nullptr);
  return j;
}

namespace {

json violations_json(const std::vector<Violation>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

}  // namespace

json to_json(const ClosureReport& r) {
  return {{"theorem", "psd_closure_under_convolution"},
          {"n", r.n},
          {"trials", r.trials},
          {"seed", r.seed},
          {"tolerance", r.tolerance},
          {"hermitian", r.hermitian},
          {"worst_normalized_min_eig", r.worst_min_eigenvalue},
          {"violations", violations_json(r.violations)}};
}

json to_json(const PreserverReport& r) {
  const bool stepped = r.mode.kind == PreserverMode::Kind::stepped;
  json j{{"theorem", stepped ? "stepped_transform_preserver" : "smooth_transform_preserver"},
         {"function", r.function},
         {"n", r.n},
         {"interval_upper", r.interval.bounded() ? json(r.interval.upper) : json("inf")},
         {"mode", stepped ? "stepped" : "smooth"},
         {"trials", r.trials},
         {"seed", r.seed},
         {"tolerance", r.tolerance},
         {"evaluations", r.evaluations},
         {"skipped", r.skipped},
         {"violations", violations_json(r.violations)}};
  if (stepped) {
    j["h_grid"] = r.mode.h_grid;
    json smallest = json::array();
    for (std::size_t t = 0; t < r.smallest_h.size(); ++t)
      smallest.push_back({{"trial", t},
                          {"h", r.smallest_h[t] ? json(*r.smallest_h[t]) : json(nullptr)},
                          {"passed", static_cast<bool>(r.smallest_h_passed[t])}});
    j["smallest_h"] = smallest;
  }
  return j;
}

json to_json(const FractionalPowerReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json x{{"alpha", e.alpha},
           {"trials", e.trials},
           {"random_violations", e.random_violations},
           {"worst_normalized_min_eig", e.worst_random_min_eig},
           {"violation_found", e.violation_found()}};
    x["horn_witness"] = e.horn ? to_json(*e.horn) : json(nullptr);
    x["first_violation"] = e.first_violation ? to_json(*e.first_violation) : json(nullptr);
    if (r.include_b)
      x["b_matrix"] = {{"tested", e.b_tested},
                       {"non_psd", e.b_non_psd},
                       {"worst_normalized_min_eig", e.worst_b_min_eig}};
    entries.push_back(std::move(x));
  }
  return {{"theorem", "fractional_power_preservers"},
          {"n", r.n},
          {"interval_upper", r.interval.bounded() ? json(r.interval.upper) : json("inf")},
          {"trials", r.trials},
          {"seed", r.seed},
          {"tolerance", r.tolerance},
          {"include_b", r.include_b},
          {"entries", entries}};
}

json to_json(const HornWitness& w) {
  return {{"matrix", matrix_to_json(w.matrix)},
          {"transform", matrix_to_json(w.transform)},
          {"diagonal", w.diagonal},
          {"leading_terms", w.leading_terms},
          {"verdict", to_json(w.verdict)}};
}

json to_json(const HCounterexample& c) {
  return {{"matrix", matrix_to_json(c.matrix)},
          {"h", c.h.str()},
          {"transform", matrix_to_json(c.transform)},
          {"determinant", c.determinant.str()},
          {"verdict", to_json(c.verdict)}};
}

json to_json(const EquivalenceReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"relation", row.relation},
                    {"permutation_side", row.permutation_side},
                    {"matrix_side", row.matrix_side}});
  return {{"rows", rows},
          {"complement_rows_identity", r.rows_identity},
          {"complement_cols_identity", r.cols_identity},
          {"complement_rows_unshifted", r.rows_identity_unshifted},
          {"complement_cols_unshifted", r.cols_identity_unshifted},
          {"all_agree", r.all_agree()}};
}

json to_json(const ChainReport& r) {
  json v = json::array();
  for (const auto& x : r.verdicts) v.push_back(to_json(x));
  return {{"verdicts", v},
          {"first_failure", r.first_failure ? json(*r.first_failure) : json(nullptr)},
          {"all_psd", r.all_psd()}};
}

json to_json(const SemiInfiniteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"cap", r.cap}, {"checks", checks}, {"all_passed", r.all_passed()}};
}

json to_json(const MultisetPartition& p) {
  json parts = json::array();
  for (const auto& part : p.parts())
    parts.push_back({{"index", {part.index.row, part.index.col}}, {"multiplicity", part.multiplicity}});
  return {{"parts", parts}, {"weight", p.weight().str()}, {"str", p.str()}};
}

std::string fractional_csv(const FractionalPowerReport& r) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "alpha,trials,random_violations,worst_normalized_min_eig,horn_is_psd,horn_min_eig,"
        "b_tested,b_non_psd\n";
  for (const auto& e : r.entries) {
    os << e.alpha << ',' << e.trials << ',' << e.random_violations << ','
       << e.worst_random_min_eig << ',';
    if (e.horn) os << (e.horn->is_psd ? "true" : "false") << ',' << e.horn->min_eigenvalue;
    else os << ',';
    os << ',' << e.b_tested << ',' << e.b_non_psd << '\n';
  }
  return os.str();
}

}  // namespace juryconv
