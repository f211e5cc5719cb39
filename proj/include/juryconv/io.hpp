#pragma once

// JSON/CSV encodings and report serialization.
//
//   matrix:       {"rows":M,"cols":N,"scalar":"rational"|"complex","data":[[...],...]}
//   distribution: the same plus "kind":"distribution"
//   function:     {"kind":"power","alpha":a} | {"kind":"exp"} |
//                 {"kind":"poly","coeffs":[...]} | {"kind":"series","coeffs":[...],"radius":r}
//
// Rational scalars are strings "p/q"; complex scalars are [re, im].

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "juryconv/bruhat.hpp"
#include "juryconv/cayley_hamilton.hpp"
#include "juryconv/probgrid.hpp"

namespace juryconv {

using json = nlohmann::ordered_json;

enum class Backend { rational, complex };
Backend parse_backend(std::string_view name);
std::string_view backend_name(Backend b);

using AnyMatrix = std::variant<ConvMatrix<Rational>, ConvMatrix<Complex>>;

Backend backend_of(const AnyMatrix& m);
// Rational converts to complex; complex never converts to rational.
AnyMatrix to_backend(const AnyMatrix& m, Backend b);
// Both operands on one backend, or BackendMismatch.
void require_same_backend(const AnyMatrix& a, const AnyMatrix& b);

json scalar_to_json(const Rational& x);
json scalar_to_json(const Complex& x);
json scalar_to_json(std::int64_t x);
Rational rational_from_json(const json& j, const std::string& field);
Complex complex_from_json(const json& j, const std::string& field);

template <Scalar T>
json matrix_to_json(const ConvMatrix<T>& m) {
  json data = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    data.push_back(std::move(row));
  }
  return json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"scalar", std::string(ScalarTraits<T>::name)},
              {"data", std::move(data)}};
}
json matrix_to_json(const AnyMatrix& m);

// Throws ParseError naming the offending field.
AnyMatrix matrix_from_json(const json& j);
GridDistribution<Rational> distribution_from_json(const json& j);
json distribution_to_json(const GridDistribution<Rational>& d);

FunctionSpec function_from_json(const json& j);
json function_to_json(const FunctionSpec& f);
// Inline JSON ("{...}") or shorthand: "exp", "power:0.5", "poly:0,0,1",
// "series:1,1,1@1" (coefficients @ radius).
FunctionSpec parse_function_spec(std::string_view text);

// Real matrices only; rows are lines, entries comma-separated.
std::string matrix_to_csv(const AnyMatrix& m);
AnyMatrix matrix_from_csv(std::string_view text, Backend b);

json read_json_file(const std::filesystem::path& path);
// .csv files are read as CSV on the requested backend, anything else as JSON.
AnyMatrix read_matrix_file(const std::filesystem::path& path, Backend csv_backend);
void write_text_file(const std::filesystem::path& path, const std::string& text);

json to_json(const PsdVerdict& v);
json to_json(const Violation& v);
json to_json(const ClosureReport& r);
json to_json(const PreserverReport& r);
json to_json(const FractionalPowerReport& r);
json to_json(const HornWitness& w);
json to_json(const HCounterexample& c);
json to_json(const EquivalenceReport& r);
json to_json(const ChainReport& r);
json to_json(const SemiInfiniteReport& r);
json to_json(const MultisetPartition& p);

template <FieldScalar T>
json to_json(const AnnihilatorReport<T>& r) {
  json j{{"polynomial", r.polynomial_str()},
         {"root", scalar_to_json(r.root)},
         {"degree", r.minimal_degree},
         {"cayley_hamilton_degree", r.ch_degree},
         {"nilpotency_index", r.nilpotency_index}};
  if (r.witness) j["witness"] = {r.witness->row, r.witness->col};
  else j["witness"] = nullptr;
  return j;
}

// CSV summary: one line per (alpha) grid point.
std::string fractional_csv(const FractionalPowerReport& r);

}  // namespace juryconv
