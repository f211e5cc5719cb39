#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "juryconv/io.hpp"

namespace juryconv::cli {

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  Backend backend = Backend::rational;
  double tol = kDefaultPsdTolerance;
  std::uint64_t seed = 20240601;
  std::optional<std::size_t> trials;
  std::string h_grid_spec = "1:0.0009765625:0.5";
  std::vector<double> h_grid;
  std::vector<double> alpha_grid;
  std::optional<int> n;  // suite size parameter (N for matrices, n for S_n)
  std::string out;

  json to_json() const;
};

// "start:stop:factor" -> start, start*factor, ... while not past stop.
std::vector<double> parse_h_grid(std::string_view spec);
// Comma-separated reals.
std::vector<double> parse_alpha_grid(std::string_view spec);

// What the shipped manifest says an experiment should produce.
enum class Expect {
  holds,           // no violation may occur
  counterexample,  // a violation must be found
  data             // recorded only
};
std::string_view expect_name(Expect e);

struct ManifestEntry {
  std::string_view suite;
  std::string_view id;
  Expect expect;
  std::string_view description;
};

const std::vector<ManifestEntry>& manifest();
const ManifestEntry& manifest_entry(std::string_view id);

struct Outcome {
  std::string id;
  std::string label;  // instance, e.g. "n=3" or "alpha=0.5"
  Expect expect = Expect::holds;
  bool violation = false;  // a counterexample / failure was observed
  std::string detail;

  bool met() const;
};

struct SuiteResult {
  json report = json::object();
  std::vector<Outcome> outcomes;

  bool all_met() const;
  json to_json(const RunConfig& cfg) const;
};

const std::vector<std::string_view>& suite_names();
// Throws ParseError for unknown names.
SuiteResult run_suite(std::string_view name, const RunConfig& cfg);

}  // namespace juryconv::cli
