// juryconv: command-line front end for the convolution-ring library.
//
// Exit codes: 0 = success / all expectations met, 1 = an expectation was
// violated, 2 = usage, parse or input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "suites.hpp"

namespace {

using namespace juryconv;
using cli::RunConfig;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(cfg.out, text);
  }
}

void emit(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2)); }

AnyMatrix load(const RunConfig& cfg, const std::string& path) {
  return to_backend(read_matrix_file(path, cfg.backend), cfg.backend);
}

int cmd_conv(const RunConfig& cfg, bool padded) {
  const AnyMatrix a = load(cfg, cfg.inputs.at(0));
  const AnyMatrix b = load(cfg, cfg.inputs.at(1));
  require_same_backend(a, b);
  const AnyMatrix c = std::visit(
      [&](const auto& x) -> AnyMatrix {
        using M = std::decay_t<decltype(x)>;
        const auto& y = std::get<M>(b);
        return padded ? padded_conv(x, y) : conv(x, y);
      },
      a);
  emit(cfg, matrix_to_json(c));
  return 0;
}

int cmd_inverse(const RunConfig& cfg, const std::string& method) {
  const AnyMatrix a = load(cfg, cfg.inputs.at(0));
  const AnyMatrix inv = std::visit(
      [&](const auto& x) -> AnyMatrix {
        return method == "ch" ? conv_inverse_ch(x) : conv_inverse_recursive(x);
      },
      a);
  emit(cfg, matrix_to_json(inv));
  return 0;
}

int cmd_transform(const RunConfig& cfg, const std::string& function, const std::string& mode,
                  const std::optional<std::string>& h) {
  const FunctionSpec f = parse_function_spec(function);
  if (mode != "smooth" && mode != "stepped")
    throw ParseError("mode", "expected 'smooth' or 'stepped'");
  if (mode == "stepped" && !h) throw ParseError("h", "stepped mode needs --h");
  AnyMatrix a = load(cfg, cfg.inputs.at(0));
  // Non-polynomial functions need floating evaluation.
  if (!f.exact()) a = to_backend(a, Backend::complex);
  const AnyMatrix t = std::visit(
      [&](const auto& x) -> AnyMatrix {
        using T = typename std::decay_t<decltype(x)>::value_type;
        if (mode == "smooth") return smooth_transform(f, x);
        if constexpr (std::is_same_v<T, Rational>) return stepped_transform(f, x, Rational::parse(*h));
        else return stepped_transform(f, x, Rational::parse(*h).to_double());
      },
      a);
  json out{{"function", function_to_json(f)},
           {"mode", mode},
           {"h", h ? json(*h) : json(nullptr)},
           {"backend", std::string(backend_name(backend_of(t)))},
           {"result", matrix_to_json(t)}};
  emit(cfg, out);
  return 0;
}

int cmd_minpoly(const RunConfig& cfg) {
  const AnyMatrix a = load(cfg, cfg.inputs.at(0));
  std::visit(
      [&](const auto& x) {
        const auto rep = minimal_polynomial(x);
        std::string text = rep.polynomial_str();
        if (rep.witness)
          text += "  witness (" + std::to_string(rep.witness->row) + "," +
                  std::to_string(rep.witness->col) + ")";
        else
          text += "  witness none";
        emit(cfg, text);
      },
      a);
  return 0;
}

int cmd_partitions(const RunConfig& cfg, int rows, int cols, int count, int ti, int tj,
                   bool include_origin) {
  const auto list = enumerate_partitions(IndexGrid(rows, cols), count, {ti, tj}, !include_origin);
  std::string text;
  for (const auto& p : *list) text += p.str() + "\n";
  text += std::to_string(list->size()) + " partitions\n";
  emit(cfg, text);
  return 0;
}

int cmd_bruhat(const RunConfig& cfg, const std::vector<std::string>& perms) {
  if (perms.size() != 2) throw ParseError("perm", "expected exactly two --perm options");
  const auto s = Permutation::parse(perms[0]);
  const auto t = Permutation::parse(perms[1]);
  const bool leq = bruhat_leq_conv(s, t);
  const bool geq = bruhat_leq_conv(t, s);
  json out{{"sigma", s.str()},
           {"tau", t.str()},
           {"leq", leq},
           {"geq", geq},
           {"incomparable", !leq && !geq},
           {"rank_matrices",
            {matrix_to_json(rank_matrix(s).matrix()), matrix_to_json(rank_matrix(t).matrix())}}};
  emit(cfg, out);
  return 0;
}

int cmd_prob_sum(const RunConfig& cfg, std::size_t k_max) {
  std::vector<GridDistribution<Rational>> ds;
  for (const auto& path : cfg.inputs) ds.push_back(distribution_from_json(read_json_file(path)));
  const auto sum = sum_distribution<Rational>(ds);
  json out = distribution_to_json(sum);
  if (k_max > 0) out["psd_chain"] = to_json(psd_chain_check(sum.matrix(), k_max, cfg.tol));
  emit(cfg, out);
  return 0;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  const json j = read_json_file(path);
  if (!j.is_object()) throw ParseError("config", "expected an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "trials" && v.is_number_unsigned()) cfg.trials = v.get<std::size_t>();
    else if (key == "seed" && v.is_number_unsigned()) cfg.seed = v.get<std::uint64_t>();
    else if (key == "tol" && v.is_number()) cfg.tol = v.get<double>();
    else if ((key == "n" || key == "N") && v.is_number_integer()) cfg.n = v.get<int>();
    else if (key == "h_grid" && v.is_string()) cfg.h_grid_spec = v.get<std::string>();
    else if (key == "alpha_grid" && v.is_array()) cfg.alpha_grid = v.get<std::vector<double>>();
    else throw ParseError(key, "unknown or mistyped config key");
  }
}

int cmd_suite(RunConfig& cfg, const std::string& name, const std::string& config_path) {
  if (!config_path.empty()) apply_config_file(cfg, config_path);
  cfg.h_grid = cli::parse_h_grid(cfg.h_grid_spec);
  const auto result = cli::run_suite(name, cfg);
  emit(cfg, result.to_json(cfg));
  for (const auto& o : result.outcomes)
    std::cerr << (o.met() ? "ok    " : "FAIL  ") << o.id << " [" << o.label << "] expect "
              << cli::expect_name(o.expect) << (o.detail.empty() ? "" : ": " + o.detail) << '\n';
  if (!result.all_met()) {
    std::cerr << "expectation violated; see the \"expectations\" array of the report\n";
    return kExitViolation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convolution-ring matrix toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string backend = "rational", alpha_grid;
  app.add_option("--backend", backend, "Scalar backend: rational|complex")
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "PSD tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Trial count override");
  app.add_option("--h-grid", cfg.h_grid_spec, "Step grid start:stop:factor")
      ->capture_default_str();
  app.add_option("--alpha-grid", alpha_grid, "Comma-separated exponents");
  app.add_option("--out", cfg.out, "Write output to this file instead of stdout");

  auto* conv_cmd = app.add_subcommand("conv", "Convolution product of two matrices");
  bool padded = false;
  conv_cmd->add_option("files", cfg.inputs, "Matrix files A B")->required()->expected(2);
  conv_cmd->add_flag("--padded", padded, "Full (non-truncating) convolution");

  auto* inv_cmd = app.add_subcommand("inverse", "Convolution inverse");
  std::string method = "recursive";
  inv_cmd->add_option("file", cfg.inputs, "Matrix file")->required()->expected(1);
  inv_cmd->add_option("--method", method, "recursive|ch")
      ->check(CLI::IsMember({"recursive", "ch"}));

  auto* tr_cmd = app.add_subcommand("transform", "Matrix transform f<>(A) or f<>(A)_h");
  std::string function, mode = "smooth";
  std::optional<std::string> h;
  tr_cmd->add_option("file", cfg.inputs, "Matrix file")->required()->expected(1);
  tr_cmd->add_option("--function", function, "JSON spec or exp | power:a | poly:c0,c1,.. | series:c0,..@r")
      ->required();
  tr_cmd->add_option("--mode", mode, "smooth|stepped");
  tr_cmd->set_help_flag("--help", "Print this help message and exit");
  tr_cmd->add_option("--h", h, "Step size (rational literal)");

  auto* mp_cmd = app.add_subcommand("minpoly", "Minimal annihilating polynomial");
  mp_cmd->add_option("file", cfg.inputs, "Matrix file")->required()->expected(1);

  auto* pt_cmd = app.add_subcommand("partitions", "List multiset partitions (debug)");
  int rows = 2, cols = 2, count = 1, ti = 1, tj = 1;
  bool include_origin = false;
  pt_cmd->add_option("--rows", rows)->required();
  pt_cmd->add_option("--cols", cols)->required();
  pt_cmd->add_option("--count", count)->required();
  pt_cmd->add_option("--i", ti)->required();
  pt_cmd->add_option("--j", tj)->required();
  pt_cmd->add_flag("--include-origin", include_origin);

  auto* br_cmd = app.add_subcommand("bruhat", "Compare two permutations in Bruhat order");
  std::vector<std::string> perms;
  br_cmd->add_option("--perm", perms, "One-line notation, e.g. \"3 1 2\"")->required();

  auto* ps_cmd = app.add_subcommand("prob-sum", "Distribution of a sum of independent grid variables");
  std::size_t k_max = 0;
  ps_cmd->add_option("files", cfg.inputs, "Distribution files")->required();
  ps_cmd->add_option("--psd-chain", k_max, "Also check leading k x k blocks up to this k");

  auto* su_cmd = app.add_subcommand("suite", "Run an experiment battery against the manifest");
  std::string suite_name, config_path;
  int n_opt = 0;
  std::string alpha_local;
  su_cmd->add_option("name", suite_name, "closure|schoenberg|horn|fh|bruhat|prob|ch")->required();
  su_cmd->add_option("--config", config_path, "JSON file overriding trials/seed/tol/n/h_grid/alpha_grid");
  su_cmd->add_option("--n,--N", n_opt, "Size parameter");
  su_cmd->add_option("--alpha", alpha_local, "Comma-separated exponents (same as --alpha-grid)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    cfg.backend = parse_backend(backend);
    if (!alpha_local.empty()) alpha_grid = alpha_local;
    if (!alpha_grid.empty()) cfg.alpha_grid = cli::parse_alpha_grid(alpha_grid);
    if (n_opt != 0) cfg.n = n_opt;
    auto* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (sub == conv_cmd) return cmd_conv(cfg, padded);
    if (sub == inv_cmd) return cmd_inverse(cfg, method);
    if (sub == tr_cmd) return cmd_transform(cfg, function, mode, h);
    if (sub == mp_cmd) return cmd_minpoly(cfg);
    if (sub == pt_cmd) return cmd_partitions(cfg, rows, cols, count, ti, tj, include_origin);
    if (sub == br_cmd) return cmd_bruhat(cfg, perms);
    if (sub == ps_cmd) return cmd_prob_sum(cfg, k_max);
    if (sub == su_cmd) {
      cfg.command = "suite " + suite_name;
      return cmd_suite(cfg, suite_name, config_path);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
