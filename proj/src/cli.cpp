// SPDX-License-Identifier: Apache-2.0

#include "meanking/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "meanking/isomap.hpp"
#include "meanking/serialize.hpp"

namespace meanking {

namespace {

std::string fmt_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return (buf == std::string("-0")) ? "0" : buf;
}

std::string fmt_cx(const cx& z) {
  if (z.imag() == 0.0) return fmt_real(z.real());
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

std::string fmt_matrix(const Operator& m, const std::string& indent) {
  std::ostringstream out;
  for (int r = 0; r < m.rows(); ++r) {
    out << indent << "[";
    for (int c = 0; c < m.cols(); ++c) out << "  " << fmt_cx(m(r, c));
    out << "  ]\n";
  }
  return out.str();
}

std::string family_table(const IndexFamily& family) {
  std::ostringstream out;
  out << "  J  i  X^(J,i)\n";
  for (const auto& [ji, set] : family.sets) {
    out << "  " << ji.first << "  " << ji.second << "  {";
    for (size_t k = 0; k < set.size(); ++k)
      out << (k ? ", " : "") << set[k];
    out << "}\n";
  }
  return out.str();
}

std::string verdict(bool ok) { return ok ? "ok" : "FAILED"; }

std::vector<StateVector> cli_basis(const std::string& kind, int d,
                                   std::uint64_t seed) {
  std::vector<StateVector> basis;
  if (kind == "computational") {
    for (int k = 0; k < d; ++k) basis.push_back(basis_ket(d, k));
    return basis;
  }
  if (kind == "fourier") {
    const double r = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k) {
      StateVector v(d);
      for (int x = 0; x < d; ++x) {
        const double phase = 2.0 * M_PI * k * x / d;
        v[x] = cx{r * std::cos(phase), r * std::sin(phase)};
      }
      basis.push_back(v);
    }
    return basis;
  }
  if (kind == "random") {
    SplitMix64 rng(seed);
    std::vector<StateVector> raw;
    for (int k = 0; k < d; ++k) {
      StateVector v(d);
      for (int x = 0; x < d; ++x)
        v[x] = cx{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
      raw.push_back(v);
    }
    basis = orthonormalize(raw);
    if (basis.size() != static_cast<size_t>(d))
      throw std::invalid_argument("random basis draw was degenerate; try another --seed");
    return basis;
  }
  throw std::invalid_argument("unknown --basis '" + kind +
                              "' (expected computational, fourier, or random)");
}

std::vector<LatinSquare> cli_squares(const std::string& list, int d) {
  std::vector<LatinSquare> squares;
  if (list.empty()) return squares;
  std::stringstream in(list);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token == "anticyclic") {
      squares.push_back(anticyclic_square(d));
    } else if (token.rfind("cyclic", 0) == 0) {
      int shift = 0;
      if (token.size() > 6) {
        if (token[6] != ':')
          throw std::invalid_argument("unknown square '" + token + "'");
        shift = std::stoi(token.substr(7));
      }
      squares.push_back(cyclic_square(d, shift));
    } else {
      throw std::invalid_argument("unknown square '" + token +
                                  "' (expected cyclic, cyclic:SHIFT, or anticyclic)");
    }
  }
  return squares;
}

std::vector<double> cli_prior(const std::string& text) {
  if (text == "uniform") return {};
  std::vector<double> prior;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      size_t used = 0;
      prior.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw std::invalid_argument("--prior entry '" + token + "' is not a number");
    }
  }
  if (prior.empty())
    throw std::invalid_argument("--prior must be 'uniform' or a comma-separated list");
  return prior;
}

Setup load_setup(const std::string& input, const std::string& example) {
  if (input.empty() == example.empty())
    throw std::invalid_argument("provide exactly one of --input FILE or --example NAME");
  if (!example.empty()) return builtin_example(example);
  std::ifstream file(input);
  if (!file) throw std::invalid_argument("cannot open input file '" + input + "'");
  json parsed;
  try {
    parsed = json::parse(file);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("input file '" + input + "' is not valid JSON: " + e.what());
  }
  return setup_from_json(parsed);
}

void check_format(const std::string& format) {
  if (format != "json" && format != "table")
    throw std::invalid_argument("unknown --format '" + format +
                                "' (expected json or table)");
}

}  // namespace

std::string render_report(const SolutionCertificate& cert,
                          const IndexFamily& family, const std::string& format) {
  check_format(format);
  if (format == "json") return canonical_dump(to_json(cert)) + "\n";
  std::ostringstream out;
  out << "certificate: " << (cert.passed ? "PASSED" : "FAILED") << "\n";
  out << "c1 (decomposition on the code): " << verdict(cert.c1.ok)
      << ", max residual " << fmt_real(cert.c1.max_residual) << "\n";
  out << "c2 (disjoint index sets): " << verdict(cert.c2_ok) << "\n";
  out << "c3 (orthogonal images): " << verdict(cert.c3.passed)
      << ", max residual " << fmt_real(cert.c3.max_residual) << "\n";
  out << "model completeness: " << verdict(cert.model.ok) << "\n";
  out << "lambda:";
  for (double l : cert.c3.lambda) out << " " << fmt_real(l);
  out << "\n";
  if (cert.alpha.has_value())
    out << "alpha: " << fmt_real(*cert.alpha) << "\n";
  for (const auto& v : cert.c2_violations) out << "violation: " << v << "\n";
  for (const auto& d : cert.c1.diagnostics) out << "diagnostic: " << d << "\n";
  out << "index sets:\n" << family_table(family);
  return out.str();
}

std::string render_report(const DerivedSolution& derived, const std::string& format) {
  check_format(format);
  if (format == "json") return canonical_dump(to_json(derived)) + "\n";
  std::ostringstream out;
  out << "derived " << derived.ls.size() << " error operators, alpha "
      << fmt_real(derived.alpha) << "\n";
  out << "index sets " << (derived.c2_ok ? "are disjoint" : "OVERLAP") << "\n";
  for (const auto& v : derived.c2_violations) out << "violation: " << v << "\n";
  for (size_t a = 0; a < derived.ls.size(); ++a) {
    out << "L_" << (a + 1) << ":\n" << fmt_matrix(derived.ls[a], "  ");
  }
  out << "index sets:\n" << family_table(derived.family);
  return out.str();
}

std::string render_report(const ExperimentStats& stats, const std::string& format) {
  check_format(format);
  if (format == "json") return canonical_dump(to_json(stats)) + "\n";
  std::ostringstream out;
  out << "rounds: " << stats.rounds << "\n";
  out << "seed: " << stats.seed << "\n";
  out << "success_rate: " << fmt_real(stats.success_rate) << "\n";
  out << "entropy_bits: " << fmt_real(stats.conditional_entropy) << "\n";
  out << "joint counts:\n  J  i  a  count\n";
  for (const auto& [key, n] : stats.joint_counts) {
    const auto [j, i, a] = key;
    out << "  " << j << "  " << i << "  " << a << "  " << n << "\n";
  }
  return out.str();
}

std::string render_report(const Setup& setup, const std::string& format) {
  check_format(format);
  if (format == "json") return canonical_dump(to_json(setup)) + "\n";
  std::ostringstream out;
  if (!setup.name.empty()) out << "name: " << setup.name << "\n";
  out << "dimension: " << setup.schmidt.d << "\n";
  out << "code dimension: " << setup.code.dim() << "\n";
  out << "schmidt weights:";
  for (double e : setup.schmidt.eta) out << " " << fmt_real(e);
  out << "\n";
  for (const auto& [j, ops] : setup.model.measurements) {
    for (size_t i = 0; i < ops.size(); ++i) {
      out << "M_" << (i + 1) << "^(" << j << "):\n" << fmt_matrix(ops[i], "  ");
    }
  }
  for (size_t a = 0; a < setup.ls.size(); ++a)
    out << "L_" << (a + 1) << ":\n" << fmt_matrix(setup.ls[a], "  ");
  out << "index sets:\n" << family_table(setup.family);
  return out.str();
}

CliResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"mean king retrodiction toolkit"};
  app.name("meanking");
  app.require_subcommand(1);

  std::string input, example_name, format = "table", prior_text = "uniform";
  std::string basis_kind = "computational", squares_text;
  double tol_abs = 1e-9, tol_zero = 1e-9;
  std::uint64_t seed = 0;
  long long rounds = 1000;
  int threads = 1, build_d = 0;
  bool with_j0 = false;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--input", input, "setup JSON file");
    sub->add_option("--example", example_name,
                    "builtin fixture: vaa87, comp3, code3d, or qubit2");
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", tol_abs, "absolute residual tolerance");
    sub->add_option("--zero-eps", tol_zero, "threshold below which values count as zero");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format: json or table");
  };

  CLI::App* verify = app.add_subcommand(
      "verify", "certify a solution against conditions c1, c2, c3");
  add_source(verify);
  add_tol(verify);
  add_format(verify);

  CLI::App* derive = app.add_subcommand(
      "derive", "reconstruct error operators and index sets from the "
                "syndrome basis induced by a setup's error operators");
  add_source(derive);
  add_tol(derive);
  add_format(derive);

  CLI::App* build = app.add_subcommand(
      "build", "construct a solution from an orthonormal basis and Latin squares");
  build->add_option("--d", build_d, "Hilbert space dimension")
      ->required()
      ->check(CLI::PositiveNumber);
  build->add_option("--basis", basis_kind,
                    "basis family: computational, fourier, or random");
  build->add_option("--squares", squares_text,
                    "comma list of cyclic, cyclic:SHIFT, anticyclic");
  build->add_flag("--with-j0", with_j0, "include the row measurement J=0");
  build->add_option("--seed", seed, "seed for --basis random");
  add_format(build);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "play seeded rounds of the retrodiction game");
  add_source(simulate);
  add_tol(simulate);
  add_format(simulate);
  simulate->add_option("--seed", seed, "experiment seed");
  simulate->add_option("--rounds", rounds, "number of rounds")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--prior", prior_text,
                       "'uniform' or a comma list of measurement weights");
  simulate->add_option("--threads", threads, "worker threads")
      ->check(CLI::PositiveNumber);

  CLI::App* example = app.add_subcommand("example", "dump a builtin fixture");
  std::string dump_name;
  example->add_option("name", dump_name, "vaa87, comp3, code3d, or qubit2")
      ->required();
  add_format(example);

  std::vector<const char*> argv = {"meanking"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    return {code == 0 ? 0 : 2, out.str() + err.str()};
  }

  const Tolerance tol{tol_abs, tol_zero};
  try {
    if (verify->parsed()) {
      Setup setup = load_setup(input, example_name);
      auto cert =
          certify(setup.code, setup.model, setup.ls, setup.family, setup.schmidt, tol);
      return {cert.passed ? 0 : 1, render_report(cert, setup.family, format)};
    }
    if (derive->parsed()) {
      Setup setup = load_setup(input, example_name);
      std::vector<StateVector> pvm;
      for (const auto& l : setup.ls)
        pvm.push_back(iso_forward(l, setup.schmidt).normalized());
      auto derived = derive_from_pvm(setup.schmidt, pvm, setup.model, tol);
      return {derived.c2_ok ? 0 : 1, render_report(derived, format)};
    }
    if (build->parsed()) {
      Setup setup;
      auto basis = cli_basis(basis_kind, build_d, seed);
      setup.schmidt = maximal_entangled(build_d, basis);
      setup.code = code_subspace(build_d, build_d, {setup.schmidt.vector});
      setup.ls = error_basis_from_onb(basis);
      setup.family =
          index_family_from_squares(build_d, cli_squares(squares_text, build_d), with_j0);
      if (setup.family.sets.empty())
        throw std::invalid_argument("build needs --squares and/or --with-j0");
      setup.model = measurements_from_family(setup.ls, setup.family);
      return {0, render_report(setup, format)};
    }
    if (simulate->parsed()) {
      GameConfig config;
      config.setup = load_setup(input, example_name);
      config.king_prior = cli_prior(prior_text);
      config.seed = seed;
      config.rounds = rounds;
      ExperimentStats stats = run_experiment(config, threads, tol);
      return {0, render_report(stats, format)};
    }
    // example
    Setup setup = builtin_example(dump_name);
    return {0, render_report(setup, format)};
  } catch (const std::invalid_argument& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace meanking
