// SPDX-License-Identifier: Apache-2.0

#include "meanking/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace meanking {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw std::invalid_argument("field '" + field + "' " + what);
}

json cx_to_json(const cx& z) { return json::array({z.real(), z.imag()}); }

cx cx_from(const json& j, const std::string& field) {
  if (j.is_number()) return cx{j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(field, "must be a number or a two-element [re, im] array");
  return cx{j[0].get<double>(), j[1].get<double>()};
}

double real_from(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "must be a number");
  return j.get<double>();
}

int int_from(const json& j, const std::string& field) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    fail(field, "must be an integer");
  return j.get<int>();
}

int int_key(const std::string& key, const std::string& field) {
  size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size()) fail(field, "has non-integer key '" + key + "'");
  return value;
}

JI ji_key(const std::string& key, const std::string& field) {
  const size_t comma = key.find(',');
  if (comma == std::string::npos)
    fail(field, "has key '" + key + "', expected the form 'J,i'");
  return {int_key(key.substr(0, comma), field),
          int_key(key.substr(comma + 1), field)};
}

std::string ji_str(const JI& ji) {
  return std::to_string(ji.first) + "," + std::to_string(ji.second);
}

json family_to_json(const IndexFamily& family) {
  json out = json::object();
  for (const auto& [ji, set] : family.sets) out[ji_str(ji)] = set;
  return out;
}

IndexFamily family_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "must be an object keyed 'J,i'");
  IndexFamily family;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const JI ji = ji_key(it.key(), field);
    if (!it.value().is_array())
      fail(field + "." + it.key(), "must be an array of indices");
    std::vector<int> set;
    for (const auto& e : it.value())
      set.push_back(int_from(e, field + "." + it.key()));
    family.sets[ji] = std::move(set);
  }
  return family;
}

json coeffs_to_json(const CoefficientTable& coeffs) {
  json out = json::object();
  for (const auto& [key, f] : coeffs.values) {
    const auto [j, i, a] = key;
    out[std::to_string(j) + "," + std::to_string(i) + "," + std::to_string(a)] =
        cx_to_json(f);
  }
  return out;
}

void dump_value(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_value(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        dump_value(e, out);
      }
      out += ']';
      break;
    }
    case json::value_t::string:
      out += j.dump();
      break;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      break;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      break;
    case json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
      out += (buf == std::string("-0")) ? "0" : buf;
      break;
    }
    default:
      out += "null";
      break;
  }
}

}  // namespace

json to_json(const StateVector& v) {
  json out = json::array();
  for (int k = 0; k < v.dim(); ++k) out.push_back(cx_to_json(v[k]));
  return out;
}

json to_json(const Operator& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(cx_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const SchmidtState& s) {
  json basis_a = json::array(), basis_k = json::array();
  for (const auto& v : s.basis_a) basis_a.push_back(to_json(v));
  for (const auto& v : s.basis_k) basis_k.push_back(to_json(v));
  return json{{"eta", s.eta}, {"basisA", basis_a}, {"basisK", basis_k}};
}

json to_json(const Setup& setup) {
  json code_basis = json::array(), error_ops = json::array();
  for (const auto& v : setup.code.basis) code_basis.push_back(to_json(v));
  for (const auto& l : setup.ls) error_ops.push_back(to_json(l));
  json measurements = json::object();
  for (const auto& [j, ops] : setup.model.measurements) {
    json list = json::array();
    for (const auto& m : ops) list.push_back(to_json(m));
    measurements[std::to_string(j)] = std::move(list);
  }
  return json{{"schmidt", to_json(setup.schmidt)},
              {"code_basis", code_basis},
              {"measurements", measurements},
              {"error_ops", error_ops},
              {"index_family", family_to_json(setup.family)}};
}

json to_json(const KLReport& report) {
  return json{{"lambda", to_json(report.lambda)},
              {"max_residual", report.max_residual},
              {"psd", report.psd},
              {"passed", report.passed}};
}

json to_json(const C3Report& report) {
  return json{{"lambda", report.lambda},
              {"max_residual", report.max_residual},
              {"passed", report.passed}};
}

json to_json(const SyndromePVM& pvm) {
  json projectors = json::array();
  for (const auto& p : pvm.projectors) projectors.push_back(to_json(p));
  std::vector<int> unreachable;
  for (bool u : pvm.unreachable) unreachable.push_back(u ? 1 : 0);
  return json{{"projectors", projectors},
              {"subspace_dims", pvm.subspace_dims},
              {"label_map", pvm.label_map},
              {"unreachable", unreachable}};
}

json to_json(const SolutionCertificate& cert) {
  json res_code = json::object(), res_global = json::object();
  for (const auto& [ji, r] : cert.c1.residual_on_code) res_code[ji_str(ji)] = r;
  for (const auto& [ji, r] : cert.c1.residual_global) res_global[ji_str(ji)] = r;
  json model_res = json::object();
  for (const auto& [j, r] : cert.model.residuals)
    model_res[std::to_string(j)] = r;
  return json{
      {"passed", cert.passed},
      {"c1",
       {{"ok", cert.c1.ok},
        {"max_residual", cert.c1.max_residual},
        {"residual_on_code", res_code},
        {"residual_global", res_global},
        {"coefficients", coeffs_to_json(cert.c1.coeffs)},
        {"diagnostics", cert.c1.diagnostics}}},
      {"c2", {{"ok", cert.c2_ok}, {"violations", cert.c2_violations}}},
      {"c3",
       {{"passed", cert.c3.passed},
        {"max_residual", cert.c3.max_residual},
        {"lambda", cert.c3.lambda}}},
      {"model", {{"ok", cert.model.ok}, {"residuals", model_res}}},
      {"sc_norms", cert.sc_norms},
      {"alpha", cert.alpha.has_value() ? json(*cert.alpha) : json(nullptr)}};
}

json to_json(const DerivedSolution& derived) {
  json error_ops = json::array();
  for (const auto& l : derived.ls) error_ops.push_back(to_json(l));
  return json{{"alpha", derived.alpha},
              {"error_ops", error_ops},
              {"index_family", family_to_json(derived.family)},
              {"coefficients", coeffs_to_json(derived.coeffs)},
              {"c2", {{"ok", derived.c2_ok}, {"violations", derived.c2_violations}}}};
}

json to_json(const ExperimentStats& stats) {
  json joint = json::object();
  for (const auto& [key, n] : stats.joint_counts) {
    const auto [j, i, a] = key;
    joint[std::to_string(j) + "/" + std::to_string(i) + "/" + std::to_string(a)] = n;
  }
  return json{{"joint", joint},
              {"success_rate", stats.success_rate},
              {"entropy_bits", stats.conditional_entropy},
              {"seed", stats.seed},
              {"rounds", stats.rounds}};
}

StateVector state_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "must be a non-empty array");
  std::vector<cx> amps;
  amps.reserve(j.size());
  for (size_t k = 0; k < j.size(); ++k)
    amps.push_back(cx_from(j[k], field + "[" + std::to_string(k) + "]"));
  return StateVector(std::move(amps));
}

Operator operator_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "must be a non-empty array of rows");
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail(field, "must contain non-empty rows");
  Operator m(static_cast<int>(j.size()), static_cast<int>(cols));
  for (size_t r = 0; r < j.size(); ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols)
      fail(row_field, "must be a row of " + std::to_string(cols) + " entries");
    for (size_t c = 0; c < cols; ++c)
      m(static_cast<int>(r), static_cast<int>(c)) =
          cx_from(j[r][c], row_field + "[" + std::to_string(c) + "]");
  }
  return m;
}

SchmidtState schmidt_from_json(const json& j) {
  if (!j.is_object()) fail("schmidt", "must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "eta" && it.key() != "basisA" && it.key() != "basisK")
      fail("schmidt." + it.key(), "is not a recognized key");

  auto basis_from = [&](const char* key) {
    std::vector<StateVector> basis;
    for (size_t k = 0; k < j.at(key).size(); ++k)
      basis.push_back(state_from_json(
          j.at(key)[k], std::string("schmidt.") + key + "[" + std::to_string(k) + "]"));
    return basis;
  };

  int d = 0;
  if (j.contains("eta")) d = static_cast<int>(j.at("eta").size());
  else if (j.contains("basisA")) d = static_cast<int>(j.at("basisA").size());
  else if (j.contains("basisK")) d = static_cast<int>(j.at("basisK").size());
  if (d == 0)
    fail("schmidt", "needs at least one of 'eta', 'basisA', 'basisK'");

  std::vector<double> eta;
  if (j.contains("eta")) {
    if (!j.at("eta").is_array()) fail("schmidt.eta", "must be an array");
    for (size_t k = 0; k < j.at("eta").size(); ++k)
      eta.push_back(real_from(j.at("eta")[k],
                              "schmidt.eta[" + std::to_string(k) + "]"));
  } else {
    eta.assign(static_cast<size_t>(d), 1.0 / std::sqrt(static_cast<double>(d)));
  }

  std::vector<StateVector> basis_a, basis_k;
  if (j.contains("basisA")) {
    if (!j.at("basisA").is_array()) fail("schmidt.basisA", "must be an array");
    basis_a = basis_from("basisA");
  } else {
    for (int k = 0; k < d; ++k) basis_a.push_back(basis_ket(d, k));
  }
  if (j.contains("basisK")) {
    if (!j.at("basisK").is_array()) fail("schmidt.basisK", "must be an array");
    basis_k = basis_from("basisK");
  } else {
    for (int k = 0; k < d; ++k) basis_k.push_back(basis_ket(d, k));
  }
  return schmidt_state(eta, basis_a, basis_k);
}

Setup setup_from_json(const json& j) {
  if (!j.is_object()) fail("setup", "must be an object");
  for (const char* key : {"schmidt", "measurements", "error_ops", "index_family"})
    if (!j.contains(key)) fail(key, "is required");

  Setup setup;
  setup.schmidt = schmidt_from_json(j.at("schmidt"));
  const int d = setup.schmidt.d;

  if (!j.at("measurements").is_object())
    fail("measurements", "must be an object keyed by J");
  for (auto it = j.at("measurements").begin(); it != j.at("measurements").end(); ++it) {
    const int label = int_key(it.key(), "measurements");
    const std::string field = "measurements." + it.key();
    if (!it.value().is_array() || it.value().empty())
      fail(field, "must be a non-empty array of matrices");
    std::vector<Operator> ops;
    for (size_t k = 0; k < it.value().size(); ++k)
      ops.push_back(operator_from_json(it.value()[k],
                                       field + "[" + std::to_string(k) + "]"));
    setup.model.measurements[label] = std::move(ops);
  }

  if (!j.at("error_ops").is_array() || j.at("error_ops").empty())
    fail("error_ops", "must be a non-empty array of matrices");
  for (size_t k = 0; k < j.at("error_ops").size(); ++k)
    setup.ls.push_back(operator_from_json(j.at("error_ops")[k],
                                          "error_ops[" + std::to_string(k) + "]"));

  setup.family = family_from_json(j.at("index_family"), "index_family");

  std::vector<StateVector> span;
  if (j.contains("code_basis")) {
    if (!j.at("code_basis").is_array() || j.at("code_basis").empty())
      fail("code_basis", "must be a non-empty array of vectors");
    for (size_t k = 0; k < j.at("code_basis").size(); ++k)
      span.push_back(state_from_json(j.at("code_basis")[k],
                                     "code_basis[" + std::to_string(k) + "]"));
  } else {
    span.push_back(setup.schmidt.vector);
  }
  for (const auto& v : span)
    if (v.dim() != d * d)
      fail("code_basis", "vectors must have dimension " + std::to_string(d * d));
  setup.code = code_subspace(d, d, span);
  return setup;
}

std::string canonical_dump(const json& j) {
  std::string out;
  dump_value(j, out);
  return out;
}

}  // namespace meanking
