// SPDX-License-Identifier: Apache-2.0

#include "meanking/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace meanking {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::string ji_str(int j, int i) {
  return "(J=" + std::to_string(j) + ", i=" + std::to_string(i) + ")";
}

// Squared l2 norm accumulated over code-basis images of
// (I (x) M) - Sum f_a (I (x) L_a); equals the Frobenius norm of the
// difference right-multiplied by the code projector.
double residual_on_code(const CodeSubspace& code, const Operator& m,
                        const std::vector<Operator>& ls,
                        const std::vector<std::pair<int, cx>>& terms) {
  double sq = 0.0;
  for (const auto& c : code.basis) {
    StateVector w = lift_apply(m, c, code.dim_a);
    for (const auto& [a, f] : terms) {
      StateVector img = lift_apply(ls[static_cast<size_t>(a - 1)], c, code.dim_a);
      img *= f;
      w -= img;
    }
    sq += w.norm() * w.norm();
  }
  return std::sqrt(sq);
}

}  // namespace

int MeasurementModel::dim() const {
  for (const auto& [j, ops] : measurements)
    if (!ops.empty()) return ops.front().rows();
  return 0;
}

ModelReport model_validate(const MeasurementModel& m, Tolerance tol) {
  ModelReport rep;
  rep.ok = true;
  const int d = m.dim();
  for (const auto& [j, ops] : m.measurements) {
    require(!ops.empty(), "model_validate: measurement J=" + std::to_string(j) +
            " has no outcome operators");
    Operator sum = Operator::zero(d, d);
    for (size_t i = 0; i < ops.size(); ++i) {
      const Operator& op = ops[i];
      require(op.rows() == d && op.cols() == d,
              "model_validate: operator " + ji_str(j, static_cast<int>(i) + 1) +
              " has mismatched dimensions");
      sum += op.adjoint() * op;
    }
    const double r = (sum - Operator::identity(d)).frobenius_norm();
    rep.residuals[j] = r;
    if (r > tol.abs_eps) rep.ok = false;
  }
  return rep;
}

FamilyReport family_disjoint(const IndexFamily& family) {
  FamilyReport rep;
  std::map<int, std::vector<std::pair<int, const std::vector<int>*>>> by_j;
  for (const auto& [ji, set] : family.sets)
    by_j[ji.first].emplace_back(ji.second, &set);

  for (const auto& [j, rows] : by_j) {
    for (size_t x = 0; x < rows.size(); ++x) {
      for (size_t y = x + 1; y < rows.size(); ++y) {
        std::vector<int> common;
        std::set_intersection(rows[x].second->begin(), rows[x].second->end(),
                              rows[y].second->begin(), rows[y].second->end(),
                              std::back_inserter(common));
        for (int a : common) {
          std::ostringstream os;
          os << "J=" << j << ": outcomes i=" << rows[x].first << " and i="
             << rows[y].first << " share index " << a;
          rep.violations.push_back(os.str());
        }
      }
    }
  }
  rep.disjoint = rep.violations.empty();
  return rep;
}

C1Report c1_decompose(const CodeSubspace& code, const MeasurementModel& m,
                      const std::vector<Operator>& ls, const IndexFamily& family,
                      const SchmidtState& s, Tolerance tol) {
  const int d = code.dim_k;
  require(s.d == d, "c1_decompose: Schmidt state dimension != code factor dimension");
  require(!ls.empty(), "c1_decompose: empty error operator list");
  const int l = static_cast<int>(ls.size());
  for (const auto& op : ls)
    require(op.rows() == d && op.cols() == d,
            "c1_decompose: error operator must act on the second factor");
  require(m.dim() == d, "c1_decompose: measurement dimension != code factor dimension");

  std::vector<double> norms(static_cast<size_t>(l));
  for (int a = 0; a < l; ++a)
    norms[static_cast<size_t>(a)] =
        sc_inner(ls[static_cast<size_t>(a)], ls[static_cast<size_t>(a)], s).real();

  C1Report rep;
  rep.ok = true;
  for (const auto& [j, ops] : m.measurements) {
    for (size_t pos = 0; pos < ops.size(); ++pos) {
      const int i = static_cast<int>(pos) + 1;
      const Operator& mi = ops[pos];

      auto it = family.sets.find({j, i});
      std::vector<int> listed;
      if (it == family.sets.end()) {
        rep.diagnostics.push_back(ji_str(j, i) + ": no index set supplied");
      } else {
        listed = it->second;
      }
      std::set<int> member(listed.begin(), listed.end());

      std::vector<std::pair<int, cx>> terms;
      Operator recon = Operator::zero(d, d);
      for (int a : listed) {
        require(a >= 1 && a <= l, "c1_decompose: index " + std::to_string(a) +
                " in X" + ji_str(j, i) + " is out of range");
        const double nrm = norms[static_cast<size_t>(a - 1)];
        if (nrm <= tol.zero_eps * tol.zero_eps) {
          rep.diagnostics.push_back(ji_str(j, i) + ": operator " + std::to_string(a) +
                                    " has zero Sc-norm");
          continue;
        }
        const cx f = sc_inner(ls[static_cast<size_t>(a - 1)], mi, s) / nrm;
        if (std::abs(f) <= tol.zero_eps) {
          rep.diagnostics.push_back(ji_str(j, i) + ": listed index " + std::to_string(a) +
                                    " has zero coefficient");
          continue;
        }
        rep.coeffs.values[{j, i, a}] = f;
        terms.emplace_back(a, f);
        recon += f * ls[static_cast<size_t>(a - 1)];
      }

      // Overlaps with operators outside the listed set are legitimate only
      // if they vanish on the code; surface them for diagnosis.
      for (int a = 1; a <= l; ++a) {
        if (member.count(a)) continue;
        const double nrm = norms[static_cast<size_t>(a - 1)];
        if (nrm <= tol.zero_eps * tol.zero_eps) continue;
        const cx g = sc_inner(ls[static_cast<size_t>(a - 1)], mi, s) / nrm;
        if (std::abs(g) > tol.zero_eps) {
          std::ostringstream os;
          os << ji_str(j, i) << ": operator " << a << " overlaps with coefficient "
             << g.real() << (g.imag() < 0 ? "-" : "+") << std::abs(g.imag())
             << "i but is not in the index set";
          rep.diagnostics.push_back(os.str());
        }
      }

      const double rc = residual_on_code(code, mi, ls, terms);
      rep.residual_on_code[{j, i}] = rc;
      rep.residual_global[{j, i}] = (mi - recon).frobenius_norm();
      rep.max_residual = std::max(rep.max_residual, rc);
      if (rc > tol.abs_eps) rep.ok = false;
    }
  }
  return rep;
}

SolutionCertificate certify(const CodeSubspace& code, const MeasurementModel& m,
                            const std::vector<Operator>& ls, const IndexFamily& family,
                            const SchmidtState& s, Tolerance tol) {
  SolutionCertificate cert;
  cert.model = model_validate(m, tol);
  FamilyReport fam = family_disjoint(family);
  cert.c2_ok = fam.disjoint;
  cert.c2_violations = std::move(fam.violations);
  cert.c3 = c3_check(code, ls, tol);
  cert.lambda = cert.c3.lambda;
  cert.c1 = c1_decompose(code, m, ls, family, s, tol);

  cert.sc_norms.reserve(ls.size());
  for (const auto& op : ls)
    cert.sc_norms.push_back(sc_inner(op, op, s).real());
  double lo = cert.sc_norms.front(), hi = lo;
  for (double n : cert.sc_norms) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  if (hi - lo <= std::max(tol.abs_eps, 1e-12)) cert.alpha = cert.sc_norms.front();

  cert.passed = cert.c1.ok && cert.c2_ok && cert.c3.passed;
  return cert;
}

DerivedSolution derive_from_pvm(const SchmidtState& s,
                                const std::vector<StateVector>& pvm_vectors,
                                const MeasurementModel& m, Tolerance tol) {
  const int d = s.d;
  const int n = d * d;
  require(static_cast<int>(pvm_vectors.size()) == n,
          "derive_from_pvm: expected " + std::to_string(n) + " basis vectors, got " +
          std::to_string(pvm_vectors.size()));
  const double ortho_eps = std::max(tol.abs_eps, 1e-12) * 10.0;
  for (int x = 0; x < n; ++x) {
    require(pvm_vectors[static_cast<size_t>(x)].dim() == n,
            "derive_from_pvm: basis vector " + std::to_string(x + 1) +
            " has wrong dimension");
    for (int y = x; y < n; ++y) {
      const cx g = inner(pvm_vectors[static_cast<size_t>(x)],
                         pvm_vectors[static_cast<size_t>(y)]);
      const cx want = (x == y) ? cx{1.0} : cx{0.0};
      require(std::abs(g - want) <= ortho_eps,
              "derive_from_pvm: basis vectors " + std::to_string(x + 1) + " and " +
              std::to_string(y + 1) + " are not orthonormal");
    }
  }
  ModelReport model = model_validate(m, tol);
  require(model.ok, "derive_from_pvm: model fails measurement completeness");
  require(m.dim() == d, "derive_from_pvm: measurement dimension != d");

  DerivedSolution out;
  out.alpha = 1.0 / static_cast<double>(d);
  if (!s.maximal()) {
    out.alpha = 1.0;
    for (double e : s.eta) out.alpha = std::min(out.alpha, e * e);
  }
  const cx scale{std::sqrt(out.alpha)};
  out.ls.reserve(pvm_vectors.size());
  for (const auto& p : pvm_vectors) out.ls.push_back(iso_inverse(scale * p, s));

  for (const auto& [j, ops] : m.measurements) {
    for (size_t pos = 0; pos < ops.size(); ++pos) {
      const int i = static_cast<int>(pos) + 1;
      std::vector<int> members;
      for (int a = 1; a <= n; ++a) {
        const cx ov = sc_inner(out.ls[static_cast<size_t>(a - 1)], ops[pos], s);
        if (std::abs(ov) > tol.zero_eps) {
          members.push_back(a);
          out.coeffs.values[{j, i, a}] = ov / out.alpha;
        }
      }
      out.family.sets[{j, i}] = std::move(members);
    }
  }

  FamilyReport fam = family_disjoint(out.family);
  out.c2_ok = fam.disjoint;
  out.c2_violations = std::move(fam.violations);
  return out;
}

bool latin_validate(const LatinSquare& sq) {
  require(sq.d >= 1, "latin_validate: dimension must be positive");
  require(static_cast<int>(sq.entries.size()) == sq.d,
          "latin_validate: expected " + std::to_string(sq.d) + " rows");
  for (const auto& row : sq.entries) {
    require(static_cast<int>(row.size()) == sq.d, "latin_validate: ragged row");
    for (int v : row)
      require(v >= 1 && v <= sq.d,
              "latin_validate: entry " + std::to_string(v) + " out of range");
  }
  for (int r = 0; r < sq.d; ++r) {
    std::set<int> seen(sq.entries[static_cast<size_t>(r)].begin(),
                       sq.entries[static_cast<size_t>(r)].end());
    if (static_cast<int>(seen.size()) != sq.d) return false;
  }
  for (int c = 0; c < sq.d; ++c) {
    std::set<int> seen;
    for (int r = 0; r < sq.d; ++r)
      seen.insert(sq.entries[static_cast<size_t>(r)][static_cast<size_t>(c)]);
    if (static_cast<int>(seen.size()) != sq.d) return false;
  }
  return true;
}

LatinSquare cyclic_square(int d, int shift) {
  require(d >= 1, "cyclic_square: dimension must be positive");
  LatinSquare sq;
  sq.d = d;
  sq.entries.assign(static_cast<size_t>(d), std::vector<int>(static_cast<size_t>(d)));
  for (int i = 1; i <= d; ++i)
    for (int l = 1; l <= d; ++l)
      sq.entries[static_cast<size_t>(i - 1)][static_cast<size_t>(l - 1)] =
          ((i + l - 2 + shift) % d + d) % d + 1;
  return sq;
}

LatinSquare anticyclic_square(int d) {
  require(d >= 1, "anticyclic_square: dimension must be positive");
  LatinSquare sq;
  sq.d = d;
  sq.entries.assign(static_cast<size_t>(d), std::vector<int>(static_cast<size_t>(d)));
  for (int i = 1; i <= d; ++i)
    for (int l = 1; l <= d; ++l)
      sq.entries[static_cast<size_t>(i - 1)][static_cast<size_t>(l - 1)] =
          ((i - l) % d + d) % d + 1;
  return sq;
}

IndexFamily index_family_from_squares(int d, const std::vector<LatinSquare>& squares,
                                      bool include_j0) {
  require(d >= 1, "index_family_from_squares: dimension must be positive");
  for (size_t q = 0; q < squares.size(); ++q) {
    require(squares[q].d == d, "index_family_from_squares: square " +
            std::to_string(q + 1) + " has mismatched dimension");
    require(latin_validate(squares[q]), "index_family_from_squares: square " +
            std::to_string(q + 1) + " is not a Latin square");
  }

  IndexFamily family;
  if (include_j0) {
    for (int i = 1; i <= d; ++i) {
      std::vector<int> set;
      for (int l = 1; l <= d; ++l) set.push_back((i - 1) * d + l);
      family.sets[{0, i}] = std::move(set);
    }
  }
  for (size_t q = 0; q < squares.size(); ++q) {
    const int j = static_cast<int>(q) + 1;
    for (int i = 1; i <= d; ++i) {
      std::vector<int> set;
      for (int l = 1; l <= d; ++l) {
        const int k = squares[q].entries[static_cast<size_t>(i - 1)][static_cast<size_t>(l - 1)];
        set.push_back((l - 1) * d + k);
      }
      std::sort(set.begin(), set.end());
      family.sets[{j, i}] = std::move(set);
    }
  }
  return family;
}

std::vector<Operator> error_basis_from_onb(const std::vector<StateVector>& basis) {
  const int d = static_cast<int>(basis.size());
  require(d >= 1, "error_basis_from_onb: empty basis");
  SchmidtState s = maximal_entangled(d, basis);  // validates orthonormality
  const double inv_root_d = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Operator> ls;
  ls.reserve(static_cast<size_t>(d) * static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      StateVector v = tensor(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
      v *= cx{inv_root_d};
      ls.push_back(iso_inverse(v, s));
    }
  }
  return ls;
}

MeasurementModel measurements_from_family(const std::vector<Operator>& ls,
                                          const IndexFamily& family) {
  require(!ls.empty(), "measurements_from_family: empty operator list");
  const int l = static_cast<int>(ls.size());
  const int d = ls.front().rows();

  std::map<int, int> max_i;
  for (const auto& [ji, set] : family.sets) {
    require(!set.empty(), "measurements_from_family: empty index set for " +
            ji_str(ji.first, ji.second));
    require(ji.second >= 1, "measurements_from_family: outcome index must be >= 1");
    max_i[ji.first] = std::max(max_i[ji.first], ji.second);
  }

  MeasurementModel model;
  for (const auto& [j, k] : max_i) {
    std::vector<Operator> ops;
    for (int i = 1; i <= k; ++i) {
      auto it = family.sets.find({j, i});
      require(it != family.sets.end(), "measurements_from_family: missing outcome " +
              ji_str(j, i));
      Operator sum = Operator::zero(d, d);
      for (int a : it->second) {
        require(a >= 1 && a <= l, "measurements_from_family: index " +
                std::to_string(a) + " in X" + ji_str(j, i) + " is out of range");
        sum += ls[static_cast<size_t>(a - 1)];
      }
      ops.push_back(std::move(sum));
    }
    model.measurements[j] = std::move(ops);
  }
  return model;
}

namespace {

Setup vaa87_setup() {
  const cx i{0.0, 1.0};
  Setup setup;
  setup.name = "vaa87";
  setup.ls = {
      Operator::from_rows({{0.5, 0.25 - 0.25 * i}, {0.25 + 0.25 * i, 0.0}}),
      Operator::from_rows({{0.5, -0.25 + 0.25 * i}, {-0.25 - 0.25 * i, 0.0}}),
      Operator::from_rows({{0.0, 0.25 + 0.25 * i}, {0.25 - 0.25 * i, 0.5}}),
      Operator::from_rows({{0.0, -0.25 - 0.25 * i}, {-0.25 + 0.25 * i, 0.5}}),
  };
  setup.model.measurements[1] = {
      Operator::from_rows({{0.5, 0.5}, {0.5, 0.5}}),
      Operator::from_rows({{0.5, -0.5}, {-0.5, 0.5}}),
  };
  setup.model.measurements[2] = {
      Operator::from_rows({{0.5, -0.5 * i}, {0.5 * i, 0.5}}),
      Operator::from_rows({{0.5, 0.5 * i}, {-0.5 * i, 0.5}}),
  };
  setup.model.measurements[3] = {
      Operator::from_rows({{1.0, 0.0}, {0.0, 0.0}}),
      Operator::from_rows({{0.0, 0.0}, {0.0, 1.0}}),
  };
  setup.family.sets = {
      {{1, 1}, {1, 3}}, {{1, 2}, {2, 4}},
      {{2, 1}, {1, 4}}, {{2, 2}, {2, 3}},
      {{3, 1}, {1, 2}}, {{3, 2}, {3, 4}},
  };
  setup.schmidt = maximal_entangled(2);
  setup.code = code_subspace(2, 2, {setup.schmidt.vector});
  return setup;
}

Setup comp3_setup() {
  Setup setup;
  setup.name = "comp3";
  const double r = 1.0 / std::sqrt(3.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Operator l = Operator::zero(3, 3);
      l(j, i) = r;
      setup.ls.push_back(std::move(l));
    }
  }
  // Measurement labels follow the published table: J=1 is the row family,
  // J=2 the cyclic square, J=3 the anticyclic square.
  IndexFamily built = index_family_from_squares(
      3, {cyclic_square(3), anticyclic_square(3)}, true);
  for (const auto& [ji, set] : built.sets)
    setup.family.sets[{ji.first + 1, ji.second}] = set;
  setup.model = measurements_from_family(setup.ls, setup.family);
  setup.schmidt = maximal_entangled(3);
  setup.code = code_subspace(3, 3, {setup.schmidt.vector});
  return setup;
}

Setup code3d_setup() {
  Setup setup;
  setup.name = "code3d";
  setup.ls = {
      Operator::from_rows({{0.5, 0.0, 0.0}, {0.5, 0.0, 0.0}, {0.0, 0.0, 0.0}}),
      Operator::from_rows({{0.5, 0.0, 0.0}, {-0.5, 0.0, 0.0}, {0.0, 0.0, 0.0}}),
      Operator::from_rows({{0.0, 0.5, 0.0}, {0.0, 0.5, 0.0}, {0.0, 0.0, 0.0}}),
      Operator::from_rows({{0.0, -0.5, 0.0}, {0.0, 0.5, 0.0}, {0.0, 0.0, 0.0}}),
      Operator::from_rows({{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}),
  };
  setup.family.sets = {
      {{1, 1}, {1, 2}}, {{1, 2}, {3, 4, 5}},
      {{2, 1}, {1, 2, 5}}, {{2, 2}, {3, 4}},
      {{3, 1}, {1, 3}}, {{3, 2}, {2, 4, 5}},
      {{4, 1}, {1, 3, 5}}, {{4, 2}, {2, 4}},
  };
  setup.model = measurements_from_family(setup.ls, setup.family);
  setup.schmidt = maximal_entangled(3);
  std::vector<StateVector> span;
  StateVector plus = basis_ket(3, 0) + basis_ket(3, 2);
  for (int i = 0; i < 3; ++i) span.push_back(tensor(basis_ket(3, i), plus));
  setup.code = code_subspace(3, 3, span);
  return setup;
}

Setup qubit2_setup() {
  Setup setup;
  setup.name = "qubit2";
  setup.ls = {
      Operator::from_rows({{0.5, 0.0}, {0.5, 0.0}}),
      Operator::from_rows({{0.5, 0.0}, {-0.5, 0.0}}),
      Operator::from_rows({{0.0, 0.5}, {0.0, 0.5}}),
      Operator::from_rows({{0.0, -0.5}, {0.0, 0.5}}),
  };
  setup.family.sets = {
      {{1, 1}, {1, 3}}, {{1, 2}, {2, 4}},
      {{2, 1}, {1, 2}}, {{2, 2}, {3, 4}},
  };
  setup.model = measurements_from_family(setup.ls, setup.family);
  setup.schmidt = maximal_entangled(2);
  setup.code = code_subspace(2, 2, {setup.schmidt.vector});
  return setup;
}

}  // namespace

Setup builtin_example(const std::string& name) {
  if (name == "vaa87") return vaa87_setup();
  if (name == "comp3") return comp3_setup();
  if (name == "code3d") return code3d_setup();
  if (name == "qubit2") return qubit2_setup();
  throw std::invalid_argument("builtin_example: unknown name \"" + name +
                              "\" (expected vaa87, comp3, code3d, or qubit2)");
}

}  // namespace meanking
