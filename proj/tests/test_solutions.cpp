// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "meanking/isomap.hpp"
#include "meanking/linalg.hpp"
#include "meanking/qecc.hpp"
#include "meanking/solutions.hpp"

using namespace meanking;

namespace {

const cx I{0.0, 1.0};

std::vector<StateVector> random_basis(int d, std::mt19937& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<StateVector> vs;
  for (int k = 0; k < d; ++k) {
    StateVector v(d);
    for (int x = 0; x < d; ++x) v[x] = cx{u(gen), u(gen)};
    vs.push_back(v);
  }
  auto basis = orthonormalize(vs);
  REQUIRE(basis.size() == static_cast<size_t>(d));
  return basis;
}

}  // namespace

TEST_CASE("model_validate") {
  CHECK(model_validate(builtin_example("vaa87").model).ok);
  CHECK(model_validate(builtin_example("comp3").model).ok);
  CHECK(model_validate(builtin_example("code3d").model).ok);
  CHECK(model_validate(builtin_example("qubit2").model).ok);

  MeasurementModel bad;
  bad.measurements[1] = {Operator::identity(2), Operator::identity(2)};
  auto rep = model_validate(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.residuals[1] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("family_disjoint") {
  CHECK(family_disjoint(builtin_example("vaa87").family).disjoint);

  IndexFamily overlapping;
  overlapping.sets[{1, 1}] = {1, 3};
  overlapping.sets[{1, 2}] = {2, 3};
  overlapping.sets[{2, 1}] = {1};
  auto rep = family_disjoint(overlapping);
  CHECK_FALSE(rep.disjoint);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].find("share index 3") != std::string::npos);
}

TEST_CASE("latin squares") {
  LatinSquare cyc = cyclic_square(3);
  CHECK(cyc.entries == std::vector<std::vector<int>>{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}});
  CHECK(latin_validate(cyc));

  LatinSquare anti = anticyclic_square(3);
  CHECK(anti.entries == std::vector<std::vector<int>>{{1, 3, 2}, {2, 1, 3}, {3, 2, 1}});
  CHECK(latin_validate(anti));

  LatinSquare rep3{3, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}};
  CHECK_FALSE(latin_validate(rep3));

  LatinSquare bad{3, {{1, 2, 4}, {2, 3, 1}, {3, 1, 2}}};
  CHECK_THROWS_AS(latin_validate(bad), std::invalid_argument);

  for (int d = 2; d <= 5; ++d)
    for (int shift = 0; shift < d; ++shift)
      CHECK(latin_validate(cyclic_square(d, shift)));
}

TEST_CASE("index_family_from_squares") {
  SUBCASE("d=3 cyclic + anticyclic reproduces the published table") {
    IndexFamily fam = index_family_from_squares(
        3, {cyclic_square(3), anticyclic_square(3)}, true);
    CHECK(fam.sets[{0, 1}] == std::vector<int>{1, 2, 3});
    CHECK(fam.sets[{0, 2}] == std::vector<int>{4, 5, 6});
    CHECK(fam.sets[{0, 3}] == std::vector<int>{7, 8, 9});
    CHECK(fam.sets[{1, 1}] == std::vector<int>{1, 5, 9});
    CHECK(fam.sets[{1, 2}] == std::vector<int>{2, 6, 7});
    CHECK(fam.sets[{1, 3}] == std::vector<int>{3, 4, 8});
    CHECK(fam.sets[{2, 1}] == std::vector<int>{1, 6, 8});
    CHECK(fam.sets[{2, 2}] == std::vector<int>{2, 4, 9});
    CHECK(fam.sets[{2, 3}] == std::vector<int>{3, 5, 7});
  }

  SUBCASE("d=2 single swap square") {
    LatinSquare swap{2, {{1, 2}, {2, 1}}};
    IndexFamily fam = index_family_from_squares(2, {swap}, true);
    CHECK(fam.sets[{0, 1}] == std::vector<int>{1, 2});
    CHECK(fam.sets[{0, 2}] == std::vector<int>{3, 4});
    CHECK(fam.sets[{1, 1}] == std::vector<int>{1, 4});
    CHECK(fam.sets[{1, 2}] == std::vector<int>{2, 3});
  }

  SUBCASE("no squares leaves only the row family") {
    IndexFamily fam = index_family_from_squares(3, {}, true);
    CHECK(fam.sets.size() == 3);
  }

  SUBCASE("per-J disjointness holds for every cyclic shift, d <= 5") {
    for (int d = 2; d <= 5; ++d) {
      std::vector<LatinSquare> squares;
      for (int shift = 0; shift < d; ++shift)
        squares.push_back(cyclic_square(d, shift));
      IndexFamily fam = index_family_from_squares(d, squares, true);
      CHECK(family_disjoint(fam).disjoint);
      // Each set has exactly d members; each J partitions 1..d^2.
      for (const auto& [ji, set] : fam.sets)
        CHECK(set.size() == static_cast<size_t>(d));
    }
  }

  CHECK_THROWS_AS(index_family_from_squares(3, {LatinSquare{3, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}}}, false),
                  std::invalid_argument);
  CHECK_THROWS_AS(index_family_from_squares(2, {cyclic_square(3)}, false),
                  std::invalid_argument);
}

TEST_CASE("error_basis_from_onb") {
  SUBCASE("computational basis, d=3: single-entry matrices") {
    std::vector<StateVector> comp = {basis_ket(3, 0), basis_ket(3, 1), basis_ket(3, 2)};
    auto ls = error_basis_from_onb(comp);
    REQUIRE(ls.size() == 9);
    const double r = 1.0 / std::sqrt(3.0);
    // a = (i-1)*3 + j holds entry r at row j-1, column i-1.
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        const Operator& l = ls[static_cast<size_t>((i - 1) * 3 + j - 1)];
        for (int rr = 0; rr < 3; ++rr)
          for (int cc = 0; cc < 3; ++cc) {
            const cx want = (rr == j - 1 && cc == i - 1) ? cx{r} : cx{0.0};
            CHECK(std::abs(l(rr, cc) - want) < 1e-14);
          }
      }
    }
  }

  SUBCASE("computational basis, d=2") {
    auto ls = error_basis_from_onb({basis_ket(2, 0), basis_ket(2, 1)});
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(ls[0](0, 0) - cx{r}) < 1e-14);
    CHECK(std::abs(ls[0](1, 1)) < 1e-14);
  }

  SUBCASE("gram and completeness for arbitrary bases") {
    std::mt19937 gen(71);
    for (int d : {2, 3, 4}) {
      auto basis = random_basis(d, gen);
      auto ls = error_basis_from_onb(basis);
      REQUIRE(ls.size() == static_cast<size_t>(d * d));
      for (size_t a = 0; a < ls.size(); ++a)
        for (size_t b = 0; b < ls.size(); ++b) {
          const cx want = (a == b) ? cx{1.0 / d} : cx{0.0};
          CHECK(std::abs(hs_inner(ls[a], ls[b]) - want) < 1e-12);
        }
      Operator sum = Operator::zero(d, d);
      for (const auto& l : ls) sum += l.adjoint() * l;
      CHECK(approx_equal(sum, Operator::identity(d)).residual < 1e-12);
    }
  }

  CHECK_THROWS_AS(error_basis_from_onb({basis_ket(2, 0), basis_ket(2, 0)}),
                  std::invalid_argument);
}

TEST_CASE("measurements_from_family") {
  SUBCASE("published dimension-3 matrices are reproduced exactly") {
    Setup setup = builtin_example("comp3");
    const double r = 1.0 / std::sqrt(3.0);
    auto mat = [&](std::initializer_list<std::initializer_list<int>> pattern) {
      Operator m = Operator::zero(3, 3);
      int rr = 0;
      for (const auto& row : pattern) {
        int cc = 0;
        for (int v : row) {
          if (v) m(rr, cc) = r;
          ++cc;
        }
        ++rr;
      }
      return m;
    };
    // Row family.
    CHECK(approx_equal(setup.model.measurements[1][0],
                       mat({{1, 0, 0}, {1, 0, 0}, {1, 0, 0}})).residual == 0.0);
    CHECK(approx_equal(setup.model.measurements[1][1],
                       mat({{0, 1, 0}, {0, 1, 0}, {0, 1, 0}})).residual == 0.0);
    CHECK(approx_equal(setup.model.measurements[1][2],
                       mat({{0, 0, 1}, {0, 0, 1}, {0, 0, 1}})).residual == 0.0);
    // Cyclic square.
    CHECK(approx_equal(setup.model.measurements[2][0],
                       mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).residual == 0.0);
    CHECK(approx_equal(setup.model.measurements[2][1],
                       mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})).residual == 0.0);
    CHECK(approx_equal(setup.model.measurements[2][2],
                       mat({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})).residual == 0.0);
    // Anticyclic square.
    CHECK(approx_equal(setup.model.measurements[3][0],
                       mat({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}})).residual == 0.0);
    CHECK(approx_equal(setup.model.measurements[3][1],
                       mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})).residual == 0.0);
    CHECK(approx_equal(setup.model.measurements[3][2],
                       mat({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})).residual == 0.0);
  }

  SUBCASE("construction identities for random bases and squares") {
    std::mt19937 gen(13);
    for (int d : {2, 3, 4}) {
      auto basis = random_basis(d, gen);
      auto ls = error_basis_from_onb(basis);
      std::vector<LatinSquare> squares = {cyclic_square(d, 1)};
      if (d > 2) squares.push_back(anticyclic_square(d));
      IndexFamily fam = index_family_from_squares(d, squares, true);
      MeasurementModel model = measurements_from_family(ls, fam);
      CHECK(model_validate(model).ok);

      const double r = 1.0 / std::sqrt(static_cast<double>(d));
      StateVector f_sum(d);
      for (const auto& f : basis) f_sum += f;

      for (size_t q = 0; q < squares.size(); ++q) {
        const int j = static_cast<int>(q) + 1;
        for (int i = 1; i <= d; ++i) {
          for (int l = 1; l <= d; ++l) {
            // M_i^(J) |f_l> = (1/sqrt(d)) |f_{J^(i)(l)}>.
            StateVector got = model.measurements[j][static_cast<size_t>(i - 1)]
                                  .apply(basis[static_cast<size_t>(l - 1)]);
            const int target = squares[q].entries[static_cast<size_t>(i - 1)]
                                                 [static_cast<size_t>(l - 1)];
            StateVector want = cx{r} * basis[static_cast<size_t>(target - 1)];
            CHECK(approx_equal(got, want).residual < 1e-10);
          }
        }
      }
      for (int i = 1; i <= d; ++i) {
        for (int l = 1; l <= d; ++l) {
          // M_i^(0) |f_l> = (delta_il/sqrt(d)) Sum_j |f_j>.
          StateVector got = model.measurements[0][static_cast<size_t>(i - 1)]
                                .apply(basis[static_cast<size_t>(l - 1)]);
          StateVector want = (i == l) ? cx{r} * f_sum : StateVector(d);
          CHECK(approx_equal(got, want).residual < 1e-10);
        }
      }
    }
  }

  SUBCASE("rejects incomplete or out-of-range families") {
    auto ls = error_basis_from_onb({basis_ket(2, 0), basis_ket(2, 1)});
    IndexFamily gap;
    gap.sets[{1, 2}] = {1};
    CHECK_THROWS_AS(measurements_from_family(ls, gap), std::invalid_argument);
    IndexFamily oob;
    oob.sets[{1, 1}] = {5};
    CHECK_THROWS_AS(measurements_from_family(ls, oob), std::invalid_argument);
  }
}

TEST_CASE("c1_decompose") {
  Setup setup = builtin_example("vaa87");

  SUBCASE("unit coefficients and vanishing residuals") {
    auto rep = c1_decompose(setup.code, setup.model, setup.ls, setup.family,
                            setup.schmidt);
    CHECK(rep.ok);
    CHECK(rep.max_residual < 1e-14);
    for (const auto& [ji, set] : setup.family.sets) {
      for (int a : set) {
        auto it = rep.coeffs.values.find({ji.first, ji.second, a});
        REQUIRE(it != rep.coeffs.values.end());
        CHECK(std::abs(it->second - cx{1.0}) < 1e-13);
      }
      CHECK(rep.residual_global[ji] < 1e-14);
    }
    CHECK(rep.diagnostics.empty());
  }

  SUBCASE("a truncated index set is pinpointed") {
    IndexFamily corrupted = setup.family;
    corrupted.sets[{1, 1}] = {1, 2};
    auto rep = c1_decompose(setup.code, setup.model, setup.ls, corrupted,
                            setup.schmidt);
    CHECK_FALSE(rep.ok);
    CHECK(rep.residual_on_code[{1, 1}] > 0.4);
    CHECK(rep.residual_on_code[{1, 2}] < 1e-14);
    bool missing3 = false, zero2 = false;
    for (const auto& d : rep.diagnostics) {
      if (d.find("(J=1, i=1)") != std::string::npos) {
        if (d.find("operator 3 overlaps") != std::string::npos) missing3 = true;
        if (d.find("listed index 2 has zero coefficient") != std::string::npos)
          zero2 = true;
      }
    }
    CHECK(missing3);
    CHECK(zero2);
  }

  SUBCASE("identity on identity") {
    CodeSubspace code = code_subspace(1, 1, {StateVector{1.0}});
    MeasurementModel m;
    m.measurements[1] = {Operator::identity(1)};
    IndexFamily fam;
    fam.sets[{1, 1}] = {1};
    auto rep = c1_decompose(code, m, {Operator::identity(1)}, fam,
                            maximal_entangled(1));
    CHECK(rep.ok);
    CHECK(std::abs(rep.coeffs.values[{1, 1, 1}] - cx{1.0}) < 1e-15);
  }
}

TEST_CASE("certify") {
  SUBCASE("vaa87") {
    Setup s = builtin_example("vaa87");
    auto cert = certify(s.code, s.model, s.ls, s.family, s.schmidt);
    CHECK(cert.passed);
    CHECK(cert.c1.ok);
    CHECK(cert.c2_ok);
    CHECK(cert.c3.passed);
    CHECK(cert.model.ok);
    REQUIRE(cert.lambda.size() == 4);
    for (double lam : cert.lambda) CHECK(lam == doctest::Approx(0.25));
    REQUIRE(cert.alpha.has_value());
    CHECK(*cert.alpha == doctest::Approx(0.5));
  }

  SUBCASE("comp3") {
    Setup s = builtin_example("comp3");
    auto cert = certify(s.code, s.model, s.ls, s.family, s.schmidt);
    CHECK(cert.passed);
    REQUIRE(cert.alpha.has_value());
    CHECK(*cert.alpha == doctest::Approx(1.0 / 3.0));
    for (double lam : cert.lambda) CHECK(lam == doctest::Approx(1.0 / 9.0));
  }

  SUBCASE("code3d: zero-lambda pattern with non-uniform norms") {
    Setup s = builtin_example("code3d");
    auto cert = certify(s.code, s.model, s.ls, s.family, s.schmidt);
    CHECK(cert.passed);
    REQUIRE(cert.lambda.size() == 5);
    CHECK(cert.lambda[0] == doctest::Approx(0.25));
    CHECK(cert.lambda[1] == doctest::Approx(0.25));
    CHECK(std::abs(cert.lambda[2]) < 1e-12);
    CHECK(std::abs(cert.lambda[3]) < 1e-12);
    CHECK(cert.lambda[4] == doctest::Approx(0.5));
    CHECK(cert.lambda[0] == doctest::Approx(cert.lambda[1]));
    CHECK_FALSE(cert.alpha.has_value());
    const std::vector<double> want_norms = {0.5, 0.5, 0.5, 0.5, 1.0};
    REQUIRE(cert.sc_norms.size() == want_norms.size());
    for (size_t a = 0; a < want_norms.size(); ++a)
      CHECK(cert.sc_norms[a] == doctest::Approx(want_norms[a]).epsilon(1e-12));
  }

  SUBCASE("qubit2") {
    Setup s = builtin_example("qubit2");
    auto cert = certify(s.code, s.model, s.ls, s.family, s.schmidt);
    CHECK(cert.passed);
    REQUIRE(cert.alpha.has_value());
    CHECK(*cert.alpha == doctest::Approx(0.5));
  }

  SUBCASE("corrupted family pinpoints c1 and keeps c2") {
    Setup s = builtin_example("vaa87");
    IndexFamily corrupted = s.family;
    corrupted.sets[{1, 1}] = {1};  // drops 3; J=1 sets stay disjoint
    auto cert = certify(s.code, s.model, s.ls, corrupted, s.schmidt);
    CHECK_FALSE(cert.passed);
    CHECK_FALSE(cert.c1.ok);
    CHECK(cert.c2_ok);
    CHECK(cert.c3.passed);
  }

  SUBCASE("invariant under relabeling of error indices") {
    Setup s = builtin_example("vaa87");
    // Permutation 1->3, 2->1, 3->4, 4->2 applied to operators and family.
    std::vector<int> perm = {3, 1, 4, 2};  // new index of old a = perm[a-1]
    std::vector<Operator> ls2(4, Operator());
    for (int a = 1; a <= 4; ++a)
      ls2[static_cast<size_t>(perm[static_cast<size_t>(a - 1)] - 1)] =
          s.ls[static_cast<size_t>(a - 1)];
    IndexFamily fam2;
    for (const auto& [ji, set] : s.family.sets) {
      std::vector<int> mapped;
      for (int a : set) mapped.push_back(perm[static_cast<size_t>(a - 1)]);
      std::sort(mapped.begin(), mapped.end());
      fam2.sets[ji] = mapped;
    }
    auto cert = certify(s.code, s.model, ls2, fam2, s.schmidt);
    CHECK(cert.passed);
    for (double lam : cert.lambda) CHECK(lam == doctest::Approx(0.25));
  }
}

TEST_CASE("derive_from_pvm") {
  SUBCASE("qubit fixture round trip") {
    Setup s = builtin_example("vaa87");
    std::vector<StateVector> pvm;
    for (const auto& l : s.ls)
      pvm.push_back(iso_forward(l, s.schmidt).normalized());
    auto derived = derive_from_pvm(s.schmidt, pvm, s.model);
    CHECK(derived.alpha == doctest::Approx(0.5));
    REQUIRE(derived.ls.size() == 4);
    for (size_t a = 0; a < 4; ++a)
      CHECK(approx_equal(derived.ls[a], s.ls[a]).residual < 1e-10);
    CHECK(derived.c2_ok);
    for (const auto& [ji, set] : s.family.sets) {
      REQUIRE(derived.family.sets.count(ji) == 1);
      CHECK(derived.family.sets[ji] == set);
    }
    for (const auto& [key, f] : derived.coeffs.values)
      CHECK(std::abs(f - cx{1.0}) < 1e-12);
  }

  SUBCASE("product-basis PVM with the dimension-3 model") {
    Setup s = builtin_example("comp3");
    std::vector<StateVector> pvm;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        pvm.push_back(tensor(basis_ket(3, i), basis_ket(3, j)));
    auto derived = derive_from_pvm(s.schmidt, pvm, s.model);
    CHECK(derived.alpha == doctest::Approx(1.0 / 3.0));
    for (size_t a = 0; a < 9; ++a)
      CHECK(approx_equal(derived.ls[a], s.ls[a]).residual < 1e-12);
    CHECK(derived.c2_ok);
    for (const auto& [ji, set] : s.family.sets)
      CHECK(derived.family.sets[ji] == set);
  }

  SUBCASE("product-basis PVM cannot serve the three-Pauli model") {
    Setup s = builtin_example("vaa87");
    std::vector<StateVector> pvm;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        pvm.push_back(tensor(basis_ket(2, i), basis_ket(2, j)));
    auto derived = derive_from_pvm(s.schmidt, pvm, s.model);
    CHECK_FALSE(derived.c2_ok);
    CHECK_FALSE(derived.c2_violations.empty());
    // The sharp measurement J=3 stays conflict-free; J=1 does not.
    CHECK(derived.family.sets[{1, 1}].size() == 4);
  }

  SUBCASE("weighted states use the smallest squared weight") {
    auto s = schmidt_state({std::sqrt(0.8), std::sqrt(0.2)},
                           {basis_ket(2, 0), basis_ket(2, 1)},
                           {basis_ket(2, 0), basis_ket(2, 1)});
    std::vector<StateVector> pvm;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        pvm.push_back(tensor(basis_ket(2, i), basis_ket(2, j)));
    MeasurementModel m;
    m.measurements[1] = {Operator::from_rows({{1.0, 0.0}, {0.0, 0.0}}),
                         Operator::from_rows({{0.0, 0.0}, {0.0, 1.0}})};
    auto derived = derive_from_pvm(s, pvm, m);
    CHECK(derived.alpha == doctest::Approx(0.2));
    for (size_t a = 0; a < 4; ++a) {
      const cx g = sc_inner(derived.ls[a], derived.ls[a], s);
      CHECK(std::abs(g - cx{0.2}) < 1e-12);
    }
  }

  SUBCASE("rejects bad inputs") {
    Setup s = builtin_example("vaa87");
    std::vector<StateVector> not_onb = {
        tensor(basis_ket(2, 0), basis_ket(2, 0)),
        tensor(basis_ket(2, 0), basis_ket(2, 0)),
        tensor(basis_ket(2, 1), basis_ket(2, 0)),
        tensor(basis_ket(2, 1), basis_ket(2, 1)),
    };
    CHECK_THROWS_AS(derive_from_pvm(s.schmidt, not_onb, s.model),
                    std::invalid_argument);

    std::vector<StateVector> pvm;
    for (const auto& l : s.ls)
      pvm.push_back(iso_forward(l, s.schmidt).normalized());
    MeasurementModel bad;
    bad.measurements[1] = {Operator::identity(2), Operator::identity(2)};
    CHECK_THROWS_AS(derive_from_pvm(s.schmidt, pvm, bad), std::invalid_argument);
  }
}

TEST_CASE("builtin_example fixtures") {
  SUBCASE("vaa87 matrices are exact") {
    Setup s = builtin_example("vaa87");
    CHECK(s.ls[0](0, 0) == cx{0.5});
    CHECK(s.ls[0](0, 1) == cx{0.25, -0.25});
    CHECK(s.ls[0](1, 0) == cx{0.25, 0.25});
    CHECK(s.ls[0](1, 1) == cx{0.0});
    CHECK(s.ls[3](0, 1) == cx{-0.25, -0.25});
    // Measurements are the rank-1 eigenprojectors of the three Pauli axes.
    CHECK(approx_equal(s.model.measurements[1][0] - s.model.measurements[1][1],
                       pauli_x()).residual == 0.0);
    CHECK(approx_equal(s.model.measurements[2][0] - s.model.measurements[2][1],
                       pauli_y()).residual == 0.0);
    CHECK(approx_equal(s.model.measurements[3][0] - s.model.measurements[3][1],
                       pauli_z()).residual == 0.0);
    // Each measurement operator equals the sum over its index set.
    for (const auto& [ji, set] : s.family.sets) {
      Operator sum = Operator::zero(2, 2);
      for (int a : set) sum += s.ls[static_cast<size_t>(a - 1)];
      CHECK(approx_equal(sum, s.model.measurements[ji.first]
                                  [static_cast<size_t>(ji.second - 1)]).residual == 0.0);
    }
  }

  SUBCASE("code3d sums match the printed operators") {
    Setup s = builtin_example("code3d");
    // M_2^(2) is the embedded |1><1|.
    Operator z1 = Operator::zero(3, 3);
    z1(1, 1) = 1.0;
    CHECK(approx_equal(s.model.measurements[2][1], z1).residual == 0.0);
    // M_1^(3) is the embedded |+><+|.
    Operator x0 = Operator::from_rows(
        {{0.5, 0.5, 0.0}, {0.5, 0.5, 0.0}, {0.0, 0.0, 0.0}});
    CHECK(approx_equal(s.model.measurements[3][0], x0).residual == 0.0);
    CHECK(s.code.dim() == 3);
  }

  SUBCASE("qubit2 operators") {
    Setup s = builtin_example("qubit2");
    CHECK(s.ls.size() == 4);
    // M^(1) measures the x axis, M^(2) the z axis.
    CHECK(approx_equal(s.model.measurements[1][0],
                       Operator::from_rows({{0.5, 0.5}, {0.5, 0.5}})).residual == 0.0);
    CHECK(approx_equal(s.model.measurements[2][0],
                       Operator::from_rows({{1.0, 0.0}, {0.0, 0.0}})).residual == 0.0);
    auto cert = certify(s.code, s.model, s.ls, s.family, s.schmidt);
    CHECK(cert.passed);
  }

  CHECK_THROWS_AS(builtin_example("unknown"), std::invalid_argument);
}

TEST_CASE("generative construction certifies for random bases and squares") {
  std::mt19937 gen(99);
  for (int d : {2, 3}) {
    for (int rep = 0; rep < 3; ++rep) {
      auto basis = random_basis(d, gen);
      auto ls = error_basis_from_onb(basis);
      std::vector<LatinSquare> squares = {
          cyclic_square(d, static_cast<int>(gen() % static_cast<unsigned>(d)))};
      IndexFamily fam = index_family_from_squares(d, squares, true);
      MeasurementModel model = measurements_from_family(ls, fam);
      SchmidtState s = maximal_entangled(d, basis);
      CodeSubspace code = code_subspace(d, d, {s.vector});
      auto cert = certify(code, model, ls, fam, s);
      CHECK(cert.passed);
      REQUIRE(cert.alpha.has_value());
      CHECK(*cert.alpha == doctest::Approx(1.0 / d));
    }
  }
}
