#include "curvkit/catalog.hpp"
#include "curvkit/error.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

using namespace curvkit;
using namespace curvkit::testing;

namespace {

class CatalogMetric : public ::testing::TestWithParam<std::string> {
 protected:
  void SetUp() override {
    entry_ = load(GetParam());
    classifier_.emplace(entry_.bundle(), entry_.id);
  }
  const CurvatureBundle& b() const { return *entry_.bundle(); }
  Classifier& c() { return *classifier_; }
  std::size_t n() const { return b().metric.dim(); }

  CatalogEntry entry_;
  std::optional<Classifier> classifier_;
};

std::string label(const std::vector<std::size_t>& i) { return component_label(i); }

TEST_P(CatalogMetric, RiemannSymmetries) {
  const Tensor& R = b().R;
  std::size_t d = n();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          const NormalForm& r = R[{i, j, k, l}];
          EXPECT_TRUE((r + R[{j, i, k, l}]).is_zero()) << label({i, j, k, l});
          EXPECT_TRUE((r + R[{i, j, l, k}]).is_zero()) << label({i, j, k, l});
          EXPECT_TRUE(equal(r, R[{k, l, i, j}])) << label({i, j, k, l});
          EXPECT_TRUE((r + R[{i, k, l, j}] + R[{i, l, j, k}]).is_zero()) << "first Bianchi " << label({i, j, k, l});
        }
}

TEST_P(CatalogMetric, SecondBianchiIdentity) {
  const Tensor& dR = c().tensor("d(R)");
  std::size_t d = n();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t bb = 0; bb < d; ++bb)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t k = 0; k < d; ++k)
            EXPECT_TRUE((dR[{a, bb, i, j, k}] + dR[{a, bb, j, k, i}] + dR[{a, bb, k, i, j}]).is_zero())
                << label({a, bb, i, j, k});
}

TEST_P(CatalogMetric, ContractedBianchiIdentity) {
  const Tensor& div = c().tensor("div(S)");
  for (std::size_t a = 0; a < n(); ++a)
    EXPECT_TRUE(equal(div[{a}] * NormalForm(2), b().kappa.derivative(b().metric.coordinate(a)))) << a;
}

TEST_P(CatalogMetric, Metricity) {
  EXPECT_TRUE(covariant_derivative(b().g, b().metric, b().gamma).is_zero());
  EXPECT_TRUE(c().tensor("d(g)").is_zero());
}

TEST_P(CatalogMetric, RicciAndScalar) {
  const Tensor& S = b().S;
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j) EXPECT_TRUE(equal(S[{i, j}], S[{j, i}]));
  NormalForm trace;
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j)
      if (!b().metric.inv(i, j).is_zero()) trace += b().metric.inv(i, j) * S[{i, j}];
  EXPECT_TRUE(equal(trace, b().kappa));
}

// Weyl and projective tensors from their component formulas, with the trace
// conditions checked on the result.
TEST_P(CatalogMetric, WeylAndProjectiveOracle) {
  const Metric& m = b().metric;
  const Tensor& R = b().R;
  const Tensor& S = b().S;
  std::size_t d = n();
  NormalForm nn(static_cast<int>(d));
  NormalForm a = NormalForm(1) / (nn - 2);
  NormalForm bk = b().kappa / ((nn - 1) * (nn - 2));
  NormalForm p = NormalForm(1) / (nn - 1);
  Tensor C = Tensor::covariant(d, 4), P = Tensor::covariant(d, 4);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          NormalForm ricci_part = m.g(i, l) * S[{j, k}] - m.g(i, k) * S[{j, l}] + m.g(j, k) * S[{i, l}] -
                                  m.g(j, l) * S[{i, k}];
          NormalForm metric_part = m.g(i, l) * m.g(j, k) - m.g(i, k) * m.g(j, l);
          C[{i, j, k, l}] = R[{i, j, k, l}] - a * ricci_part + bk * metric_part;
          P[{i, j, k, l}] = R[{i, j, k, l}] - p * (m.g(i, l) * S[{j, k}] - m.g(j, l) * S[{i, k}]);
        }
  for (std::size_t k = 0; k < C.size(); ++k) {
    EXPECT_TRUE(equal(C.flat(k), b().C.flat(k))) << "C " << label(C.unflatten(k));
    EXPECT_TRUE(equal(P.flat(k), b().P.flat(k))) << "P " << label(P.unflatten(k));
  }
  for (auto [s, t] : std::vector<std::pair<std::size_t, std::size_t>>{{0, 3}, {0, 2}, {1, 3}})
    EXPECT_TRUE(contract(C, s, t, m).is_zero()) << s << t;
  EXPECT_TRUE(contract(P, 0, 3, m).is_zero());
}

TEST_P(CatalogMetric, FiniteDifferenceOracle) {
  FiniteDifferenceReport r = finite_difference_check(b().metric, 2024, 10, 1e-6L);
  EXPECT_EQ(r.points, 10);
  for (const auto& f : r.failures) ADD_FAILURE() << f;
}

INSTANTIATE_TEST_SUITE_P(Catalog, CatalogMetric, ::testing::ValuesIn(catalog_ids()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& ch : s)
                             if (ch == '-') ch = '_';
                           return s;
                         });

TEST(Curvature, ConstantCurvature) {
  CatalogEntry e = load("constant-curvature");
  const CurvatureBundle& b = *e.bundle();
  NormalForm k = e.classifier().parse("k");
  EXPECT_TRUE(equal(b.kappa, NormalForm(-12) * k));
  EXPECT_TRUE(b.C.is_zero());
  // R = -(k) G with the Gaussian tensor g∧g/2
  for (std::size_t q = 0; q < b.R.size(); ++q) EXPECT_TRUE(equal(b.R.flat(q), -k * b.G.flat(q)));
}

TEST(Curvature, RejectsLowDimension) {
  SymbolTable s({"u", "v"}, {}, {});
  Metric m = build_metric(s, {{"1", "0"}, {"0", "u^2"}});
  Christoffel gamma = christoffel(m);
  Tensor R = riemann(m, gamma);
  Tensor S = ricci(R, m);
  EXPECT_THROW(conformal(R, S, scalar_curvature(S, m), m), InputError);
}

TEST(Geometry, DegenerateMetric) {
  SymbolTable s({"u", "v"}, {}, {});
  EXPECT_THROW(build_metric(s, {{"1", "1"}, {"1", "1"}}), Error);
  EXPECT_THROW(build_metric(s, {{"1", "0"}, {"1", "1"}}), InputError);
}

}  // namespace
