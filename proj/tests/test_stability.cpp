#include "corpus.hpp"
#include "oracles.hpp"

#include "clusterdt/cli/format.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace clusterdt;

namespace {

bool is_wild(const ExchangeMatrix& b) { return cartan_form(b).cls == Definiteness::Indefinite; }

bool representation_infinite(const ExchangeMatrix& b) {
  return cartan_form(b).cls != Definiteness::PositiveDefinite;
}

std::string fixed(const HighPrecision& v, int digits) {
  // Truncated decimal string with a trailing "...".
  return cli::format_high(v, {digits, true});
}

}  // namespace

TEST(Stability, D4IsNotStableWithPeriodFour) {
  const auto v = detect_basic_sign_stability(dt_path(corpus::d4()));
  ASSERT_EQ(v.status, StabilityStatus::NotStable);
  ASSERT_TRUE(v.witness);
  const auto& t = v.evidence[v.witness->sample];
  ASSERT_TRUE(t.recurrence);
  EXPECT_EQ(t.recurrence->period, 4u);
  // Rotate the cycle so it starts at the all-plus sign.
  auto cyc = t.cycle();
  while (!cyc.front().all(Sign::Plus)) std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
  std::vector<std::string> got;
  for (const auto& s : cyc) got.push_back(s.str());
  EXPECT_EQ(got, (std::vector<std::string>{"(+,+,+,+)", "(-,-,-,-)", "(-,-,-,-)", "(-,-,-,-)"}));
  EXPECT_FALSE(v.stable_sign);
}

TEST(Stability, QPrimeIsStable) {
  const auto v = detect_basic_sign_stability(dt_path(corpus::q_prime()));
  ASSERT_EQ(v.status, StabilityStatus::Stable);
  EXPECT_EQ(v.stable_sign->str(), "(-,-,-,-)");
  EXPECT_EQ(v.stable_matrix->e, coxeter_matrix(corpus::q_prime()).phi);
  EXPECT_NEAR(v.stretch_factor->rho, 2.369205407092467, 1e-12);
  EXPECT_FALSE(v.witness);
  for (const auto& t : v.evidence) EXPECT_LE(t.n0, 1u);
}

TEST(Stability, KroneckerIsStableWithUnitStretch) {
  const auto v = detect_basic_sign_stability(dt_path(corpus::kronecker()));
  ASSERT_EQ(v.status, StabilityStatus::Stable);
  EXPECT_EQ(v.stable_sign->str(), "(-,-)");
  EXPECT_EQ(v.stable_matrix->e, (IntMatrix{{3, 2}, {-2, -1}}));
  EXPECT_EQ(v.stretch_factor->hi, 1);
  EXPECT_EQ(v.stretch_factor->lo, 1);
}

TEST(Stability, Preconditions) {
  EXPECT_THROW(detect_basic_sign_stability(MutationPath(corpus::a2(), {0})), PreconditionError);
  const auto gamma = dt_path(corpus::a2());
  EXPECT_THROW(detect_basic_sign_stability(gamma, {to_point({1, 0})}), std::invalid_argument);
  EXPECT_THROW(detect_basic_sign_stability(gamma, {to_point({1, 1, 1})}), std::invalid_argument);
  EXPECT_THROW(detect_basic_sign_stability(gamma, std::vector<TropicalPoint>{}), std::invalid_argument);
}

TEST(Stability, CanonicalSamplesAreInteriorAndDeterministic) {
  StabilityOptions o;
  o.samples_per_cone = 7;
  const auto s = canonical_samples(5, o);
  ASSERT_EQ(s.size(), 14u);
  std::size_t plus = 0, minus = 0;
  for (const auto& x : s) {
    EXPECT_TRUE(strictly_nonzero(x));
    for (const auto& c : x) EXPECT_LE(abs_value(c), 100);
    plus += in_positive_cone(x);
    minus += in_negative_cone(x);
  }
  EXPECT_EQ(plus, 7u);
  EXPECT_EQ(minus, 7u);
  EXPECT_EQ(canonical_samples(5, o), s);
}

TEST(Stability, FiniteCorpusIsNotStable) {
  for (const auto& e : corpus::all()) {
    if (representation_infinite(e.b)) continue;
    SCOPED_TRACE(e.name);
    const auto v = detect_basic_sign_stability(dt_path(e.b));
    EXPECT_EQ(v.status, StabilityStatus::NotStable);
    ASSERT_TRUE(v.witness);
    EXPECT_TRUE(v.evidence[v.witness->sample].recurrence);
  }
}

TEST(Stability, InfiniteCorpusIsStableAllMinusWithCoxeterMatrix) {
  for (const auto& e : corpus::all()) {
    if (!representation_infinite(e.b)) continue;
    SCOPED_TRACE(e.name);
    const auto v = detect_basic_sign_stability(dt_path(e.b));
    ASSERT_EQ(v.status, StabilityStatus::Stable);
    EXPECT_TRUE(v.stable_sign->all(Sign::Minus));
    EXPECT_EQ(v.stable_matrix->e, coxeter_matrix(e.b).phi);
    // The reversed loop stabilizes on all plus with Phi^-1.
    const auto w = detect_basic_sign_stability(dt_path(e.b).reversed());
    ASSERT_EQ(w.status, StabilityStatus::Stable);
    EXPECT_TRUE(w.stable_sign->all(Sign::Plus));
    EXPECT_EQ(w.stable_matrix->e, coxeter_matrix(e.b).inverse);
  }
}

TEST(Stability, VerdictSurvivesLongerRunsAndFreshSeeds) {
  for (const auto& e : corpus::all()) {
    SCOPED_TRACE(e.name);
    StabilityOptions base;
    base.max_iters = 40;
    const auto v = detect_basic_sign_stability(dt_path(e.b), base);
    if (v.status != StabilityStatus::Stable) continue;
    EXPECT_EQ(detect_basic_sign_stability(dt_path(e.b), base).stable_sign, v.stable_sign);
    for (std::uint64_t seed : {2u, 3u}) {
      StabilityOptions o = base;
      o.max_iters *= 2;
      o.seed = seed;
      const auto w = detect_basic_sign_stability(dt_path(e.b), o);
      EXPECT_EQ(w.status, StabilityStatus::Stable);
      EXPECT_EQ(w.stable_sign, v.stable_sign);
    }
  }
}

TEST(Stability, ThreadedTraceMatchesSerial) {
  StabilityOptions serial, threaded;
  threaded.threads = 4;
  const auto gamma = dt_path(corpus::ten_vertex());
  const auto a = detect_basic_sign_stability(gamma, serial);
  const auto b = detect_basic_sign_stability(gamma, threaded);
  ASSERT_EQ(a.evidence.size(), b.evidence.size());
  for (std::size_t i = 0; i < a.evidence.size(); ++i) {
    EXPECT_EQ(a.evidence[i].signs, b.evidence[i].signs);
    EXPECT_EQ(a.evidence[i].last, b.evidence[i].last);
  }
  EXPECT_EQ(a.status, b.status);
}

TEST(Stability, NonConstantPeriodicLoopIsNotStable) {
  // A single mutation at a vertex of A1 is an involution: signs alternate.
  const ExchangeMatrix a1 = corpus::type_a(1);
  const auto v = detect_basic_sign_stability(MutationPath(a1, {0}));
  EXPECT_EQ(v.status, StabilityStatus::NotStable);
}

TEST(Stability, InconclusiveWhenTooFewRounds) {
  StabilityOptions o;
  o.max_iters = 3;  // fewer rounds than the 5 consecutive required
  const auto v = detect_basic_sign_stability(dt_path(corpus::q_prime()), o);
  EXPECT_EQ(v.status, StabilityStatus::Inconclusive);
}

TEST(StretchFactor, Examples) {
  const auto gamma = dt_path(corpus::q_prime());
  const auto pm = presentation_matrix(gamma, parse_sign_vector("(-,-,-,-)"));
  EXPECT_NEAR(stretch_factor(pm).rho, 2.369205407092467, 1e-12);
  const auto plus = presentation_matrix(gamma, parse_sign_vector("(+,+,+,+)"));
  EXPECT_EQ(stretch_factor(plus).hi, 1);
  const auto k3 = presentation_matrix(dt_path(corpus::three_kronecker()), parse_sign_vector("(-,-)"));
  EXPECT_EQ(k3.e, (IntMatrix{{8, 3}, {-3, -1}}));
  EXPECT_NEAR(stretch_factor(k3).rho, (7 + 3 * std::sqrt(5.0)) / 2, 1e-12);
  EXPECT_THROW(stretch_factor(pm, 0.0), std::invalid_argument);
}

TEST(NorthSouth, QPrimeEigenvector) {
  const auto lim = ns_limit(corpus::q_prime());
  const std::vector<std::string> expected{"-0.2947575153522...", "-0.6983410991536...", "-0.1513810480345...",
                                         "0.6344458169711..."};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(fixed(lim.p_plus[i], 13), expected[i]);
  // Eigen-equation in high precision.
  const auto phi = coxeter_matrix(corpus::q_prime()).phi;
  const HighPrecision rho = detail::to_high(spectral_radius(phi, 1e-30).midpoint());
  for (std::size_t i = 0; i < 4; ++i) {
    HighPrecision s = 0;
    for (std::size_t j = 0; j < 4; ++j) s += HighPrecision(phi(i, j)) * lim.p_plus[j];
    EXPECT_LT(abs(s - rho * lim.p_plus[i]), HighPrecision("1e-25"));
  }
  EXPECT_LT(lim.p_plus[0], 0);
}

TEST(NorthSouth, ThreeKroneckerClosedForm) {
  // Phi = [[8,3],[-3,-1]]: the rho-eigenvector is proportional to (3, rho - 8).
  const auto lim = ns_limit(corpus::three_kronecker());
  const double rho = (7 + 3 * std::sqrt(5.0)) / 2;
  const double x = 3, y = rho - 8, n = std::hypot(x, y);
  const double s = lim.p_plus[0] > 0 ? 1 : -1;
  EXPECT_NEAR(lim.p_plus[0].convert_to<double>(), s * x / n, 1e-14);
  EXPECT_NEAR(lim.p_plus[1].convert_to<double>(), s * y / n, 1e-14);
}

TEST(NorthSouth, NotWildForFiniteAndTame) {
  EXPECT_THROW(ns_limit(corpus::d4()), NotWild);
  EXPECT_THROW(ns_limit(corpus::kronecker()), NotWild);
  EXPECT_THROW(ns_limit(corpus::affine_d4()), NotWild);
}

TEST(Orbit, D4PeriodFour) {
  const auto t = orbit_trace(corpus::d4(), to_point({1, 1, 1, 1}), 7);
  EXPECT_FALSE(t.limit_direction);
  ASSERT_EQ(t.rows.size(), 8u);
  EXPECT_EQ(t.rows[3].exact, to_point({-4, 1, 2, 2}));
  for (std::size_t n = 4; n < 8; ++n) EXPECT_EQ(t.rows[n].exact, t.rows[n - 4].exact);
  const std::vector<double> row2{-0.1690, -0.6761, 0.5070, 0.5070};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(t.rows[2].unit[i], row2[i], 1e-4);
  for (const auto& r : t.rows) {
    double s = 0;
    for (double c : r.unit) s += c * c;
    EXPECT_NEAR(s, 1.0, 1e-15);
  }
}

TEST(Orbit, QPrimeRowSix) {
  const auto t = orbit_trace(corpus::q_prime(), to_point({1, 1, 1, 1}), 6);
  const std::vector<double> row6{-0.2995, -0.6946, -0.1547, 0.6354};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(t.rows[6].unit[i], row6[i], 1e-4);
  ASSERT_TRUE(t.limit_direction);
}

TEST(Orbit, Errors) {
  const auto cyc = ExchangeMatrix::from_arrows(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  EXPECT_THROW(orbit_trace(cyc, to_point({1, 1, 1}), 3), CyclicQuiver);
  EXPECT_THROW(orbit_trace(corpus::a2(), to_point({1, 1, 1}), 3), std::invalid_argument);
}

TEST(Orbit, WildOrbitsConvergeToTheLimits) {
  std::mt19937_64 rng(99);
  std::size_t checked = 0;
  for (const auto& e : corpus::all()) {
    if (!is_wild(e.b)) continue;
    SCOPED_TRACE(e.name);
    ++checked;
    const auto lim = ns_limit(e.b);
    for (int s = 0; s < 10; ++s) {
      TropicalPoint x;
      const int sign = s % 2 ? -1 : 1;
      for (std::size_t i = 0; i < e.b.size(); ++i) x.emplace_back(sign * static_cast<int>(1 + rng() % 100));
      for (const auto dir : {Direction::Forward, Direction::Backward}) {
        const auto& target = dir == Direction::Forward ? lim.p_plus : lim.p_minus;
        TropicalPoint cur = x;
        std::optional<std::size_t> hit;
        for (std::size_t n = 0; n <= 200 && !hit; ++n) {
          if (distance(unit_vector(cur), target) < 1e-6) hit = n;
          cur = dir == Direction::Forward ? apply_dt(e.b, cur) : apply_dt_inverse(e.b, cur);
        }
        EXPECT_TRUE(hit) << to_string(dir) << " from " << to_string(x);
      }
    }
  }
  EXPECT_GE(checked, 4u);
}
