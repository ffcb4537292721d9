#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "maxbandit/synthetic.hpp"

using namespace maxbandit;

TEST_CASE("benchmark problems") {
  const auto easy = make_problem(ProblemName::easy);
  REQUIRE(easy.arms.size() == 3);
  CHECK(easy.arms[2].mean == -1.0);
  CHECK(easy.arms[2].stddev == 3.0);
  CHECK(easy.optimal_arm == 2);
  CHECK(make_problem(ProblemName::difficult).optimal_arm == 0);
  CHECK(make_problem(ProblemName::difficult).arms[2].stddev == 1.2);
  CHECK(make_problem(ProblemName::unfavorable).optimal_arm == 0);
  for (auto p : {ProblemName::easy, ProblemName::difficult, ProblemName::unfavorable}) {
    CHECK(parse_problem(problem_name(p)) == p);
  }
  CHECK_THROWS(parse_problem("hard"));
}

TEST_CASE("episodes are reproducible and the running max is monotone") {
  const auto problem = make_problem(ProblemName::easy);
  for (auto kind : kAllPolicies) {
    const auto config = PolicyConfig::defaults(kind);
    const auto a = run_episode(problem, config, 400, 77);
    const auto b = run_episode(problem, config, 400, 77);
    CHECK(a.arms == b.arms);
    CHECK(a.rewards == b.rewards);
    REQUIRE(a.size() == 400);
    for (std::size_t t = 0; t < a.size(); ++t) {
      const double prev = t == 0 ? -INFINITY : a.running_max[t - 1];
      CHECK(a.running_max[t] == std::max(prev, a.rewards[t]));
      CHECK(a.arms[t] >= 0);
      CHECK(a.arms[t] < 3);
    }
    const auto c = run_episode(problem, config, 400, 78);
    CHECK(c.rewards != a.rewards);
  }
}

TEST_CASE("seed derivation separates runs") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 9) == derive_seed(5, 9));
  auto a = make_rng(3, 0);
  auto b = make_rng(3, 1);
  CHECK(a() != b());
}

TEST_CASE("aggregation statistics") {
  RunTrajectory r1, r2, r3;
  r1.push(0, 1.0);
  r1.push(1, 0.0);
  r2.push(1, 3.0);
  r2.push(1, 4.0);
  r3.push(0, 2.0);
  r3.push(0, 5.0);
  std::vector<RunTrajectory> runs{r1, r2, r3};
  const auto s = aggregate(runs, 0);
  CHECK(s.max_mean[0] == doctest::Approx(2.0));
  CHECK(s.max_stderr[0] == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(s.max_mean[1] == doctest::Approx((1.0 + 4.0 + 5.0) / 3));
  CHECK(s.opt_ratio[0] == doctest::Approx(2.0 / 3));
  CHECK(s.opt_ratio[1] == doctest::Approx(1.0 / 3));
  CHECK_FALSE(s.has_quantiles());

  const auto none = aggregate(runs, std::nullopt);
  CHECK(std::isnan(none.opt_ratio[0]));

  const auto med = aggregate(runs, 0, Aggregation::median_quantile);
  REQUIRE(med.has_quantiles());
  CHECK(med.max_median[1] == 4.0);
  CHECK(med.max_q25[1] == doctest::Approx(2.5));
  CHECK(med.max_q75[1] == doctest::Approx(4.5));

  CHECK_THROWS(aggregate(std::vector<RunTrajectory>{}, 0));
  RunTrajectory short_run;
  short_run.push(0, 1.0);
  CHECK_THROWS(aggregate(std::vector<RunTrajectory>{r1, short_run}, 0));
}

TEST_CASE("property: aggregation is invariant to run order") {
  const auto problem = make_problem(ProblemName::difficult);
  std::vector<RunTrajectory> runs;
  for (std::uint64_t i = 0; i < 12; ++i) {
    runs.push_back(run_episode(problem, PolicyConfig::defaults(PolicyKind::ucb), 200, derive_seed(1, i)));
  }
  const auto base = aggregate(runs, 0);
  const auto base_q = aggregate(runs, 0, Aggregation::median_quantile);
  std::mt19937_64 g(3);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(runs.begin(), runs.end(), g);
    const auto s = aggregate(runs, 0);
    CHECK(s.max_mean == base.max_mean);
    CHECK(s.max_stderr == base.max_stderr);
    CHECK(s.opt_ratio == base.opt_ratio);
    CHECK(aggregate(runs, 0, Aggregation::median_quantile).max_q75 == base_q.max_q75);
  }
}

TEST_CASE("quantile and smoothing") {
  CHECK(quantile({1, 2, 3, 4}, 0.5) == 2.5);
  CHECK(quantile({4, 1, 3, 2}, 0.25) == doctest::Approx(1.75));
  CHECK(quantile({7}, 0.9) == 7);
  const std::vector<double> x{1, 2, 3, 4, 5};
  const auto sm = smooth(x, 2);
  CHECK(sm[0] == 1.0);
  CHECK(sm[1] == 1.5);
  CHECK(sm[4] == 4.5);
  CHECK(parse_aggregation(aggregation_name(Aggregation::median_quantile)) == Aggregation::median_quantile);
}
