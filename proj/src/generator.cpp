#include "iknap/generator.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "iknap/mink.hpp"

namespace iknap {

namespace {

// mt19937_64 output is pinned by the standard, so draws are reproducible
// across platforms; modulo bias is irrelevant at these spans.
long draw(std::mt19937_64& rng, long lo, long hi) {
  detail::require(lo <= hi, "empty draw range");
  return lo + static_cast<long>(rng() %
                                static_cast<unsigned long long>(hi - lo + 1));
}

}  // namespace

IikInstance gen_iik(unsigned long long seed, const IikGenParams& params) {
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(draw(rng, params.n_lo, params.n_hi));
  const int T = static_cast<int>(draw(rng, params.t_lo, params.t_hi));
  detail::require(params.weight_lo >= 1, "weights must stay positive");

  std::vector<Rational> profits, weights;
  Rational total_weight(0);
  for (int i = 0; i < n; ++i) {
    profits.emplace_back(draw(rng, 1, params.profit_num_hi),
                         draw(rng, 1, params.profit_den_hi));
    weights.emplace_back(draw(rng, params.weight_lo, params.weight_hi));
    total_weight += weights.back();
  }

  // Final capacity lands in [40%, 100%] of the total weight so a nontrivial
  // subset fits; earlier capacities grow toward it per the profile.
  Rational b_final = total_weight * Rational(draw(rng, 40, 100), 100);
  if (b_final < 1) b_final = 1;
  std::vector<Rational> capacities(T);
  capacities[T - 1] = b_final;
  if (params.capacity_profile == "linear") {
    for (int t = 0; t < T - 1; ++t) {
      capacities[t] = b_final * Rational(t + 1, T);
    }
  } else {
    detail::require(params.capacity_profile == "random",
                    "capacity profile must be 'random' or 'linear'");
    std::vector<Rational> cuts;
    for (int t = 0; t < T - 1; ++t) {
      cuts.push_back(b_final * Rational(draw(rng, 1, 100), 100));
    }
    std::sort(cuts.begin(), cuts.end());
    for (int t = 0; t < T - 1; ++t) capacities[t] = cuts[t];
  }

  std::vector<Integer> discounts;
  if (params.delta_hi > 1) {
    std::vector<long> ds;
    for (int t = 0; t < T; ++t) ds.push_back(draw(rng, 1, params.delta_hi));
    std::sort(ds.begin(), ds.end());
    for (long d : ds) discounts.emplace_back(d);
  }
  std::vector<std::optional<Integer>> mults;
  if (params.mult_hi > 1) {
    for (int i = 0; i < n; ++i) {
      mults.emplace_back(Integer(draw(rng, 1, params.mult_hi)));
    }
  }
  return IikInstance::validated(std::move(profits), std::move(weights),
                                std::move(capacities), std::move(discounts),
                                std::move(mults));
}

MinkInstance gen_mink(unsigned long long seed, const MinkGenParams& params) {
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(draw(rng, params.n_lo, params.n_hi));

  std::vector<Rational> costs;
  if (params.cost_levels > 0) {
    // Distinct exponents with 0 always present; a few reach past c_eps so
    // deep-tail items occur.
    const int e_hi = c_eps(params.eps) + 4;
    detail::require(params.cost_levels <= e_hi + 1,
                    "more cost levels than distinct exponents");
    std::vector<int> exps{0};
    while (static_cast<int>(exps.size()) < params.cost_levels) {
      int e = static_cast<int>(draw(rng, 1, e_hi));
      if (std::find(exps.begin(), exps.end(), e) == exps.end()) {
        exps.push_back(e);
      }
    }
    costs.push_back(Rational(1));  // the pivot level is always occupied
    for (int i = 1; i < n; ++i) {
      int e = exps[draw(rng, 0, static_cast<long>(exps.size()) - 1)];
      costs.push_back(pow_rational(1 + params.eps, -e));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      long den = draw(rng, 1, params.cost_den_hi);
      costs.emplace_back(draw(rng, 1, den), den);
    }
  }
  std::sort(costs.begin(), costs.end(), std::greater<Rational>());
  costs[0] = 1;

  std::vector<Rational> weights;
  Rational total_weight(0);
  for (int i = 0; i < n; ++i) {
    weights.emplace_back(draw(rng, params.weight_lo, params.weight_hi));
    total_weight += weights.back();
  }
  Rational demand = total_weight *
                    Rational(draw(rng, params.demand_pct_lo,
                                  params.demand_pct_hi),
                             100);
  if (demand <= 0) demand = 1;
  return MinkInstance::validated(std::move(costs), std::move(weights),
                                 std::move(demand));
}

}  // namespace iknap
