#pragma once

#include <string>

#include "iknap/model.hpp"
#include "iknap/rational.hpp"

namespace iknap {

/// Instance shapes for the experiment suites and the gen command. Every
/// field that is a range is drawn uniformly (inclusive) from the seeded
/// stream, in declaration order, so one seed pins one instance exactly.
struct IikGenParams {
  int n_lo = 3;
  int n_hi = 8;
  int t_lo = 2;
  int t_hi = 4;
  long weight_lo = 1;
  long weight_hi = 20;
  long profit_num_hi = 48;  // profits a/b with a in [1, num_hi], b in [1, den_hi]
  long profit_den_hi = 16;
  std::string capacity_profile = "random";  // or "linear"
  int mult_hi = 1;   // > 1 adds copy counts d_i in [1, mult_hi]
  int delta_hi = 1;  // > 1 adds nondecreasing discounts in [1, delta_hi]
};

IikInstance gen_iik(unsigned long long seed, const IikGenParams& params);

/// Min-knapsack instances come out normalized: costs nonincreasing with
/// cost[0] = 1. cost_levels > 0 draws every cost from that many exact power
/// levels (1+eps)^{-e} with e = 0 among them, the shape the stair-vector
/// pruning exploits.
struct MinkGenParams {
  int n_lo = 3;
  int n_hi = 10;
  long weight_lo = 1;
  long weight_hi = 15;
  long cost_den_hi = 60;  // random mode: costs a/b <= 1
  int cost_levels = 0;
  Rational eps = Rational(1, 4);  // level base for cost_levels mode
  int demand_pct_lo = 30;         // demand as a percentage of total weight
  int demand_pct_hi = 90;
};

MinkInstance gen_mink(unsigned long long seed, const MinkGenParams& params);

}  // namespace iknap
