#pragma once

namespace rsp {

/// Prices posted by a provider and its rival on one origin-destination pair,
/// both bounded by the market price cap.
struct PricePair {
  double own = 0.0;
  double rival = 0.0;
  double p_max = 1.0;
};

/// Demand captured by a provider: max{D*(1/2 - own/p_max + rival/(2 p_max)), 0}.
/// Clipping is exact; no epsilon is involved.
double duopoly_demand(double base, const PricePair& prices);

/// The unclipped affine expression behind duopoly_demand; may be negative.
double linear_demand(double base, const PricePair& prices);

/// Smallest own price at which the captured demand hits zero given the rival
/// price: p_max/2 + rival/2.
double zero_demand_threshold(double rival_price, double p_max);

/// Price a provider with zero demand posts to deter its rival. Numerically
/// identical to zero_demand_threshold; kept as its own name because it is the
/// deterrence behaviour, not just a boundary.
double deterrence_price(double rival_price, double p_max);

/// Customers served by the two providers combined,
/// D*(1 - own/(2 p_max) - rival/(2 p_max)).
/// Only defined while both captured demands are strictly positive.
double total_served(double base, const PricePair& prices);

/// Single-provider demand D*(1 - p/p_max).
double monopoly_demand(double base, double price, double p_max);

}  // namespace rsp
