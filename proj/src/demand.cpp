#include "rspgame/demand.hpp"

#include <algorithm>
#include <stdexcept>

namespace rsp {
namespace {

void check_prices(const PricePair& prices) {
  if (prices.p_max <= 0.0) throw std::invalid_argument("p_max must be positive");
  if (prices.own < 0.0 || prices.own > prices.p_max)
    throw std::invalid_argument("own price outside [0, p_max]");
  if (prices.rival < 0.0 || prices.rival > prices.p_max)
    throw std::invalid_argument("rival price outside [0, p_max]");
}

void check_base(double base) {
  if (base < 0.0) throw std::invalid_argument("base demand must be nonnegative");
}

}  // namespace

double linear_demand(double base, const PricePair& prices) {
  check_base(base);
  check_prices(prices);
  return base * (0.5 - prices.own / prices.p_max + prices.rival / (2.0 * prices.p_max));
}

double duopoly_demand(double base, const PricePair& prices) {
  return std::max(linear_demand(base, prices), 0.0);
}

double zero_demand_threshold(double rival_price, double p_max) {
  return 0.5 * p_max + 0.5 * rival_price;
}

double deterrence_price(double rival_price, double p_max) {
  return zero_demand_threshold(rival_price, p_max);
}

double total_served(double base, const PricePair& prices) {
  if (duopoly_demand(base, prices) <= 0.0 ||
      duopoly_demand(base, PricePair{prices.rival, prices.own, prices.p_max}) <= 0.0)
    throw std::invalid_argument("total_served requires both captured demands positive");
  return base * (1.0 - prices.own / (2.0 * prices.p_max) - prices.rival / (2.0 * prices.p_max));
}

double monopoly_demand(double base, double price, double p_max) {
  check_base(base);
  if (p_max <= 0.0) throw std::invalid_argument("p_max must be positive");
  if (price < 0.0 || price > p_max) throw std::invalid_argument("price outside [0, p_max]");
  return base * (1.0 - price / p_max);
}

}  // namespace rsp
