#include "teflow/returns.hpp"

#include <cmath>
#include <stdexcept>

#include "teflow/error.hpp"

namespace teflow {

ReturnSeries log_returns(std::span<const double> prices, std::size_t delta) {
  if (delta == 0) throw std::invalid_argument("return lag must be positive");
  if (prices.size() <= delta) throw InsufficientData("window too short for lag");

  std::vector<double> logs(prices.size());
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (!(prices[i] > 0.0)) throw std::domain_error("log return of a non-positive price");
    logs[i] = std::log(prices[i]);
  }

  ReturnSeries out{{}, delta, prices.size()};
  out.values.resize(prices.size() - delta);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = logs[i + delta] - logs[i];
  return out;
}

}  // namespace teflow
