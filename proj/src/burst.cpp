#include "binet/burst.hpp"

#include <algorithm>
#include <cmath>

#include "binet/errors.hpp"

namespace binet {

double burst_cost(std::span<const std::uint8_t> s, std::span<const double> p,
                  double q0, double q1, double beta, double epsilon) {
  if (s.size() != p.size()) {
    throw DomainError("burst_cost: state/probability length mismatch");
  }
  if (q0 <= 0.0 || q1 <= 0.0) {
    throw DomainError("burst_cost: probabilities must be positive");
  }
  const double log_q[2] = {std::log(q0), std::log(q1)};
  double cost = 0.0;
  for (std::size_t tau = 0; tau < s.size(); ++tau) {
    const double log_p = std::log(std::max(p[tau], epsilon));
    cost += std::abs(log_p - log_q[s[tau] ? 1 : 0]);
  }
  for (std::size_t tau = 0; tau + 1 < s.size(); ++tau) {
    if (s[tau] != s[tau + 1]) cost += beta;
  }
  return cost;
}

BurstSequence detect_bursts(const WordStats& stats, const BurstParams& params) {
  if (stats.p.empty()) throw DomainError("detect_bursts: empty stream");
  if (stats.q0 <= 0.0) throw DomainError("detect_bursts: q0 must be positive");
  if (params.alpha <= 1.0) throw ConfigError("alpha must exceed 1");

  const std::size_t T = stats.p.size();
  const double q0 = stats.q0;
  const double q1 = std::min(1.0, params.alpha * q0);
  const double log_q[2] = {std::log(q0), std::log(q1)};

  // Per-epoch state costs.
  std::vector<double> d0(T), d1(T);
  for (std::size_t tau = 0; tau < T; ++tau) {
    const double log_p = std::log(std::max(stats.p[tau], params.epsilon));
    d0[tau] = std::abs(log_p - log_q[0]);
    d1[tau] = std::abs(log_p - log_q[1]);
  }

  // Suffix DP: g[tau][a] = cheapest completion from tau with state a there.
  // Committing states left to right and preferring 0 on ties yields the
  // lexicographically smallest minimizer.
  std::vector<double> g0(T), g1(T);
  g0[T - 1] = d0[T - 1];
  g1[T - 1] = d1[T - 1];
  for (std::size_t tau = T - 1; tau-- > 0;) {
    g0[tau] = d0[tau] + std::min(g0[tau + 1], params.beta + g1[tau + 1]);
    g1[tau] = d1[tau] + std::min(params.beta + g0[tau + 1], g1[tau + 1]);
  }

  BurstSequence seq;
  seq.word = stats.word;
  seq.s.resize(T);
  seq.s[0] = g0[0] <= g1[0] ? 0 : 1;
  for (std::size_t tau = 1; tau < T; ++tau) {
    const double from0 = (seq.s[tau - 1] == 0 ? 0.0 : params.beta) + g0[tau];
    const double from1 = (seq.s[tau - 1] == 1 ? 0.0 : params.beta) + g1[tau];
    seq.s[tau] = from0 <= from1 ? 0 : 1;
  }
  seq.cost = burst_cost(seq.s, stats.p, q0, q1, params.beta, params.epsilon);
  return seq;
}

std::vector<BurstPeriod> extract_periods(const BurstSequence& seq) {
  std::vector<BurstPeriod> periods;
  const auto& s = seq.s;
  std::size_t tau = 0;
  while (tau < s.size()) {
    if (!s[tau]) {
      ++tau;
      continue;
    }
    std::size_t end = tau;
    while (end + 1 < s.size() && s[end + 1]) ++end;
    periods.push_back(
        BurstPeriod{static_cast<int>(tau), static_cast<int>(end)});
    tau = end + 1;
  }
  return periods;
}

}  // namespace binet
