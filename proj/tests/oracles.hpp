// Independent reference implementations used to freeze expected values.
// These deliberately avoid the library's implementation paths: exhaustive
// search instead of DP, full-matrix recursions instead of rolling rows,
// linear scans instead of interval indexes.
#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "binet/binet.hpp"
#include "binet/burst.hpp"
#include "binet/text.hpp"

namespace oracles {

struct BruteBurst {
  std::vector<std::uint8_t> s;
  double cost = std::numeric_limits<double>::infinity();
  bool unique_within_margin = true;  // no second sequence within 1e-12
};

// Exhaustive minimum of burst_cost over all 2^T sequences, visited in
// lexicographic order (epoch 0 most significant) so the first minimizer is
// the canonical tie-break (prefer 0).
inline BruteBurst brute_force_burst(const std::vector<double>& p, double q0,
                                    double q1, double beta, double epsilon) {
  const std::size_t T = p.size();
  BruteBurst best;
  std::vector<std::uint8_t> s(T, 0);
  for (std::uint64_t code = 0; code < (1ull << T); ++code) {
    for (std::size_t tau = 0; tau < T; ++tau) {
      s[tau] = (code >> (T - 1 - tau)) & 1;
    }
    const double cost = binet::burst_cost(s, p, q0, q1, beta, epsilon);
    if (cost < best.cost - 1e-12) {
      best.s = s;
      best.cost = cost;
      best.unique_within_margin = true;
    } else if (cost < best.cost + 1e-12) {
      if (s != best.s) best.unique_within_margin = false;
      if (cost < best.cost) best.cost = cost;
    }
  }
  return best;
}

// Textbook full-matrix Levenshtein over code points.
inline std::int64_t reference_levenshtein(std::string_view a,
                                          std::string_view b) {
  const auto ca = binet::utf8_codepoints(a);
  const auto cb = binet::utf8_codepoints(b);
  const std::size_t m = ca.size(), n = cb.size();
  std::vector<std::vector<std::int64_t>> d(m + 1,
                                           std::vector<std::int64_t>(n + 1));
  for (std::size_t i = 0; i <= m; ++i) d[i][0] = static_cast<std::int64_t>(i);
  for (std::size_t j = 0; j <= n; ++j) d[0][j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const std::int64_t del = d[i - 1][j] + 1;
      const std::int64_t ins = d[i][j - 1] + 1;
      const std::int64_t sub =
          d[i - 1][j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
      d[i][j] = std::min(std::min(del, ins), sub);
    }
  }
  return d[m][n];
}

// Full-matrix longest common subsequence over code points.
inline std::int64_t reference_lcs(std::string_view a, std::string_view b) {
  const auto ca = binet::utf8_codepoints(a);
  const auto cb = binet::utf8_codepoints(b);
  const std::size_t m = ca.size(), n = cb.size();
  std::vector<std::vector<std::int64_t>> d(m + 1,
                                           std::vector<std::int64_t>(n + 1, 0));
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      d[i][j] = ca[i - 1] == cb[j - 1]
                    ? d[i - 1][j - 1] + 1
                    : std::max(d[i - 1][j], d[i][j - 1]);
    }
  }
  return d[m][n];
}

// Linear scan over every target node: the candidate set is exactly the
// nodes whose period intersects c's period.
inline std::vector<binet::NodeId> brute_force_candidates(
    const binet::BINet& target_net, const binet::BurstPeriod& period) {
  std::vector<binet::NodeId> out;
  for (binet::NodeId e = 0; e < target_net.node_count(); ++e) {
    if (target_net.node(e).period.overlaps(period)) out.push_back(e);
  }
  return out;
}

}  // namespace oracles
