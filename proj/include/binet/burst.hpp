#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "binet/corpus.hpp"

namespace binet {

struct BurstParams {
  double alpha = 9.0;     // burst probability q1 = alpha * q0, clamped to 1
  double beta = 1.0;      // state-transition penalty
  double epsilon = 1e-9;  // probability floor inside the log
};

// Inclusive epoch interval.
struct BurstPeriod {
  int start = 0;
  int end = 0;

  bool contains(int epoch) const { return start <= epoch && epoch <= end; }
  bool overlaps(const BurstPeriod& other) const {
    return start <= other.end && other.start <= end;
  }

  auto operator<=>(const BurstPeriod&) const = default;
};

struct BurstSequence {
  std::string word;
  std::vector<std::uint8_t> s;  // binary state per epoch
  double cost = 0.0;            // optimal cost of s

  bool operator==(const BurstSequence&) const = default;
};

using BurstSeqMap = std::unordered_map<std::string, BurstSequence>;

// Cost of a state sequence: sum over epochs of |log max(p,eps) - log q(s)|
// plus beta per state transition. Natural logarithms.
double burst_cost(std::span<const std::uint8_t> s, std::span<const double> p,
                  double q0, double q1, double beta, double epsilon);

// Exact two-state DP minimizer of burst_cost; ties resolve toward the
// non-burst state, making the result the lexicographically smallest
// minimizer (0 < 1 per epoch, earlier epochs first).
BurstSequence detect_bursts(const WordStats& stats, const BurstParams& params);

// Maximal runs of consecutive 1s, in increasing start order.
std::vector<BurstPeriod> extract_periods(const BurstSequence& seq);

}  // namespace binet
