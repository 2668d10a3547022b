#include "ctk/probability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ctk {

namespace {
constexpr double kClipTol = 1e-12;      // entries above -kClipTol are clipped to 0
constexpr double kNormTol = 1e-9;       // allowed deviation of the entry sum from 1
constexpr double kCellTol = 1e-9;       // allowed cell negativity in PairwiseStats
}  // namespace

JointDistribution::JointDistribution(int arity, std::vector<double> probs)
    : arity_(arity), probs_(std::move(probs)) {
  if (arity_ < 1 || arity_ > 30) throw InvalidDistribution("arity out of range");
  if (probs_.size() != (std::size_t{1} << arity_))
    throw InvalidDistribution("probability vector has " + std::to_string(probs_.size()) +
                              " entries, expected 2^" + std::to_string(arity_));
  double sum = 0.0;
  for (double& p : probs_) {
    if (!std::isfinite(p)) throw InvalidDistribution("non-finite probability entry");
    if (p < -kClipTol)
      throw InvalidDistribution("negative probability entry " + std::to_string(p));
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormTol)
    throw InvalidDistribution("entries sum to " + std::to_string(sum) + ", expected 1");
  for (double& p : probs_) p /= sum;
}

JointDistribution JointDistribution::uniform(int arity) {
  if (arity < 1 || arity > 30) throw InvalidDistribution("arity out of range");
  std::size_t n = std::size_t{1} << arity;
  return JointDistribution(arity, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

JointDistribution JointDistribution::point_mass(const std::vector<int>& outcomes) {
  int arity = static_cast<int>(outcomes.size());
  if (arity < 1 || arity > 30) throw InvalidDistribution("arity out of range");
  std::size_t atom = 0;
  for (int v : outcomes) {
    if (v != -1 && v != +1) throw InvalidDistribution("outcomes must be -1 or +1");
    atom = (atom << 1) | (v == +1 ? 1u : 0u);
  }
  std::vector<double> p(std::size_t{1} << arity, 0.0);
  p[atom] = 1.0;
  return JointDistribution(arity, std::move(p));
}

PairwiseStats::PairwiseStats(double ma, double mb, double c, long n)
    : mean_a(ma), mean_b(mb), corr(c), n_trials(n) {
  if (!std::isfinite(ma) || !std::isfinite(mb) || !std::isfinite(c))
    throw InvalidStats("non-finite moment");
  if (std::abs(ma) > 1.0 + kCellTol || std::abs(mb) > 1.0 + kCellTol ||
      std::abs(c) > 1.0 + kCellTol)
    throw InvalidStats("moment outside [-1, 1]");
  if (n < 0) throw InvalidStats("negative trial count");
  if (min_cell() < -kCellTol)
    throw InvalidStats("moments admit no joint distribution (cell " +
                       std::to_string(min_cell()) + ")");
}

double PairwiseStats::min_cell() const {
  double m = 1.0;
  for (int a : {-1, +1})
    for (int b : {-1, +1})
      m = std::min(m, (1.0 + a * mean_a + b * mean_b + a * b * corr) / 4.0);
  return m;
}

JointDistribution cells_from_stats(const PairwiseStats& stats) {
  std::vector<double> cells(4);
  // Atom order (-1,-1), (-1,+1), (+1,-1), (+1,+1).
  int idx = 0;
  for (int a : {-1, +1}) {
    for (int b : {-1, +1}) {
      double p = (1.0 + a * stats.mean_a + b * stats.mean_b + a * b * stats.corr) / 4.0;
      if (p < -kCellTol) throw InvalidStats("cell " + std::to_string(p) + " below -1e-9");
      cells[static_cast<std::size_t>(idx++)] = std::max(p, 0.0);
    }
  }
  return JointDistribution(2, std::move(cells));
}

PairwiseStats moments_from_cells(const JointDistribution& dist) {
  if (dist.arity() != 2) throw DimensionMismatch("moments_from_cells expects arity 2");
  double ma = 0.0, mb = 0.0, c = 0.0;
  for (std::size_t atom = 0; atom < dist.size(); ++atom) {
    int a = dist.sign(atom, 0);
    int b = dist.sign(atom, 1);
    double p = dist.prob(atom);
    ma += a * p;
    mb += b * p;
    c += a * b * p;
  }
  return PairwiseStats(ma, mb, c, 0);
}

JointDistribution marginal(const JointDistribution& dist, const std::vector<int>& keep) {
  if (keep.empty()) throw EmptyKeepSet("marginal requires a nonempty keep set");
  std::vector<int> vars = keep;
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  for (int v : vars)
    if (v < 0 || v >= dist.arity()) throw Error("keep index out of range");

  int out_arity = static_cast<int>(vars.size());
  std::vector<double> out(std::size_t{1} << out_arity, 0.0);
  for (std::size_t atom = 0; atom < dist.size(); ++atom) {
    std::size_t target = 0;
    for (int v : vars) target = (target << 1) | ((atom >> (dist.arity() - 1 - v)) & 1u);
    out[target] += dist.prob(atom);
  }
  return JointDistribution(out_arity, std::move(out));
}

}  // namespace ctk
