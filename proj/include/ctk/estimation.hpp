#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "ctk/probability.hpp"

namespace ctk::est {

/// One recorded trial: the chosen settings pair and the outcome pair.
struct ClickRecord {
  long trial = 0;
  int setting_a = 1;  // 1 or 2
  int setting_b = 1;  // 1 or 2
  int outcome_a = 1;  // -1 or +1
  int outcome_b = 1;  // -1 or +1
};

/// Per-context tallies kept alongside the estimated stats; +1 counts feed the
/// two-proportion significance test.
struct ContextCounts {
  long n = 0;
  long a_plus = 0;
  long b_plus = 0;
};

struct IngestResult {
  CyclicSystem system;
  std::array<ContextCounts, 4> counts;  // order C11, C12, C21, C22
};

/// Folds records into per-context empirical means and correlations (plug-in
/// estimators). Throws MalformedRecord (with the 1-based record position) on
/// invalid fields and MissingContext when a context has no records.
/// The fold is order-independent, so partitioned ingestion merges cleanly.
IngestResult ingest(const std::vector<ClickRecord>& records);

/// Marginal-inconsistency measure. delta_a[i] is the mean of a_{i+1} in
/// context (i+1, 1) minus context (i+1, 2); delta_b[j] compares contexts
/// (1, j+1) and (2, j+1). delta0 = (sum of absolute deltas) / 2. z/p entries
/// are ordered a1, a2, b1, b2 and are NaN until significance is computed.
struct SignalingReport {
  std::array<double, 2> delta_a{};
  std::array<double, 2> delta_b{};
  double delta0 = 0.0;
  std::array<double, 4> z_scores{};
  std::array<double, 4> p_values{};
};

/// Deltas and delta0 only (works for analytic systems; z/p stay NaN).
SignalingReport signaling_deltas(const CyclicSystem& system);

/// Pooled two-proportion z-test per observable across the two contexts it
/// appears in, two-sided p-values from the normal approximation. Requires at
/// least 2 trials in every context (InsufficientData otherwise).
struct SignificanceResult {
  std::array<double, 4> z_scores{};
  std::array<double, 4> p_values{};
};
SignificanceResult signaling_significance(const std::array<ContextCounts, 4>& counts);

/// Deltas plus significance in one report.
SignalingReport signaling_report(const IngestResult& ingested);

/// Projects empirical stats onto the no-signaling manifold: each observable's
/// marginal is pooled (trial-weighted) across its two contexts and each
/// context's correlation is clamped into the interval the pooled means admit.
/// Used before the JPD oracle when observed signaling is not significant.
CyclicSystem symmetrize_no_signaling(const IngestResult& ingested);

inline constexpr const char* kCsvHeader = "trial,setting_a,setting_b,outcome_a,outcome_b";

/// Strict CSV reader for the header above; outcomes are written 1 / -1.
/// Throws MalformedRecord with the offending 1-based line number.
std::vector<ClickRecord> read_click_csv(std::istream& in);
std::vector<ClickRecord> read_click_csv_file(const std::string& path);

void write_click_csv(std::ostream& out, const std::vector<ClickRecord>& records);

}  // namespace ctk::est
