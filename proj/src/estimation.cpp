#include "ctk/estimation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace ctk::est {

namespace {

int context_index(int setting_a, int setting_b) {
  return (setting_a - 1) * 2 + (setting_b - 1);
}

void validate_record(const ClickRecord& r, std::size_t position) {
  if (r.trial < 0) throw MalformedRecord(position, "negative trial index");
  if (r.setting_a != 1 && r.setting_a != 2)
    throw MalformedRecord(position, "setting_a must be 1 or 2");
  if (r.setting_b != 1 && r.setting_b != 2)
    throw MalformedRecord(position, "setting_b must be 1 or 2");
  try {
    Outcome check_a(r.outcome_a);
    Outcome check_b(r.outcome_b);
  } catch (const Error&) {
    throw MalformedRecord(position, "outcomes must be -1 or 1");
  }
}

}  // namespace

IngestResult ingest(const std::vector<ClickRecord>& records) {
  struct Sums {
    long n = 0;
    long sum_a = 0;
    long sum_b = 0;
    long sum_ab = 0;
  };
  std::array<Sums, 4> sums{};

  for (std::size_t k = 0; k < records.size(); ++k) {
    const ClickRecord& r = records[k];
    validate_record(r, k + 1);
    Sums& s = sums[static_cast<std::size_t>(context_index(r.setting_a, r.setting_b))];
    s.n += 1;
    s.sum_a += r.outcome_a;
    s.sum_b += r.outcome_b;
    s.sum_ab += r.outcome_a * r.outcome_b;
  }

  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      if (sums[static_cast<std::size_t>(context_index(i, j))].n == 0) throw MissingContext(i, j);

  std::array<PairwiseStats, 4> stats;
  std::array<ContextCounts, 4> counts;
  for (std::size_t c = 0; c < 4; ++c) {
    const Sums& s = sums[c];
    double n = static_cast<double>(s.n);
    stats[c] = PairwiseStats(s.sum_a / n, s.sum_b / n, s.sum_ab / n, s.n);
    // Outcomes are +-1, so the +1 count is (n + sum)/2 exactly.
    counts[c] = ContextCounts{s.n, (s.n + s.sum_a) / 2, (s.n + s.sum_b) / 2};
  }
  return IngestResult{CyclicSystem(stats[0], stats[1], stats[2], stats[3]), counts};
}

SignalingReport signaling_deltas(const CyclicSystem& system) {
  SignalingReport rep;
  rep.delta_a[0] = system.at(1, 1).mean_a - system.at(1, 2).mean_a;
  rep.delta_a[1] = system.at(2, 1).mean_a - system.at(2, 2).mean_a;
  rep.delta_b[0] = system.at(1, 1).mean_b - system.at(2, 1).mean_b;
  rep.delta_b[1] = system.at(1, 2).mean_b - system.at(2, 2).mean_b;
  rep.delta0 = 0.5 * (std::abs(rep.delta_a[0]) + std::abs(rep.delta_a[1]) +
                      std::abs(rep.delta_b[0]) + std::abs(rep.delta_b[1]));
  rep.z_scores.fill(std::numeric_limits<double>::quiet_NaN());
  rep.p_values.fill(std::numeric_limits<double>::quiet_NaN());
  return rep;
}

namespace {

/// Pooled two-proportion z; z = 0 when the proportions coincide.
double two_proportion_z(long plus1, long n1, long plus2, long n2) {
  double p1 = static_cast<double>(plus1) / static_cast<double>(n1);
  double p2 = static_cast<double>(plus2) / static_cast<double>(n2);
  if (p1 == p2) return 0.0;
  double pooled = static_cast<double>(plus1 + plus2) / static_cast<double>(n1 + n2);
  double se = std::sqrt(pooled * (1.0 - pooled) *
                        (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
  if (se == 0.0) return 0.0;
  return (p1 - p2) / se;
}

double two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

}  // namespace

SignificanceResult signaling_significance(const std::array<ContextCounts, 4>& counts) {
  for (const ContextCounts& c : counts)
    if (c.n < 2) throw InsufficientData("significance test needs >= 2 trials per context");

  // counts order: C11, C12, C21, C22. Compared pairs per observable:
  //   a1: C11 vs C12   a2: C21 vs C22   b1: C11 vs C21   b2: C12 vs C22
  SignificanceResult res;
  res.z_scores[0] = two_proportion_z(counts[0].a_plus, counts[0].n, counts[1].a_plus, counts[1].n);
  res.z_scores[1] = two_proportion_z(counts[2].a_plus, counts[2].n, counts[3].a_plus, counts[3].n);
  res.z_scores[2] = two_proportion_z(counts[0].b_plus, counts[0].n, counts[2].b_plus, counts[2].n);
  res.z_scores[3] = two_proportion_z(counts[1].b_plus, counts[1].n, counts[3].b_plus, counts[3].n);
  for (std::size_t k = 0; k < 4; ++k) res.p_values[k] = two_sided_p(res.z_scores[k]);
  return res;
}

SignalingReport signaling_report(const IngestResult& ingested) {
  SignalingReport rep = signaling_deltas(ingested.system);
  SignificanceResult sig = signaling_significance(ingested.counts);
  rep.z_scores = sig.z_scores;
  rep.p_values = sig.p_values;
  return rep;
}

CyclicSystem symmetrize_no_signaling(const IngestResult& ingested) {
  auto pooled_mean = [](const ContextCounts& c1, long plus1, const ContextCounts& c2, long plus2) {
    // mean = (2 * plus - n) / n pooled over both contexts
    double n = static_cast<double>(c1.n + c2.n);
    return (2.0 * static_cast<double>(plus1 + plus2) - n) / n;
  };
  const auto& cnt = ingested.counts;
  std::array<double, 2> mean_a = {
      pooled_mean(cnt[0], cnt[0].a_plus, cnt[1], cnt[1].a_plus),
      pooled_mean(cnt[2], cnt[2].a_plus, cnt[3], cnt[3].a_plus)};
  std::array<double, 2> mean_b = {
      pooled_mean(cnt[0], cnt[0].b_plus, cnt[2], cnt[2].b_plus),
      pooled_mean(cnt[1], cnt[1].b_plus, cnt[3], cnt[3].b_plus)};

  std::array<PairwiseStats, 4> stats;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const PairwiseStats& raw = ingested.system.at(i + 1, j + 1);
      double ma = mean_a[static_cast<std::size_t>(i)];
      double mb = mean_b[static_cast<std::size_t>(j)];
      double lo = -1.0 + std::abs(ma + mb);
      double hi = 1.0 - std::abs(ma - mb);
      double corr = std::clamp(raw.corr, lo, hi);
      stats[static_cast<std::size_t>(i * 2 + j)] = PairwiseStats(ma, mb, corr, raw.n_trials);
    }
  }
  return CyclicSystem(stats[0], stats[1], stats[2], stats[3]);
}

namespace {

long parse_long(std::string_view field, std::size_t line, const char* name) {
  long value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw MalformedRecord(line, std::string("cannot parse ") + name + " from '" +
                                    std::string(field) + "'");
  return value;
}

}  // namespace

std::vector<ClickRecord> read_click_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw MalformedRecord(1, "empty input");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw MalformedRecord(1, std::string("header must be exactly '") + kCsvHeader + "'");

  std::vector<ClickRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::array<std::string_view, 5> fields;
    std::string_view rest = line;
    for (std::size_t f = 0; f < 5; ++f) {
      std::size_t comma = rest.find(',');
      if (f < 4) {
        if (comma == std::string_view::npos)
          throw MalformedRecord(line_no, "expected 5 comma-separated fields");
        fields[f] = rest.substr(0, comma);
        rest = rest.substr(comma + 1);
      } else {
        if (comma != std::string_view::npos)
          throw MalformedRecord(line_no, "expected 5 comma-separated fields");
        fields[f] = rest;
      }
    }

    ClickRecord r;
    r.trial = parse_long(fields[0], line_no, "trial");
    r.setting_a = static_cast<int>(parse_long(fields[1], line_no, "setting_a"));
    r.setting_b = static_cast<int>(parse_long(fields[2], line_no, "setting_b"));
    r.outcome_a = static_cast<int>(parse_long(fields[3], line_no, "outcome_a"));
    r.outcome_b = static_cast<int>(parse_long(fields[4], line_no, "outcome_b"));
    validate_record(r, line_no);
    records.push_back(r);
  }
  return records;
}

std::vector<ClickRecord> read_click_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_click_csv(in);
}

void write_click_csv(std::ostream& out, const std::vector<ClickRecord>& records) {
  out << kCsvHeader << '\n';
  for (const ClickRecord& r : records)
    out << r.trial << ',' << r.setting_a << ',' << r.setting_b << ',' << r.outcome_a << ','
        << r.outcome_b << '\n';
}

}  // namespace ctk::est
