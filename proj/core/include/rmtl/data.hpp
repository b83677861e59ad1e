#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rmtl/common.hpp"

namespace rmtl {

/// Observation outcome.  Interest is cause 1, Competing is cause 2.
enum class EventCode : int { Censored = 0, Interest = 1, Competing = 2 };

std::string_view to_string(EventCode code);

/// One subject: observed time min(T, C), outcome, and group label.
struct SubjectRecord {
  double time = 0.0;
  EventCode event = EventCode::Censored;
  std::string group;
};

/// A validated sample with exactly two non-empty groups.
///
/// Group order is the first-seen order of labels unless a reference label is
/// given, in which case the reference becomes group 1 (index 0).  Between-group
/// differences are always group 2 minus group 1.
class TwoGroupSample {
public:
  explicit TwoGroupSample(std::vector<SubjectRecord> records,
                          std::optional<std::string> reference = std::nullopt);

  const std::vector<SubjectRecord>& records() const noexcept { return records_; }
  const std::array<std::string, 2>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t k) const { return labels_.at(k); }
  std::size_t size(std::size_t k) const { return counts_.at(k); }

  /// Records belonging to group k (0 or 1), input order preserved.
  std::vector<SubjectRecord> group(std::size_t k) const;

  /// Same records with the two groups exchanged.
  TwoGroupSample swapped() const;

private:
  std::vector<SubjectRecord> records_;
  std::array<std::string, 2> labels_;
  std::array<std::size_t, 2> counts_{};
};

/// Parses a delimited table with columns time,status,group (any order, extra
/// columns ignored).  Comma is the default delimiter; tab-separated input is
/// detected from the header line.  Row indices in messages count data rows
/// from 1.
TwoGroupSample parse_dataset(std::string_view text,
                             std::optional<std::string> reference = std::nullopt);

TwoGroupSample read_dataset(const std::string& path,
                            std::optional<std::string> reference = std::nullopt);

struct RiskRow {
  double time = 0.0;
  int at_risk = 0;
  int interest = 0;
  int competing = 0;

  int events() const noexcept { return interest + competing; }
};

/// Distinct event times with at-risk and per-cause counts.
struct RiskTable {
  std::vector<RiskRow> rows;
  int censored = 0;
  int total = 0;
  double last_observed = 0.0;  // largest observed time, event or censoring
  std::optional<double> last_interest;  // largest Interest event time

  int events(EventCode cause) const;
};

/// Builds the risk table.  Events at time t precede censorings at t, so
/// subjects censored at t are counted at risk for events at t.
RiskTable build_risk_table(std::span<const SubjectRecord> records);

}  // namespace rmtl
