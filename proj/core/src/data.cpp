#include "rmtl/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace rmtl {

std::string_view to_string(EventCode code) {
  switch (code) {
    case EventCode::Censored: return "censored";
    case EventCode::Interest: return "interest";
    case EventCode::Competing: return "competing";
  }
  return "unknown";
}

TwoGroupSample::TwoGroupSample(std::vector<SubjectRecord> records,
                               std::optional<std::string> reference)
    : records_(std::move(records)) {
  std::vector<std::string> seen;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (!std::isfinite(r.time) || r.time < 0.0) {
      throw DataError("record " + std::to_string(i + 1) +
                      ": time must be finite and nonnegative");
    }
    if (std::find(seen.begin(), seen.end(), r.group) == seen.end()) {
      seen.push_back(r.group);
    }
  }
  if (seen.size() != 2) {
    throw DataError("exactly two groups required, found " + std::to_string(seen.size()));
  }
  labels_ = {seen[0], seen[1]};
  if (reference) {
    if (*reference == labels_[1]) {
      std::swap(labels_[0], labels_[1]);
    } else if (*reference != labels_[0]) {
      throw UsageError("reference group '" + *reference + "' not present in data");
    }
  }
  for (const auto& r : records_) {
    ++counts_[r.group == labels_[0] ? 0 : 1];
  }
}

std::vector<SubjectRecord> TwoGroupSample::group(std::size_t k) const {
  const auto& label = labels_.at(k);
  std::vector<SubjectRecord> out;
  out.reserve(counts_[k]);
  for (const auto& r : records_) {
    if (r.group == label) out.push_back(r);
  }
  return out;
}

TwoGroupSample TwoGroupSample::swapped() const {
  return TwoGroupSample(records_, labels_[1]);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

std::string row_prefix(std::size_t row) { return "row " + std::to_string(row) + ": "; }

}  // namespace

TwoGroupSample parse_dataset(std::string_view text, std::optional<std::string> reference) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto pos = text.find('\n', start);
      if (pos == std::string_view::npos) pos = text.size();
      lines.push_back(text.substr(start, pos - start));
      start = pos + 1;
    }
  }
  // Skip a UTF-8 byte order mark and leading blank lines.
  std::size_t first = 0;
  if (!lines.empty() && lines[0].substr(0, 3) == "\xEF\xBB\xBF") lines[0].remove_prefix(3);
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  if (first == lines.size()) throw DataError("empty dataset: header row required");

  const std::string_view header = lines[first];
  const char delim = header.find('\t') != std::string_view::npos &&
                             header.find(',') == std::string_view::npos
                         ? '\t'
                         : ',';
  const auto columns = split(header, delim);
  auto column_index = [&](std::string_view name) -> std::size_t {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) {
        if (found) throw DataError("header: duplicate column '" + std::string(name) + "'");
        found = i;
      }
    }
    if (!found) throw DataError("header: missing required column '" + std::string(name) + "'");
    return *found;
  };
  const auto time_col = column_index("time");
  const auto status_col = column_index("status");
  const auto group_col = column_index("group");
  const auto needed = std::max({time_col, status_col, group_col}) + 1;

  std::vector<SubjectRecord> records;
  std::size_t row = 0;
  for (std::size_t li = first + 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    ++row;
    const auto fields = split(lines[li], delim);
    if (fields.size() < needed) {
      throw DataError(row_prefix(row) + "expected at least " + std::to_string(needed) +
                      " fields, found " + std::to_string(fields.size()));
    }
    SubjectRecord rec;

    const auto tf = fields[time_col];
    const auto* tend = tf.data() + tf.size();
    auto [tp, terr] = std::from_chars(tf.data(), tend, rec.time);
    if (terr != std::errc() || tp != tend || tf.empty()) {
      throw DataError(row_prefix(row) + "cannot parse time '" + std::string(tf) + "'");
    }
    if (!std::isfinite(rec.time)) throw DataError(row_prefix(row) + "non-finite time");
    if (rec.time < 0.0) throw DataError(row_prefix(row) + "negative time");

    const auto sf = fields[status_col];
    int status = -1;
    const auto* send = sf.data() + sf.size();
    auto [sp, serr] = std::from_chars(sf.data(), send, status);
    if (serr != std::errc() || sp != send || sf.empty()) {
      throw DataError(row_prefix(row) + "cannot parse status '" + std::string(sf) + "'");
    }
    if (status < 0 || status > 2) {
      throw DataError(row_prefix(row) + "unknown status code " + std::to_string(status) +
                      " (expected 0, 1 or 2)");
    }
    rec.event = static_cast<EventCode>(status);

    rec.group = std::string(fields[group_col]);
    if (rec.group.empty()) throw DataError(row_prefix(row) + "empty group label");
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw DataError("dataset has a header but no data rows");
  return TwoGroupSample(std::move(records), std::move(reference));
}

TwoGroupSample read_dataset(const std::string& path, std::optional<std::string> reference) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), std::move(reference));
}

int RiskTable::events(EventCode cause) const {
  int total_events = 0;
  for (const auto& r : rows) {
    if (cause == EventCode::Interest) total_events += r.interest;
    else if (cause == EventCode::Competing) total_events += r.competing;
  }
  return cause == EventCode::Censored ? censored : total_events;
}

RiskTable build_risk_table(std::span<const SubjectRecord> records) {
  if (records.empty()) throw DataError("risk table requires at least one record");

  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].time < records[b].time;
  });

  RiskTable table;
  table.total = static_cast<int>(records.size());
  table.last_observed = records[order.back()].time;

  int remaining = table.total;
  std::size_t i = 0;
  while (i < order.size()) {
    const double t = records[order[i]].time;
    RiskRow row{t, remaining, 0, 0};
    int censored = 0;
    for (; i < order.size() && records[order[i]].time == t; ++i) {
      switch (records[order[i]].event) {
        case EventCode::Interest: ++row.interest; break;
        case EventCode::Competing: ++row.competing; break;
        case EventCode::Censored: ++censored; break;
      }
    }
    if (row.events() > 0) {
      table.rows.push_back(row);
      if (row.interest > 0) table.last_interest = t;
    }
    table.censored += censored;
    remaining -= row.events() + censored;
  }
  return table;
}

}  // namespace rmtl
