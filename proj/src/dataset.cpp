#include "survsplit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace survsplit {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* buf, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(buf);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a_doubles(std::uint64_t h, const std::vector<double>& v) {
  return fnv1a(h, v.data(), v.size() * sizeof(double));
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col,
                  const std::string& name) {
  const char* s = cell.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  while (end && *end == ' ') ++end;
  if (cell.empty() || end == s || *end != '\0' || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << "non-numeric or missing value '" << cell << "' at row " << row
        << ", column '" << name << "' (index " << col << ")";
    throw ParseError(msg.str());
  }
  return v;
}

}  // namespace

SurvivalDataset::SurvivalDataset(std::vector<std::vector<double>> covariate_columns,
                                 std::vector<std::string> covariate_names,
                                 std::vector<double> times,
                                 std::vector<std::uint8_t> events,
                                 std::string time_name, std::string event_name)
    : columns_(std::move(covariate_columns)),
      names_(std::move(covariate_names)),
      times_(std::move(times)),
      events_(std::move(events)),
      time_name_(std::move(time_name)),
      event_name_(std::move(event_name)) {
  const std::size_t n = times_.size();
  if (n == 0) throw SchemaError("dataset must contain at least one sample");
  if (columns_.empty()) throw SchemaError("dataset must contain at least one covariate");
  if (events_.size() != n) throw SchemaError("times/events length mismatch");
  if (names_.size() != columns_.size())
    throw SchemaError("covariate name/column count mismatch");
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j].size() != n)
      throw SchemaError("covariate column length mismatch: " + names_[j]);
    for (double v : columns_[j]) {
      if (!std::isfinite(v))
        throw ParseError("non-finite covariate value in column " + names_[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(times_[i] >= 0.0) || !std::isfinite(times_[i]))
      throw ParseError("times must be finite and >= 0");
    if (events_[i] > 1) throw ParseError("event values must be 0 or 1");
    num_events_ += events_[i];
  }

  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::uint64_t shape[2] = {n, columns_.size()};
  h = fnv1a(h, shape, sizeof(shape));
  for (const auto& col : columns_) h = fnv1a_doubles(h, col);
  h = fnv1a_doubles(h, times_);
  h = fnv1a(h, events_.data(), events_.size());
  fingerprint_ = h;
}

std::vector<double> SurvivalDataset::row(std::size_t i) const {
  std::vector<double> out(num_features());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = columns_[j][i];
  return out;
}

NodeView::NodeView(const SurvivalDataset& d, std::vector<int> idx)
    : data(&d), indices(std::move(idx)) {
  std::vector<bool> seen(d.num_samples(), false);
  for (int i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= d.num_samples())
      throw std::out_of_range("NodeView index out of bounds");
    if (seen[i]) throw std::invalid_argument("NodeView indices must be unique");
    seen[i] = true;
  }
}

NodeView NodeView::all(const SurvivalDataset& d) {
  std::vector<int> idx(d.num_samples());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  NodeView v;
  v.data = &d;
  v.indices = std::move(idx);
  return v;
}

std::size_t NodeView::count_events() const {
  std::size_t c = 0;
  for (int i : indices) c += data->event(i);
  return c;
}

SurvivalDataset NodeView::materialize() const {
  std::vector<std::vector<double>> cols(data->num_features());
  std::vector<double> t;
  std::vector<std::uint8_t> e;
  t.reserve(size());
  e.reserve(size());
  for (auto& c : cols) c.reserve(size());
  for (int i : indices) {
    for (std::size_t j = 0; j < cols.size(); ++j)
      cols[j].push_back(data->covariate(i, j));
    t.push_back(data->time(i));
    e.push_back(data->event(i) ? 1 : 0);
  }
  return SurvivalDataset(std::move(cols), data->covariate_names(), std::move(t),
                         std::move(e), data->time_name(), data->event_name());
}

NumericTable load_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty file: " + path);
  NumericTable table;
  table.names = split_line(line);
  table.columns.resize(table.names.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != table.names.size()) {
      std::ostringstream msg;
      msg << "row " << row << " has " << cells.size() << " cells, expected "
          << table.names.size();
      throw ParseError(msg.str());
    }
    for (std::size_t j = 0; j < cells.size(); ++j)
      table.columns[j].push_back(parse_cell(cells[j], row, j, table.names[j]));
    ++row;
  }
  if (table.num_rows() == 0) throw SchemaError("no data rows in " + path);
  return table;
}

SurvivalDataset load_csv(const std::string& path, const std::string& time_col,
                         const std::string& event_col) {
  NumericTable table = load_csv_table(path);
  int time_idx = -1, event_idx = -1;
  for (std::size_t j = 0; j < table.names.size(); ++j) {
    if (table.names[j] == time_col) time_idx = static_cast<int>(j);
    if (table.names[j] == event_col) event_idx = static_cast<int>(j);
  }
  if (time_idx < 0) throw SchemaError("missing time column: " + time_col);
  if (event_idx < 0) throw SchemaError("missing event column: " + event_col);
  if (time_idx == event_idx)
    throw SchemaError("time and event columns must differ");

  std::vector<std::uint8_t> events;
  events.reserve(table.num_rows());
  for (std::size_t i = 0; i < table.columns[event_idx].size(); ++i) {
    double v = table.columns[event_idx][i];
    if (v != 0.0 && v != 1.0) {
      std::ostringstream msg;
      msg << "event value " << v << " at row " << (i + 1)
          << " is not 0 or 1";
      throw ParseError(msg.str());
    }
    events.push_back(v == 1.0 ? 1 : 0);
  }

  std::vector<std::vector<double>> cols;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < table.names.size(); ++j) {
    if (static_cast<int>(j) == time_idx || static_cast<int>(j) == event_idx)
      continue;
    cols.push_back(std::move(table.columns[j]));
    names.push_back(table.names[j]);
  }
  if (cols.empty()) throw SchemaError("no covariate columns in " + path);
  return SurvivalDataset(std::move(cols), std::move(names),
                         std::move(table.columns[time_idx]), std::move(events),
                         time_col, event_col);
}

void write_csv(const SurvivalDataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot open file for writing: " + path);
  for (std::size_t j = 0; j < data.num_features(); ++j)
    out << data.covariate_names()[j] << ",";
  out << data.time_name() << "," << data.event_name() << "\n";
  char buf[40];
  for (std::size_t i = 0; i < data.num_samples(); ++i) {
    for (std::size_t j = 0; j < data.num_features(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.covariate(i, j));
      out << buf << ",";
    }
    std::snprintf(buf, sizeof(buf), "%.17g", data.time(i));
    out << buf << "," << (data.event(i) ? 1 : 0) << "\n";
  }
  if (!out) throw SchemaError("write failed: " + path);
}

}  // namespace survsplit
