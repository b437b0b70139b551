#include "otl/formats.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace otl {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    fields.push_back(trim(line.substr(begin, comma == std::string_view::npos ? comma : comma - begin)));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return fields;
}

bool skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

double parse_finite(std::string_view token, long line, const char* what) {
  double v = 0;
  if (!parse_double(token, v)) throw ParseError(std::string("malformed ") + what + " '" + std::string(token) + "'", line);
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite", line);
  return v;
}

int parse_label(std::string_view token, long line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("malformed label '" + std::string(token) + "'", line);
  }
  if (v < 1) throw ParseError("label must be a positive integer", line);
  if (v > std::numeric_limits<int>::max()) throw ParseError("label too large", line);
  return int(v);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<Sample<double>> read_samples(std::istream& in) {
  std::vector<Sample<double>> samples;
  std::string line;
  long line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto fields = split_fields(line);
    if (first) {
      first = false;
      if (fields.size() == 2 && fields[0] == "score" && fields[1] == "label") continue;
    }
    if (fields.size() != 2) {
      throw ParseError("expected 2 fields (score,label), got " + std::to_string(fields.size()), line_no);
    }
    samples.push_back({parse_finite(fields[0], line_no, "score"), parse_label(fields[1], line_no)});
  }
  return samples;
}

std::vector<Sample<double>> read_samples(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_samples(in);
}

void write_samples(std::ostream& out, const std::vector<Sample<double>>& samples,
                   std::string_view comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "score,label\n";
  for (const auto& s : samples) out << format_number(s.score) << ',' << s.label << '\n';
}

std::vector<double> read_scores(std::istream& in) {
  std::vector<double> scores;
  std::string line;
  long line_no = 0;
  bool first = true;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto fields = split_fields(line);
    if (first) {
      first = false;
      width = fields.size();
      if (fields[0] == "score") continue;
    }
    if (fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, got " + std::to_string(fields.size()), line_no);
    }
    scores.push_back(parse_finite(fields[0], line_no, "score"));
  }
  return scores;
}

LossSpec<double> read_loss_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::vector<double> row;
    for (auto field : split_fields(line)) {
      double v = 0;
      if (!parse_double(field, v)) throw ParseError("malformed loss entry '" + std::string(field) + "'", line_no);
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("ragged loss table row", line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("loss table is empty");
  Matrix<double> table(Index(rows.size()), Index(rows.front().size()));
  for (Index k = 0; k < table.rows(); ++k) {
    for (Index l = 0; l < table.cols(); ++l) table(k, l) = rows[k][l];
  }
  return LossSpec<double>::custom(table);
}

LossSpec<double> read_loss_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_loss_csv(in);
}

std::string format_threshold(double value) {
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  return format_number(value);
}

double parse_threshold(std::string_view token) {
  token = trim(token);
  if (token == "-inf") return -std::numeric_limits<double>::infinity();
  if (token == "inf" || token == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0;
  if (!parse_double(token, v) || std::isnan(v)) {
    throw ParseError("malformed threshold '" + std::string(token) + "'");
  }
  return v;
}

nlohmann::json threshold_json(const ThresholdVector<double>& t) {
  auto array = nlohmann::json::array();
  for (Index k = 0; k < t.size(); ++k) {
    if (std::isinf(t[k])) {
      array.push_back(format_threshold(t[k]));
    } else {
      array.push_back(t[k]);
    }
  }
  return array;
}

ThresholdVector<double> thresholds_from_json(const nlohmann::json& array) {
  if (!array.is_array() || array.empty()) throw ParseError("thresholds must be a nonempty array");
  Vector<double> values(Index(array.size()));
  for (Index k = 0; k < values.size(); ++k) {
    const auto& v = array[std::size_t(k)];
    if (v.is_string()) {
      values(k) = parse_threshold(v.get<std::string>());
    } else if (v.is_number()) {
      values(k) = v.get<double>();
    } else {
      throw ParseError("threshold entries must be numbers or \"-inf\"/\"inf\"");
    }
  }
  return ThresholdVector<double>(std::move(values));
}

ThresholdVector<double> read_thresholds(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto body = trim(text);
  if (!body.empty() && (body.front() == '{' || body.front() == '[')) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed thresholds JSON: ") + e.what());
    }
    if (doc.is_object()) {
      if (!doc.contains("thresholds")) throw ParseError("JSON has no \"thresholds\" member");
      return thresholds_from_json(doc["thresholds"]);
    }
    return thresholds_from_json(doc);
  }

  std::vector<double> values;
  std::istringstream lines{std::string(body)};
  std::string line;
  while (std::getline(lines, line)) {
    if (skippable(line)) continue;
    for (auto field : split_fields(line)) values.push_back(parse_threshold(field));
  }
  if (values.empty()) throw ParseError("no thresholds found");
  return ThresholdVector<double>(Eigen::Map<const Vector<double>>(values.data(), Index(values.size())));
}

void write_thresholds_csv(std::ostream& out, const ThresholdVector<double>& t) {
  for (Index k = 0; k < t.size(); ++k) out << (k ? "," : "") << format_threshold(t[k]);
  out << '\n';
}

nlohmann::json solve_output_json(const SolveReport<double>& report,
                                 const PreparedProblem<double>& prep) {
  return {
      {"thresholds", threshold_json(report.thresholds)},
      {"risk_sum", report.risk_sum},
      {"risk_mean", report.risk_mean},
      {"n", prep.n},
      {"K", prep.classes()},
      {"N", prep.unique_count()},
      {"algorithm", std::string(to_string(report.algorithm))},
      {"order_ok", report.order_ok},
      {"fallback_used", report.fallback_used},
      {"wall_time_ms", std::chrono::duration<double, std::milli>(report.wall_time).count()},
  };
}

}  // namespace otl
