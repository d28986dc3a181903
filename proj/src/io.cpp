#include "mimtilt/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mimtilt {

namespace {

using nlohmann::json;

Eigen::ArrayXd numbers_from_json(const json& arr, const char* field) {
  if (!arr.is_array()) fail(ErrorCode::ParseError, std::string(field) + " must be an array");
  Eigen::ArrayXd out(arr.size());
  Eigen::Index i = 0;
  for (const auto& v : arr) {
    if (!v.is_number())
      fail(ErrorCode::ParseError, std::string(field) + " entries must be numbers");
    out[i++] = v.get<double>();
  }
  return out;
}

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Pmf parse_distribution_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::ParseError, "distribution must be a JSON object");
  if (!doc.contains("labels")) fail(ErrorCode::ParseError, "missing 'labels'");

  std::vector<std::string> labels;
  for (const auto& l : doc["labels"]) {
    if (!l.is_string()) fail(ErrorCode::ParseError, "labels must be strings");
    labels.push_back(l.get<std::string>());
  }

  const bool has_probs = doc.contains("probs");
  const bool has_counts = doc.contains("counts");
  if (has_probs == has_counts)
    fail(ErrorCode::ParseError, "exactly one of 'probs' or 'counts' is required");

  if (has_probs)
    return Pmf::from_probs(std::move(labels), numbers_from_json(doc["probs"], "probs"));
  return pmf_from_counts(std::move(labels), numbers_from_json(doc["counts"], "counts")).first;
}

Pmf load_distribution_json(const std::string& path) {
  return parse_distribution_json(read_file(path));
}

std::string distribution_to_json(const Pmf& pmf) {
  json doc;
  doc["labels"] = pmf.labels();
  std::vector<double> probs(pmf.probs().data(), pmf.probs().data() + pmf.size());
  doc["probs"] = probs;
  return doc.dump();
}

std::pair<Pmf, RawUsage> parse_counts_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || strip(line) != "label,count")
    fail(ErrorCode::ParseError, "counts CSV must start with the header 'label,count'");

  std::vector<std::string> labels;
  std::vector<double> counts;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = strip(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos)
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": expected exactly two columns");
    const std::string label = strip(row.substr(0, comma));
    const std::string value = strip(row.substr(comma + 1));
    if (label.empty())
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": empty label");
    double count = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), count);
    if (ec != std::errc{} || ptr != value.data() + value.size())
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": '" + value + "' is not a number");
    labels.push_back(label);
    counts.push_back(count);
  }
  if (labels.empty()) fail(ErrorCode::ParseError, "counts CSV has no data rows");

  Eigen::ArrayXd arr = Eigen::Map<const Eigen::ArrayXd>(counts.data(), counts.size());
  return pmf_from_counts(std::move(labels), std::move(arr));
}

std::pair<Pmf, RawUsage> load_counts_csv(const std::string& path) {
  return parse_counts_csv(read_file(path));
}

std::uint64_t fnv1a_hash(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace mimtilt
