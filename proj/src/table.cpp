#include "gkw/table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <json.hpp>
#include <stdexcept>

namespace gkw {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 12> kColumns{
    "p", "quantity", "value", "n_or_dim", "N", "K", "tol", "seed", "x", "lower", "upper", "pass"};

std::string quote_csv(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

template <class T>
T parse_number(std::string_view s, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error(std::string("table: bad ") + what + " field '" + std::string(s) + "'");
  }
  return v;
}

// Splits one CSV document into records of fields, honoring quotes.
std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool pending = false;  // a record has started
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      pending = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      pending = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      pending = false;
    } else {
      field += c;
      pending = true;
    }
  }
  if (quoted) throw std::runtime_error("table: unterminated quote");
  if (pending) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double read_double(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string to_csv(const std::vector<Row>& rows) {
  std::string out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i) out += ',';
    out += kColumns[i];
  }
  out += '\n';
  for (const Row& r : rows) {
    out += std::to_string(r.p);
    out += ',' + quote_csv(r.quantity);
    out += ',' + format_double(r.value);
    out += ',' + std::to_string(r.n_or_dim);
    out += ',' + std::to_string(r.N);
    out += ',' + std::to_string(r.K);
    out += ',' + format_double(r.tol);
    out += ',' + (r.seed ? std::to_string(*r.seed) : std::string());
    out += ',' + (r.x ? format_double(*r.x) : std::string());
    out += ',' + (r.lower ? format_double(*r.lower) : std::string());
    out += ',' + (r.upper ? format_double(*r.upper) : std::string());
    out += ',' + (r.pass ? std::string(*r.pass ? "true" : "false") : std::string());
    out += '\n';
  }
  return out;
}

std::vector<Row> from_csv(std::string_view text) {
  const auto records = split_csv(text);
  if (records.empty()) throw std::runtime_error("table: empty CSV");
  const auto& header = records.front();
  if (header.size() != kColumns.size()) throw std::runtime_error("table: unexpected CSV header");
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (header[i] != kColumns[i]) throw std::runtime_error("table: unexpected CSV header");
  }
  std::vector<Row> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != kColumns.size()) throw std::runtime_error("table: wrong number of CSV fields");
    Row r;
    r.p = parse_number<int>(f[0], "p");
    r.quantity = f[1];
    r.value = parse_number<double>(f[2], "value");
    r.n_or_dim = parse_number<std::int64_t>(f[3], "n_or_dim");
    r.N = parse_number<std::int64_t>(f[4], "N");
    r.K = parse_number<std::int64_t>(f[5], "K");
    r.tol = parse_number<double>(f[6], "tol");
    if (!f[7].empty()) r.seed = parse_number<std::uint64_t>(f[7], "seed");
    if (!f[8].empty()) r.x = parse_number<double>(f[8], "x");
    if (!f[9].empty()) r.lower = parse_number<double>(f[9], "lower");
    if (!f[10].empty()) r.upper = parse_number<double>(f[10], "upper");
    if (!f[11].empty()) {
      if (f[11] != "true" && f[11] != "false") throw std::runtime_error("table: bad pass field");
      r.pass = f[11] == "true";
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string to_json(const std::vector<Row>& rows) {
  Json array = Json::array();
  for (const Row& r : rows) {
    Json o;
    o["p"] = r.p;
    o["quantity"] = r.quantity;
    o["value"] = number_or_null(r.value);
    o["n_or_dim"] = r.n_or_dim;
    o["N"] = r.N;
    o["K"] = r.K;
    o["tol"] = number_or_null(r.tol);
    if (r.seed) o["seed"] = *r.seed;
    if (r.x) o["x"] = number_or_null(*r.x);
    if (r.lower) o["lower"] = number_or_null(*r.lower);
    if (r.upper) o["upper"] = number_or_null(*r.upper);
    if (r.pass) o["pass"] = *r.pass;
    array.push_back(std::move(o));
  }
  return array.dump(2) + "\n";
}

std::vector<Row> from_json(std::string_view text) {
  Json array;
  try {
    array = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(std::string("table: ") + e.what());
  }
  if (!array.is_array()) throw std::runtime_error("table: JSON document must be an array");
  std::vector<Row> rows;
  try {
    for (const auto& o : array) {
      Row r;
      r.p = o.at("p").get<int>();
      r.quantity = o.at("quantity").get<std::string>();
      r.value = read_double(o.at("value"));
      r.n_or_dim = o.at("n_or_dim").get<std::int64_t>();
      r.N = o.at("N").get<std::int64_t>();
      r.K = o.at("K").get<std::int64_t>();
      r.tol = read_double(o.at("tol"));
      if (o.contains("seed")) r.seed = o.at("seed").get<std::uint64_t>();
      if (o.contains("x")) r.x = read_double(o.at("x"));
      if (o.contains("lower")) r.lower = read_double(o.at("lower"));
      if (o.contains("upper")) r.upper = read_double(o.at("upper"));
      if (o.contains("pass")) r.pass = o.at("pass").get<bool>();
      rows.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw std::runtime_error(std::string("table: ") + e.what());
  }
  return rows;
}

std::string render(const std::vector<Row>& rows, Format format) {
  return format == Format::kCsv ? to_csv(rows) : to_json(rows);
}

std::vector<Row> parse(std::string_view text, Format format) {
  return format == Format::kCsv ? from_csv(text) : from_json(text);
}

}  // namespace gkw
