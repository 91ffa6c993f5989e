#pragma once

// Output rows shared by every command. Each row carries its parameter
// provenance (p, N, K, tol) next to the measured value; x, lower, upper and
// pass are filled only where they mean something. lower/upper always delimit
// the admissible interval for value.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gkw {

struct Row {
  int p = 0;
  std::string quantity;
  double value = 0.0;
  std::int64_t n_or_dim = 0;
  std::int64_t N = 0;
  std::int64_t K = 0;
  double tol = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<double> x;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<bool> pass;

  bool operator==(const Row&) const = default;
};

enum class Format { kCsv, kJson };

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// RFC-4180 CSV with a fixed header; absent optional fields are empty.
std::string to_csv(const std::vector<Row>& rows);
/// JSON array of objects, absent optional keys omitted, newline-terminated.
std::string to_json(const std::vector<Row>& rows);
std::string render(const std::vector<Row>& rows, Format format);

/// Inverse of the writers. Throw std::runtime_error on malformed input.
std::vector<Row> from_csv(std::string_view text);
std::vector<Row> from_json(std::string_view text);
std::vector<Row> parse(std::string_view text, Format format);

}  // namespace gkw
