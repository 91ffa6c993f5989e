#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "gkw/table.hpp"

using namespace gkw;

namespace {

std::vector<Row> sample_rows() {
  Row plain;
  plain.p = 2;
  plain.quantity = "lambda";
  plain.value = 0.18808298802207;
  plain.n_or_dim = 18;
  plain.N = 64;
  plain.K = 10000;
  plain.tol = 1e-10;

  Row full = plain;
  full.quantity = "mc_cdf";
  full.value = 0.1 + 0.2;  // not representable in short decimal
  full.seed = 18446744073709551615ULL;
  full.x = 0.05;
  full.lower = -1e-300;
  full.upper = 5e-324;
  full.pass = false;

  Row awkward = plain;
  awkward.p = 7;
  awkward.quantity = "verify:error \"quoted\", with comma\nand newline";
  awkward.value = -0.0;
  awkward.pass = true;
  return {plain, full, awkward};
}

}  // namespace

TEST_CASE("format_double is shortest round trip") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1e-10) == "1e-10");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<double>(i % 40 - 20));
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("csv round trip is exact and byte-stable") {
  const auto rows = sample_rows();
  const std::string text = to_csv(rows);
  CHECK(text.rfind("p,quantity,value,n_or_dim,N,K,tol,seed,x,lower,upper,pass\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  const auto back = from_csv(text);
  CHECK(back == rows);
  CHECK(to_csv(back) == text);
  CHECK(std::signbit(back[2].value));
}

TEST_CASE("csv quoting") {
  Row r;
  r.quantity = "a,b";
  const std::string text = to_csv({r});
  CHECK(text.find("\"a,b\"") != std::string::npos);
  // CRLF input is accepted.
  std::string crlf;
  for (char c : text) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  CHECK(from_csv(crlf) == std::vector<Row>{r});
}

TEST_CASE("json round trip is exact and byte-stable") {
  const auto rows = sample_rows();
  const std::string text = to_json(rows);
  CHECK(text.back() == '\n');
  const auto back = from_json(text);
  CHECK(back == rows);
  CHECK(to_json(back) == text);
  // Absent optionals are omitted, not null.
  CHECK(text.find("\"seed\": null") == std::string::npos);
}

TEST_CASE("non-finite values become null in json") {
  Row r;
  r.value = std::numeric_limits<double>::quiet_NaN();
  const std::string text = to_json({r});
  CHECK(text.find("\"value\": null") != std::string::npos);
  CHECK(std::isnan(from_json(text)[0].value));
}

TEST_CASE("render and parse dispatch on format") {
  const auto rows = sample_rows();
  CHECK(parse(render(rows, Format::kCsv), Format::kCsv) == rows);
  CHECK(parse(render(rows, Format::kJson), Format::kJson) == rows);
  CHECK(to_csv({}) == "p,quantity,value,n_or_dim,N,K,tol,seed,x,lower,upper,pass\n");
  CHECK(from_json(to_json({})).empty());
}

TEST_CASE("malformed input is rejected") {
  const std::string header = "p,quantity,value,n_or_dim,N,K,tol,seed,x,lower,upper,pass\n";
  CHECK_THROWS_AS(from_csv(""), std::runtime_error);
  CHECK_THROWS_AS(from_csv("p,q\n"), std::runtime_error);
  CHECK_THROWS_AS(from_csv(header + "2,x,0.1,0,64,1,1e-10,,,,\n"), std::runtime_error);
  CHECK_THROWS_AS(from_csv(header + "2,x,abc,0,64,1,1e-10,,,,,\n"), std::runtime_error);
  CHECK_THROWS_AS(from_csv(header + "2,x,0.1,0,64,1,1e-10,,,,,maybe\n"), std::runtime_error);
  CHECK_THROWS_AS(from_csv(header + "2,\"x,0.1,0,64,1,1e-10,,,,,\n"), std::runtime_error);
  CHECK_THROWS_AS(from_json("{"), std::runtime_error);
  CHECK_THROWS_AS(from_json("{}"), std::runtime_error);
  CHECK_THROWS_AS(from_json("[{\"p\": 2}]"), std::runtime_error);
  CHECK_THROWS_AS(from_json("[{\"p\": \"two\", \"quantity\": \"x\", \"value\": 1, \"n_or_dim\": 0,"
                            " \"N\": 1, \"K\": 1, \"tol\": 1}]"),
                  std::runtime_error);
}
