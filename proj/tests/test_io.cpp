#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "jacfrac/abel.hpp"
#include "jacfrac/errors.hpp"
#include "jacfrac/io.hpp"
#include "jacfrac/opmatrix.hpp"
#include "jacfrac/special.hpp"

using namespace jacfrac;

namespace {

const std::vector<double> kNastyValues = {
    1.0 / 3.0,
    -2.7182818284590452e-5,
    0.0,
    -0.0,
    7.2e300,
    1e-308,  // subnormal: glibc strtod flags ERANGE yet parses it correctly
    std::numeric_limits<double>::denorm_min(),
    std::numeric_limits<double>::max(),
    std::numeric_limits<double>::min(),
    kPi,
};

CoeffVector nasty_coeffs() {
  CoeffVector c;
  c.basis = JacobiBasis(-0.5, 2.25, 0.3, -0.4999);
  c.coeffs = kNastyValues;
  return c;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
    if (a[i] == 0.0 && std::signbit(a[i]) != std::signbit(b[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("coefficient JSON round trip preserves every bit") {
  const CoeffVector c = nasty_coeffs();
  std::stringstream ss;
  io::write_coeffs_json(c, ss);
  const CoeffVector back = io::read_coeffs_json(ss);
  CHECK(same_bits(back.coeffs, c.coeffs));
  CHECK(back.basis.a() == c.basis.a());
  CHECK(back.basis.b() == c.basis.b());
  CHECK(back.basis.beta == c.basis.beta);
  CHECK(back.basis.gamma == c.basis.gamma);
}

TEST_CASE("coefficient CSV round trip preserves every bit, subnormals included") {
  CoeffVector c = nasty_coeffs();
  std::stringstream ss;
  io::write_coeffs_csv(c, ss);
  const CoeffVector back = io::read_coeffs_csv(ss);
  CHECK(same_bits(back.coeffs, c.coeffs));
  CHECK(back.basis.beta == c.basis.beta);

  // non-finite values survive the text format too
  c.coeffs = {std::numeric_limits<double>::infinity(),
              -std::numeric_limits<double>::infinity(), 1.5};
  std::stringstream ss2;
  io::write_coeffs_csv(c, ss2);
  const CoeffVector back2 = io::read_coeffs_csv(ss2);
  CHECK(back2.coeffs[0] == c.coeffs[0]);
  CHECK(back2.coeffs[1] == c.coeffs[1]);
  CHECK(back2.coeffs[2] == 1.5);
}

TEST_CASE("matrix round trips in both formats") {
  const OpMatrix M = assemble(JacobiBasis(0, 2, 0.3, -0.2), -0.25, Side::Right, 5);

  std::stringstream js;
  io::write_matrix_json(M, js);
  const OpMatrix mj = io::read_matrix_json(js);
  CHECK(mj.N == 5);
  CHECK(mj.alpha == M.alpha);
  CHECK(mj.side == Side::Right);
  CHECK(mj.basis.gamma == -0.2);
  CHECK(same_bits(mj.entries, M.entries));

  std::stringstream cs;
  io::write_matrix_csv(M, cs);
  const OpMatrix mc = io::read_matrix_csv(cs);
  CHECK(mc.N == 5);
  CHECK(mc.alpha == M.alpha);
  CHECK(mc.side == Side::Right);
  CHECK(same_bits(mc.entries, M.entries));
}

TEST_CASE("serialization is deterministic") {
  const CoeffVector c = nasty_coeffs();
  std::stringstream s1, s2;
  io::write_coeffs_json(c, s1);
  io::write_coeffs_json(c, s2);
  CHECK(s1.str() == s2.str());
  std::stringstream t1, t2;
  io::write_coeffs_csv(c, t1);
  io::write_coeffs_csv(c, t2);
  CHECK(t1.str() == t2.str());
}

TEST_CASE("coefficient JSON rejects malformed input with clear messages") {
  auto read = [](const std::string& text) {
    std::stringstream ss(text);
    return io::read_coeffs_json(ss);
  };
  CHECK_THROWS_WITH_AS((void)read("{nope"), doctest::Contains("malformed JSON"),
                       InputError);
  CHECK_THROWS_WITH_AS((void)read("[1,2,3]"), doctest::Contains("'basis' and 'coeffs'"),
                       InputError);
  CHECK_THROWS_WITH_AS((void)read(R"({"coeffs":[1]})"),
                       doctest::Contains("'basis' and 'coeffs'"), InputError);
  CHECK_THROWS_WITH_AS(
      (void)read(R"({"basis":{"a":0,"b":1,"beta":0},"coeffs":[1]})"),
      doctest::Contains("basis object needs fields"), InputError);
  CHECK_THROWS_WITH_AS(
      (void)read(R"({"basis":{"a":0,"b":1,"beta":0,"gamma":0},"coeffs":7})"),
      doctest::Contains("'coeffs' must be an array"), InputError);
  CHECK_THROWS_WITH_AS(
      (void)read(R"({"basis":{"a":0,"b":1,"beta":0,"gamma":0},"coeffs":[1,"x"]})"),
      doctest::Contains("non-numeric coefficient"), InputError);
  // invalid basis parameters surface as input errors, not domain errors
  CHECK_THROWS_AS(
      (void)read(R"({"basis":{"a":1,"b":0,"beta":0,"gamma":0},"coeffs":[1]})"),
      InputError);
}

TEST_CASE("coefficient CSV rejects malformed input with line numbers") {
  auto read = [](const std::string& text) {
    std::stringstream ss(text);
    return io::read_coeffs_csv(ss);
  };
  CHECK_THROWS_WITH_AS((void)read(""), doctest::Contains("empty input"), InputError);
  CHECK_THROWS_WITH_AS((void)read("nonsense\n"), doctest::Contains("'#' header"),
                       InputError);
  CHECK_THROWS_WITH_AS((void)read("# other coeffs a=0 b=1 beta=0 gamma=0 N=0\n0,1\n"),
                       doctest::Contains("not a jacfrac CSV header"), InputError);
  CHECK_THROWS_WITH_AS(
      (void)read("# jacfrac opmatrix a=0 b=1 beta=0 gamma=0 alpha=0.5 side=left N=1\n"),
      doctest::Contains("expected 'coeffs' header"), InputError);
  CHECK_THROWS_WITH_AS((void)read("# jacfrac coeffs a=0 b=1 beta=0 N=0\n0,1\n"),
                       doctest::Contains("header missing 'gamma='"), InputError);
  CHECK_THROWS_WITH_AS((void)read("# jacfrac coeffs a=0 b=1 beta gamma=0 N=0\n0,1\n"),
                       doctest::Contains("malformed header token"), InputError);
  const std::string head = "# jacfrac coeffs a=0 b=1 beta=0 gamma=0 N=2\n";
  CHECK_THROWS_WITH_AS((void)read(head + "0,1\n1,2\n3,4\n"),
                       doctest::Contains("without gaps"), InputError);
  CHECK_THROWS_WITH_AS((void)read(head + "0,1\n1,oops\n"),
                       doctest::Contains("line 3: not a number: 'oops'"), InputError);
  CHECK_THROWS_WITH_AS((void)read(head + "0,1\n1,2.5x\n"),
                       doctest::Contains("line 3: trailing junk"), InputError);
  CHECK_THROWS_WITH_AS((void)read(head + "0,1,7\n"),
                       doctest::Contains("expected 'index,value'"), InputError);
  CHECK_THROWS_WITH_AS((void)read(head), doctest::Contains("no coefficient rows"),
                       InputError);
  CHECK_THROWS_WITH_AS((void)read("# jacfrac coeffs a=1 b=0 beta=0 gamma=0 N=0\n0,1\n"),
                       doctest::Contains("a < b"), InputError);
}

TEST_CASE("matrix readers validate structure") {
  {
    std::stringstream ss(
        R"({"basis":{"a":0,"b":1,"beta":0,"gamma":0},"alpha":0.5,"side":"up","N":0,"entries":[[1]]})");
    CHECK_THROWS_WITH_AS((void)io::read_matrix_json(ss),
                         doctest::Contains("side must be"), InputError);
  }
  {
    std::stringstream ss(
        R"({"basis":{"a":0,"b":1,"beta":0,"gamma":0},"alpha":0.5,"side":"left","N":1,"entries":[[1,0]]})");
    CHECK_THROWS_WITH_AS((void)io::read_matrix_json(ss),
                         doctest::Contains("N+1 rows"), InputError);
  }
  {
    std::stringstream ss(
        R"({"basis":{"a":0,"b":1,"beta":0,"gamma":0},"alpha":0.5,"side":"left","entries":[[1]]})");
    CHECK_THROWS_WITH_AS((void)io::read_matrix_json(ss),
                         doctest::Contains("missing field 'N'"), InputError);
  }
  {
    std::stringstream ss(
        "# jacfrac opmatrix a=0 b=1 beta=0 gamma=0 alpha=0.5 side=left N=2\n1,0\n");
    CHECK_THROWS_WITH_AS((void)io::read_matrix_csv(ss),
                         doctest::Contains("expected 3 entries, got 2"), InputError);
  }
  {
    std::stringstream ss(
        "# jacfrac opmatrix a=0 b=1 beta=0 gamma=0 alpha=0.5 side=left N=1\n1,0\n");
    CHECK_THROWS_WITH_AS((void)io::read_matrix_csv(ss), doctest::Contains("rows"),
                         InputError);
  }
  {
    std::stringstream ss(
        "# jacfrac opmatrix a=0 b=1 beta=0 gamma=0 alpha=0.5 side=left N=1.5\n");
    CHECK_THROWS_WITH_AS((void)io::read_matrix_csv(ss),
                         doctest::Contains("nonnegative integer"), InputError);
  }
}

TEST_CASE("grid CSV accepts comments and an optional header") {
  std::stringstream ss(
      "# sampled data\n"
      "x,y\n"
      "0,1\n"
      "0.5,2\n"
      "\n"
      "1,3\n");
  const GridFunction g = io::read_grid_csv(ss);
  REQUIRE(g.x.size() == 3);
  CHECK(g.x[1] == 0.5);
  CHECK(g.y[2] == 3.0);

  std::stringstream out;
  io::write_grid_csv(g, out);
  std::stringstream back(out.str());
  const GridFunction g2 = io::read_grid_csv(back);
  CHECK(same_bits(g2.x, g.x));
  CHECK(same_bits(g2.y, g.y));
}

TEST_CASE("grid CSV rejects malformed input with line numbers") {
  auto read = [](const std::string& text) {
    std::stringstream ss(text);
    return io::read_grid_csv(ss);
  };
  CHECK_THROWS_WITH_AS((void)read("0,1\n0.5,2\noops,3\n"),
                       doctest::Contains("line 3: not a number: 'oops'"), InputError);
  CHECK_THROWS_WITH_AS((void)read("0,1\n0.7,2\n0.5,2\n1,3\n"),
                       doctest::Contains("line 3: x values must be strictly increasing"),
                       InputError);
  CHECK_THROWS_WITH_AS((void)read("0,1\n"), doctest::Contains("at least two data rows"),
                       InputError);
  CHECK_THROWS_WITH_AS((void)read("0,1\n0.5,2,9\n"),
                       doctest::Contains("two comma-separated values"), InputError);
}

TEST_CASE("report serialization maps non-finite values to JSON-safe forms") {
  auto power_law = [](double lambda) {
    CoeffVector c;
    c.basis = JacobiBasis(0, 1, 0, 0);
    c.coeffs.resize(401);
    c.coeffs[0] = 1.0;
    for (std::size_t m = 1; m <= 400; ++m) c.coeffs[m] = std::pow((double)m, -lambda);
    return c;
  };

  const nlohmann::json lo = nlohmann::json::parse(
      io::decay_report_json(estimate_decay(power_law(0.3))));
  CHECK(lo.at("regime") == "p-only");
  CHECK(lo.at("q_bound").is_null());
  CHECK(std::fabs(lo.at("lambda_hat").get<double>() - 0.3) <= 1e-6);

  const nlohmann::json mid = nlohmann::json::parse(
      io::decay_report_json(estimate_decay(power_law(1.0))));
  CHECK(mid.at("regime") == "bounded-q");
  CHECK(std::fabs(mid.at("q_bound").get<double>() - 4.0) <= 1e-6);
  CHECK(mid.at("s") == 1.5);
  CHECK(mid.at("skipped_zeros") == 0);

  const nlohmann::json hi = nlohmann::json::parse(
      io::decay_report_json(estimate_decay(power_law(2.0))));
  CHECK(hi.at("regime") == "unbounded-q");
  CHECK(hi.at("q_bound") == "inf");

  CoeffVector finite;
  finite.basis = JacobiBasis(0, 1, 0, 0);
  finite.coeffs.assign(41, 0.0);
  finite.coeffs[2] = 1.0;
  const nlohmann::json zm = nlohmann::json::parse(
      io::zm_report_json(zm_condition(finite, 3.0)));
  CHECK(zm.at("convergent") == true);
  CHECK(zm.at("lambda_hat") == "inf");
  CHECK(zm.at("exponent") == "-inf");
  CHECK(zm.at("omega_q").get<double>() > 0.0);
}
