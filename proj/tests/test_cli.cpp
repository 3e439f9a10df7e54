#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "cli_utils.hpp"
#include "jacfrac/fracops.hpp"
#include "jacfrac/io.hpp"
#include "jacfrac/opmatrix.hpp"
#include "jacfrac/quadrature.hpp"
#include "jacfrac/special.hpp"

using namespace jacfrac;
using cliutil::run_cli;
using cliutil::scratch_path;
using cliutil::spit;
using nlohmann::json;

namespace {

std::string write_coeffs_file(const std::string& stem, const CoeffVector& c) {
  const std::string path = scratch_path(stem);
  std::ofstream f(path);
  io::write_coeffs_json(c, f);
  return path;
}

CoeffVector read_coeffs_file(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  return io::read_coeffs_json(f);
}

}  // namespace

TEST_CASE("transform expands builtins on the requested basis") {
  auto r = run_cli("transform --builtin one --n 4");
  REQUIRE(r.exit_code == 0);
  std::stringstream ss(r.out);
  const CoeffVector c = io::read_coeffs_json(ss);
  REQUIRE(c.coeffs.size() == 5);
  CHECK(std::fabs(c.coeffs[0] - 1.0) <= 1e-12);
  for (std::size_t n = 1; n < 5; ++n) CHECK(std::fabs(c.coeffs[n]) <= 1e-12);
}

TEST_CASE("power builtin anchors at the left endpoint") {
  // (x - a)^2 on [-1, 1] is exactly three basis modes
  auto r = run_cli("transform --builtin power:2 --a -1 --b 1 --n 6");
  REQUIRE(r.exit_code == 0);
  std::stringstream ss(r.out);
  const CoeffVector c = io::read_coeffs_json(ss);
  REQUIRE(c.coeffs.size() == 7);
  for (std::size_t n = 0; n <= 2; ++n) CHECK(std::fabs(c.coeffs[n]) > 1e-6);
  for (std::size_t n = 3; n <= 6; ++n) CHECK(std::fabs(c.coeffs[n]) <= 1e-13);

  CHECK(run_cli("transform --builtin power:x --n 4").exit_code == 2);
  CHECK(run_cli("transform --builtin power:-1.5 --n 4").exit_code == 3);
  CHECK(run_cli("transform --builtin nothere --n 4").exit_code == 2);
  CHECK(run_cli("transform --builtin one").exit_code == 2);  // --n required
}

TEST_CASE("transform reads sampled grid data") {
  // Chebyshev-spaced samples: equispaced grids of this size make polynomial
  // interpolation ill-conditioned no matter who implements it
  const std::string grid = scratch_path("cubic.csv");
  std::ostringstream body;
  body << std::setprecision(17);
  for (int i = 0; i <= 40; ++i) {
    const double x = 0.5 * (1.0 - std::cos(kPi * i / 40.0));
    body << x << "," << (0.5 + x * (x - 0.3) * (x + 1.1)) << "\n";
  }
  spit(grid, body.str());
  auto r = run_cli("transform --in " + grid + " --n 3");
  REQUIRE(r.exit_code == 0);
  std::stringstream ss(r.out);
  const CoeffVector c = io::read_coeffs_json(ss);
  const double mid = synthesize(c, 0.37);
  CHECK(std::fabs(mid - (0.5 + 0.37 * (0.37 - 0.3) * (0.37 + 1.1))) <= 1e-10);
}

TEST_CASE("matrix subcommand emits the operator in both formats") {
  auto rcsv = run_cli("matrix --alpha 0 --n 5 --format csv");
  REQUIRE(rcsv.exit_code == 0);
  std::stringstream cs(rcsv.out);
  const OpMatrix id = io::read_matrix_csv(cs);
  REQUIRE(id.N == 5);
  for (std::size_t m = 0; m <= 5; ++m) {
    for (std::size_t n = 0; n <= 5; ++n) {
      CHECK(std::fabs(id.entry(m, n) - (m == n ? 1.0 : 0.0)) <= 1e-12);
    }
  }

  auto rj = run_cli("matrix --alpha 0.5 --n 0");
  REQUIRE(rj.exit_code == 0);
  const json j = json::parse(rj.out);
  const double e00 = j.at("entries").at(0).at(0).get<double>();
  CHECK(std::fabs(e00 - 4.0 / (3.0 * std::sqrt(kPi))) <= 1e-10);
}

TEST_CASE("matrix sides are parity conjugates on a symmetric weight") {
  const std::string flags = " --beta 0.3 --gamma 0.3 --alpha 0.5 --n 6";
  auto rl = run_cli("matrix --side left" + flags);
  auto rr = run_cli("matrix --side right" + flags);
  REQUIRE(rl.exit_code == 0);
  REQUIRE(rr.exit_code == 0);
  std::stringstream sl(rl.out), sr(rr.out);
  const OpMatrix L = io::read_matrix_json(sl);
  const OpMatrix R = io::read_matrix_json(sr);
  for (std::size_t m = 0; m <= 6; ++m) {
    for (std::size_t n = 0; n <= 6; ++n) {
      const double flip = ((m + n) % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::fabs(R.entry(m, n) - flip * L.entry(m, n)) <= 1e-14);
    }
  }
}

TEST_CASE("matrix order cap and its environment override") {
  auto refused = run_cli("matrix --alpha 0.5 --n 40");
  CHECK(refused.exit_code == 2);
  CHECK(refused.err.find("JACFRAC_MAX_N") != std::string::npos);

  auto still_refused = run_cli("matrix --alpha 0.5 --n 40", "JACFRAC_MAX_N=35");
  CHECK(still_refused.exit_code == 2);
  CHECK(still_refused.err.find("stability cap 35") != std::string::npos);

  auto allowed = run_cli("matrix --alpha 0.5 --n 40", "JACFRAC_MAX_N=64");
  CHECK(allowed.exit_code == 0);
  CHECK(allowed.err.find("unverified accuracy") != std::string::npos);

  CHECK(run_cli("matrix --alpha 0.5 --n 40", "JACFRAC_MAX_N=abc").exit_code == 2);
  CHECK(run_cli("matrix --alpha 0.5").exit_code == 2);  // --n required
}

TEST_CASE("fracint matches the in-process coefficient map") {
  CoeffVector psi;
  psi.basis = JacobiBasis(0, 1, 0, 0);
  psi.coeffs = {1.0, 0.0, 0.0};
  const std::string in = write_coeffs_file("unit.json", psi);
  const std::string out = scratch_path("unit_int.json");
  auto r = run_cli("fracint --in " + in + " --alpha 0.5 --n 8 --out " + out);
  REQUIRE(r.exit_code == 0);
  const CoeffVector got = read_coeffs_file(out);
  const CoeffVector ref =
      apply_coeff(psi, FracOrder(0.5, FracKind::Integral), Side::Left, 8);
  REQUIRE(got.coeffs.size() == ref.coeffs.size());
  for (std::size_t n = 0; n < ref.coeffs.size(); ++n) {
    CHECK(std::fabs(got.coeffs[n] - ref.coeffs[n]) <= 1e-14);
  }
  CHECK(std::fabs(got.coeffs[0] - 4.0 / (3.0 * std::sqrt(kPi))) <= 1e-10);
}

TEST_CASE("fracint at order zero is a byte-stable identity") {
  CoeffVector psi;
  psi.basis = JacobiBasis(0, 1, 0, 0);
  psi.coeffs = {1.0 / 3.0, -0.125, 0.7071067811865476};
  const std::string in = write_coeffs_file("id_in.json", psi);
  const std::string o1 = scratch_path("id_a.json");
  const std::string o2 = scratch_path("id_b.json");
  REQUIRE(run_cli("fracint --in " + in + " --alpha 0 --n 5 --out " + o1).exit_code == 0);
  REQUIRE(run_cli("fracint --in " + in + " --alpha 0 --n 5 --out " + o2).exit_code == 0);
  CHECK(cliutil::slurp(o1) == cliutil::slurp(o2));
  const CoeffVector got = read_coeffs_file(o1);
  REQUIRE(got.coeffs.size() == 6);
  for (std::size_t n = 0; n < 3; ++n) CHECK(got.coeffs[n] == psi.coeffs[n]);
  for (std::size_t n = 3; n < 6; ++n) CHECK(got.coeffs[n] == 0.0);
}

TEST_CASE("out-of-window weights warn but still succeed") {
  CoeffVector psi;
  psi.basis = JacobiBasis(0, 1, 0.8, 0.0);
  psi.coeffs = {1.0, 0.5};
  const std::string in = write_coeffs_file("window.json", psi);
  auto r = run_cli("fracint --in " + in + " --alpha 0.5 --n 4");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("warning: ") != std::string::npos);
  CHECK(r.err.find("outside Lemma 1 admissibility window") != std::string::npos);
}

TEST_CASE("input selection and order validation produce the documented exits") {
  CHECK(run_cli("fracint --alpha 0.5").exit_code == 2);  // no input at all
  CoeffVector psi;
  psi.basis = JacobiBasis(0, 1, 0, 0);
  psi.coeffs = {1.0};
  const std::string in = write_coeffs_file("tiny.json", psi);
  CHECK(run_cli("fracint --in " + in + " --builtin one --alpha 0.5").exit_code == 2);
  CHECK(run_cli("fracder --in " + in + " --alpha 1.0").exit_code == 3);
  CHECK(run_cli("fracint --in " + in + " --alpha 1.5").exit_code == 3);

  const std::string empty = scratch_path("empty.json");
  spit(empty, "");
  CHECK(run_cli("fracint --in " + empty + " --alpha 0.5").exit_code == 2);

  const std::string bad = scratch_path("bad.csv");
  spit(bad,
       "# jacfrac coeffs a=0 b=1 beta=0 gamma=0 N=2\n"
       "0,1\n"
       "1,oops\n");
  auto r = run_cli("fracint --in " + bad + " --alpha 0.5");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("abel inverts a manufactured problem end to end") {
  CoeffVector psi;
  psi.basis = JacobiBasis(0, 1, 0, 0);
  psi.coeffs.resize(25);
  for (std::size_t n = 0; n < 25; ++n) psi.coeffs[n] = std::pow(-0.6, (double)n);
  const std::string psi_file = write_coeffs_file("mfg_psi.json", psi);
  const std::string f_file = scratch_path("mfg_f.json");
  const std::string rec_file = scratch_path("mfg_rec.json");

  REQUIRE(run_cli("fracint --in " + psi_file + " --alpha 0.5 --n 600 --out " +
                  f_file).exit_code == 0);
  REQUIRE(run_cli("abel --in " + f_file + " --alpha 0.5 --n 24 --out " +
                  rec_file).exit_code == 0);

  const CoeffVector rec = read_coeffs_file(rec_file);
  double dev16 = 0.0;
  for (std::size_t n = 0; n < 16; ++n)
    dev16 = std::max(dev16, std::fabs(rec.coeffs[n] - psi.coeffs[n]));
  CHECK(dev16 <= 1e-6);

  const json report = json::parse(cliutil::slurp(rec_file + ".report.json"));
  CHECK(report.at("alpha") == 0.5);
  CHECK(report.at("n") == 24);
  CHECK(report.at("residual").get<double>() <= 1e-6);
  CHECK(report.at("residual_sup").get<double>() <= 1e-4);

  CHECK(run_cli("abel --in " + f_file + " --alpha 0.5 --n 24").exit_code == 2);
}

TEST_CASE("diagnose reports decay, summability, and the basis window") {
  CoeffVector c;
  c.basis = JacobiBasis(0, 1, 0, 0);
  c.coeffs.resize(401);
  c.coeffs[0] = 1.0;
  for (std::size_t m = 1; m <= 400; ++m) c.coeffs[m] = 1.0 / (double)m;
  const std::string in = write_coeffs_file("harmonic.json", c);

  auto r3 = run_cli("diagnose --in " + in + " --q 3");
  REQUIRE(r3.exit_code == 0);
  const json j3 = json::parse(r3.out);
  CHECK(std::fabs(j3.at("decay").at("lambda_hat").get<double>() - 1.0) <= 1e-6);
  CHECK(j3.at("decay").at("regime") == "bounded-q");
  CHECK(std::fabs(j3.at("decay").at("q_bound").get<double>() - 4.0) <= 1e-6);
  CHECK(j3.at("zm").at("convergent") == true);
  CHECK(std::fabs(j3.at("basis_range").at("M_lower").get<double>() - 4.0 / 3.0) <= 1e-12);
  CHECK(std::fabs(j3.at("basis_range").at("m_upper").get<double>() - 4.0) <= 1e-12);

  auto r4 = run_cli("diagnose --in " + in + " --q 4");
  REQUIRE(r4.exit_code == 0);
  CHECK(json::parse(r4.out).at("zm").at("convergent") == false);

  auto again = run_cli("diagnose --in " + in + " --q 3");
  CHECK(again.out == r3.out);  // byte-identical reruns

  CHECK(run_cli("diagnose --in " + in + " --q 1.5").exit_code == 3);
}

TEST_CASE("selfcheck passes clean and catches an injected sign error") {
  auto ok = run_cli("selfcheck");
  REQUIRE(ok.exit_code == 0);
  CHECK(ok.out.find("selfcheck: all suites passed") != std::string::npos);
  CHECK(ok.out.find("[FAIL]") == std::string::npos);

  auto rerun = run_cli("selfcheck");
  CHECK(rerun.out == ok.out);

  auto broken = run_cli("selfcheck --inject-delta-sign-flip");
  CHECK(broken.exit_code == 4);
  CHECK(broken.out.find("[FAIL]") != std::string::npos);
  CHECK(broken.out.find("pairing") != std::string::npos);
}

TEST_CASE("help succeeds and unknown commands fail") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("matrix --help").exit_code == 0);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("matrix --no-such-flag 3 --n 4").exit_code == 2);
}
