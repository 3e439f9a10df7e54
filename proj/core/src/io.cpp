#include "jacfrac/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "jacfrac/errors.hpp"

namespace jacfrac::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json basis_to_json(const JacobiBasis& b) {
  ordered_json j;
  j["a"] = b.a();
  j["b"] = b.b();
  j["beta"] = b.beta;
  j["gamma"] = b.gamma;
  return j;
}

JacobiBasis basis_from_json(const ordered_json& j, const char* what) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("beta") ||
      !j.contains("gamma")) {
    throw InputError(std::string(what) + ": basis object needs fields a, b, beta, gamma");
  }
  try {
    return JacobiBasis(j.at("a").get<double>(), j.at("b").get<double>(),
                       j.at("beta").get<double>(), j.at("gamma").get<double>());
  } catch (const DomainError& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

ordered_json parse_stream(std::istream& is, const char* what) {
  ordered_json j = ordered_json::parse(is, nullptr, false);
  if (j.is_discarded()) throw InputError(std::string(what) + ": malformed JSON");
  return j;
}

std::string side_name(Side s) { return s == Side::Left ? "left" : "right"; }

Side side_from_name(const std::string& s, const char* what) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw InputError(std::string(what) + ": side must be \"left\" or \"right\"");
}

double parse_number(const std::string& tok, const char* what, std::size_t line_no) {
  // strtod rather than std::stod: the latter throws on ERANGE, which glibc
  // also raises for subnormal results even though the parsed value is the
  // correctly rounded one (and 17-digit output of a subnormal must read back).
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) {
    throw InputError(std::string(what) + " line " + std::to_string(line_no) +
                     ": not a number: '" + tok + "'");
  }
  while (*end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (*end != '\0') {
    throw InputError(std::string(what) + " line " + std::to_string(line_no) +
                     ": trailing junk after number: '" + tok + "'");
  }
  return v;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  return out;
}

// `# jacfrac <tag> key=value ...`
struct CsvHeader {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> kv;

  double num(const char* key, const char* what) const {
    for (const auto& p : kv) {
      if (p.first == key) return parse_number(p.second, what, 1);
    }
    throw InputError(std::string(what) + ": header missing '" + key + "='");
  }
  std::string str(const char* key, const char* what) const {
    for (const auto& p : kv) {
      if (p.first == key) return p.second;
    }
    throw InputError(std::string(what) + ": header missing '" + key + "='");
  }
};

CsvHeader parse_csv_header(const std::string& line, const char* what) {
  std::stringstream ss(line);
  std::string tok;
  ss >> tok;
  if (tok != "#") throw InputError(std::string(what) + ": first line must be a '#' header");
  CsvHeader h;
  ss >> tok;
  if (tok != "jacfrac") throw InputError(std::string(what) + ": not a jacfrac CSV header");
  ss >> h.tag;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) {
      throw InputError(std::string(what) + ": malformed header token '" + tok + "'");
    }
    h.kv.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return h;
}

}  // namespace

void write_coeffs_json(const CoeffVector& c, std::ostream& os) {
  ordered_json j;
  j["basis"] = basis_to_json(c.basis);
  j["coeffs"] = c.coeffs;
  os << j.dump() << '\n';
}

CoeffVector read_coeffs_json(std::istream& is) {
  const char* what = "coefficient JSON";
  ordered_json j = parse_stream(is, what);
  if (!j.is_object() || !j.contains("basis") || !j.contains("coeffs")) {
    throw InputError(std::string(what) + ": needs fields 'basis' and 'coeffs'");
  }
  CoeffVector c;
  c.basis = basis_from_json(j.at("basis"), what);
  if (!j.at("coeffs").is_array()) {
    throw InputError(std::string(what) + ": 'coeffs' must be an array");
  }
  for (const auto& v : j.at("coeffs")) {
    if (!v.is_number()) throw InputError(std::string(what) + ": non-numeric coefficient");
    c.coeffs.push_back(v.get<double>());
  }
  return c;
}

void write_coeffs_csv(const CoeffVector& c, std::ostream& os) {
  os << "# jacfrac coeffs a=" << fmt17(c.basis.a()) << " b=" << fmt17(c.basis.b())
     << " beta=" << fmt17(c.basis.beta) << " gamma=" << fmt17(c.basis.gamma)
     << " N=" << (c.coeffs.empty() ? 0 : c.coeffs.size() - 1) << '\n';
  for (std::size_t n = 0; n < c.coeffs.size(); ++n) {
    os << n << ',' << fmt17(c.coeffs[n]) << '\n';
  }
}

CoeffVector read_coeffs_csv(std::istream& is) {
  const char* what = "coefficient CSV";
  std::string line;
  if (!std::getline(is, line)) throw InputError(std::string(what) + ": empty input");
  const CsvHeader h = parse_csv_header(line, what);
  if (h.tag != "coeffs") {
    throw InputError(std::string(what) + ": expected 'coeffs' header, got '" + h.tag + "'");
  }
  CoeffVector c;
  try {
    c.basis = JacobiBasis(h.num("a", what), h.num("b", what), h.num("beta", what),
                          h.num("gamma", what));
  } catch (const DomainError& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tok = split_commas(line);
    if (tok.size() != 2) {
      throw InputError(std::string(what) + " line " + std::to_string(line_no) +
                       ": expected 'index,value'");
    }
    const double idx = parse_number(tok[0], what, line_no);
    if (idx != static_cast<double>(c.coeffs.size())) {
      throw InputError(std::string(what) + " line " + std::to_string(line_no) +
                       ": indices must run 0,1,2,... without gaps");
    }
    c.coeffs.push_back(parse_number(tok[1], what, line_no));
  }
  if (c.coeffs.empty()) throw InputError(std::string(what) + ": no coefficient rows");
  return c;
}

void write_matrix_json(const OpMatrix& M, std::ostream& os) {
  ordered_json j;
  j["basis"] = basis_to_json(M.basis);
  j["alpha"] = M.alpha;
  j["side"] = side_name(M.side);
  j["N"] = M.N;
  ordered_json rows = ordered_json::array();
  for (std::size_t m = 0; m <= M.N; ++m) {
    rows.push_back(std::vector<double>(M.entries.begin() + m * (M.N + 1),
                                       M.entries.begin() + (m + 1) * (M.N + 1)));
  }
  j["entries"] = std::move(rows);
  os << j.dump() << '\n';
}

OpMatrix read_matrix_json(std::istream& is) {
  const char* what = "matrix JSON";
  ordered_json j = parse_stream(is, what);
  for (const char* key : {"basis", "alpha", "side", "N", "entries"}) {
    if (!j.is_object() || !j.contains(key)) {
      throw InputError(std::string(what) + ": missing field '" + key + "'");
    }
  }
  OpMatrix M;
  M.basis = basis_from_json(j.at("basis"), what);
  M.alpha = j.at("alpha").get<double>();
  M.side = side_from_name(j.at("side").get<std::string>(), what);
  M.N = j.at("N").get<std::size_t>();
  const auto& rows = j.at("entries");
  if (!rows.is_array() || rows.size() != M.N + 1) {
    throw InputError(std::string(what) + ": 'entries' must hold N+1 rows");
  }
  M.entries.reserve((M.N + 1) * (M.N + 1));
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != M.N + 1) {
      throw InputError(std::string(what) + ": each row must hold N+1 numbers");
    }
    for (const auto& v : row) M.entries.push_back(v.get<double>());
  }
  return M;
}

void write_matrix_csv(const OpMatrix& M, std::ostream& os) {
  os << "# jacfrac opmatrix a=" << fmt17(M.basis.a()) << " b=" << fmt17(M.basis.b())
     << " beta=" << fmt17(M.basis.beta) << " gamma=" << fmt17(M.basis.gamma)
     << " alpha=" << fmt17(M.alpha) << " side=" << side_name(M.side) << " N=" << M.N
     << '\n';
  for (std::size_t m = 0; m <= M.N; ++m) {
    for (std::size_t n = 0; n <= M.N; ++n) {
      os << (n ? "," : "") << fmt17(M.entries[m * (M.N + 1) + n]);
    }
    os << '\n';
  }
}

OpMatrix read_matrix_csv(std::istream& is) {
  const char* what = "matrix CSV";
  std::string line;
  if (!std::getline(is, line)) throw InputError(std::string(what) + ": empty input");
  const CsvHeader h = parse_csv_header(line, what);
  if (h.tag != "opmatrix") {
    throw InputError(std::string(what) + ": expected 'opmatrix' header, got '" + h.tag + "'");
  }
  OpMatrix M;
  try {
    M.basis = JacobiBasis(h.num("a", what), h.num("b", what), h.num("beta", what),
                          h.num("gamma", what));
  } catch (const DomainError& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
  M.alpha = h.num("alpha", what);
  M.side = side_from_name(h.str("side", what), what);
  const double Nd = h.num("N", what);
  if (Nd < 0 || Nd != std::floor(Nd)) {
    throw InputError(std::string(what) + ": N must be a nonnegative integer");
  }
  M.N = static_cast<std::size_t>(Nd);
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tok = split_commas(line);
    if (tok.size() != M.N + 1) {
      throw InputError(std::string(what) + " line " + std::to_string(line_no) + ": expected " +
                       std::to_string(M.N + 1) + " entries, got " + std::to_string(tok.size()));
    }
    for (const auto& t : tok) M.entries.push_back(parse_number(t, what, line_no));
  }
  if (M.entries.size() != (M.N + 1) * (M.N + 1)) {
    throw InputError(std::string(what) + ": expected " + std::to_string(M.N + 1) +
                     " rows, got " + std::to_string(M.entries.size() / (M.N + 1)));
  }
  return M;
}

GridFunction read_grid_csv(std::istream& is) {
  const char* what = "grid CSV";
  std::vector<double> xs, ys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (xs.empty() && line.find_first_not_of(" \txy,") == std::string::npos) {
      continue;  // optional `x,y` header
    }
    const auto tok = split_commas(line);
    if (tok.size() != 2) {
      throw InputError(std::string(what) + " line " + std::to_string(line_no) +
                       ": expected two comma-separated values");
    }
    const double x = parse_number(tok[0], what, line_no);
    const double y = parse_number(tok[1], what, line_no);
    if (!xs.empty() && !(x > xs.back())) {
      throw InputError(std::string(what) + " line " + std::to_string(line_no) +
                       ": x values must be strictly increasing");
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 2) {
    throw InputError(std::string(what) + ": needs at least two data rows");
  }
  return GridFunction(std::move(xs), std::move(ys));
}

void write_grid_csv(const GridFunction& g, std::ostream& os) {
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    os << fmt17(g.x[i]) << ',' << fmt17(g.y[i]) << '\n';
  }
}

namespace {

// regime/report serialization shared by the CLI surfaces; non-finite numbers
// map to JSON null (q_bound is NaN in the p-only regime, +inf when unbounded)
ordered_json finite_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? ordered_json("inf") : ordered_json("-inf");
  return v;
}

const char* regime_name(DecayRegime r) {
  switch (r) {
    case DecayRegime::POnly:
      return "p-only";
    case DecayRegime::BoundedQ:
      return "bounded-q";
    default:
      return "unbounded-q";
  }
}

}  // namespace

std::string decay_report_json(const DecayReport& rep) {
  ordered_json j;
  j["lambda_hat"] = finite_or_null(rep.lambda_hat);
  j["s"] = rep.s;
  j["q_bound"] = finite_or_null(rep.q_bound);
  j["regime"] = regime_name(rep.regime);
  j["fit_begin"] = rep.fit_begin;
  j["fit_end"] = rep.fit_end;
  j["fit_residual"] = rep.fit_residual;
  j["skipped_zeros"] = rep.skipped_zeros;
  return j.dump();
}

std::string zm_report_json(const ZmReport& rep) {
  ordered_json j;
  j["omega_q"] = finite_or_null(rep.omega_q);
  j["convergent"] = rep.convergent;
  j["exponent"] = finite_or_null(rep.exponent);
  j["lambda_hat"] = finite_or_null(rep.lambda_hat);
  return j.dump();
}

}  // namespace jacfrac::io
