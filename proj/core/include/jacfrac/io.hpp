#pragma once

#include <iosfwd>
#include <string>

#include "jacfrac/abel.hpp"
#include "jacfrac/opmatrix.hpp"
#include "jacfrac/quadrature.hpp"

// Serialization: JSON is the canonical format (numbers round-trip
// bit-exactly); CSV is the interop format (17 significant digits).  All
// readers throw InputError with enough context to locate the problem.
namespace jacfrac::io {

// {"basis":{"a":..,"b":..,"beta":..,"gamma":..},"coeffs":[..]}
void write_coeffs_json(const CoeffVector& c, std::ostream& os);
CoeffVector read_coeffs_json(std::istream& is);

// header line `# jacfrac coeffs a=.. b=.. beta=.. gamma=.. N=..`,
// then one `index,value` row per coefficient
void write_coeffs_csv(const CoeffVector& c, std::ostream& os);
CoeffVector read_coeffs_csv(std::istream& is);

// {"basis":{..},"alpha":..,"side":"left"|"right","N":..,"entries":[[row]..]}
void write_matrix_json(const OpMatrix& M, std::ostream& os);
OpMatrix read_matrix_json(std::istream& is);

// header line `# jacfrac opmatrix a=.. b=.. beta=.. gamma=.. alpha=.. side=.. N=..`,
// then N+1 comma-separated row-major rows
void write_matrix_csv(const OpMatrix& M, std::ostream& os);
OpMatrix read_matrix_csv(std::istream& is);

// two columns `x,y`; `#`-comment lines and an optional `x,y` header allowed;
// x must be strictly increasing (errors name the offending line)
GridFunction read_grid_csv(std::istream& is);
void write_grid_csv(const GridFunction& g, std::ostream& os);

// report serializers used by the CLI (JSON object strings)
std::string decay_report_json(const DecayReport& rep);
std::string zm_report_json(const ZmReport& rep);

}  // namespace jacfrac::io
