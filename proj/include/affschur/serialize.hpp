#pragma once

// JSON and inline text forms of the library's values, and rendering of a JSON
// document as json, pretty text or csv.
//
// Polynomials are objects {"exp": "coeff"} in powers of t (q = t^2), with
// coefficients as decimal strings.  Term lists follow the canonical orders
// (length, window) for group elements and theta_less for matrices, and object
// keys are sorted, so output is byte-stable.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "affschur/affperm.hpp"
#include "affschur/asympt.hpp"
#include "affschur/hecke.hpp"
#include "affschur/laurent.hpp"
#include "affschur/parabolic.hpp"
#include "affschur/schur.hpp"

namespace affschur {

using json = nlohmann::json;

enum class OutputFormat { Json, Pretty, Csv };
std::string to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& s);

/// Polynomials as JSON objects, or as "1 + t^2" strings for pretty output.
json poly_json(const LaurentPoly& p, OutputFormat fmt = OutputFormat::Json);
LaurentPoly poly_from_json(const json& j);

// Input.  Every parser accepts inline syntax, a JSON document, or "@path" to
// read the JSON document from a file.  Malformed input raises DomainError.

/// "a,b,c" or "a,b,c^k" (rho^k applied on the left), "[a,b,c]" or
/// {"r":3,"window":[a,b,c]}.  r, when given, must match the window length.
AffPerm parse_window(const std::string& text, std::optional<int> r = {});
/// "i,j,k" or "[i,j,k]": a list of generator indices.
std::vector<int> parse_int_list(const std::string& text);
/// "2,0,1", "[2,0,1]" or {"n":3,"parts":[2,0,1]}.
Composition parse_composition(const std::string& text);
/// "row,col,val;row,col,val" (needs n) or {"n":2,"entries":[[row,col,val],...]}.
PeriodicMatrix parse_matrix(const std::string& text, std::optional<int> n = {});
HeckeElt parse_hecke(const std::string& text);
SchurElt parse_schur(const std::string& text);

// Output.

json window_json(const AffPerm& w);
json composition_json(const Composition& c);
json matrix_json(const PeriodicMatrix& a);
json hecke_json(const HeckeElt& h, OutputFormat fmt = OutputFormat::Json);
json schur_json(const SchurElt& s, OutputFormat fmt = OutputFormat::Json);
json avalue_json(const AValue& a);
json check_json(const CheckResult& c);

json j_json(const JWElt& e);
json j_json(const JSchurElt& e);
json j_json(const JWPoly& e, OutputFormat fmt = OutputFormat::Json);
json j_json(const JSchurPoly& e, OutputFormat fmt = OutputFormat::Json);

json cell_report_json(const CellReport<AffPerm>& rep);
json cell_report_json(const CellReport<PeriodicMatrix>& rep);

/// json: one compact line.  pretty: indented "key: value" text.  csv: one
/// "key,value" row per leaf, keys being dotted paths.
std::string render(const json& doc, OutputFormat fmt);

}  // namespace affschur
