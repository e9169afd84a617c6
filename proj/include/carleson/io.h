#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "carleson/halfplane.h"
#include "carleson/harness.h"
#include "carleson/measure.h"
#include "carleson/spaces.h"
#include "carleson/spectral.h"
#include "carleson/sumnorm.h"

namespace carleson::io {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the line or the offending field.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);
void write_json(std::ostream& out, const Json& value);

/// A number, with ±∞ encoded as the strings "inf" and "-inf".
Json number(double x);
double to_number(const Json& value, const std::string& where);

RadialMeasure radial_measure_from_json(const Json& doc);
VerticalMeasure vertical_measure_from_json(const Json& doc);
LineMeasure line_measure_from_json(const Json& doc);

Json to_json(const RadialMeasure& mu);
Json to_json(const VerticalMeasure& pi);
Json to_json(const LineMeasure& nu);

Json to_json(const CoeffVector& u);
CoeffVector coeff_vector_from_json(const Json& doc);

/// Grid samples as {"m", "re", "im"}.
Json to_json(const GridFunction& g);

Json to_json(const BandSignal& g);
BandSignal band_signal_from_json(const Json& doc);

Json to_json(const NormReport& report);
Json to_json(const CertifiedNorm& norm);
Json to_json(const CarlesonVerdict& verdict);
Json to_json(const InequalityReport& report);
Json to_json(const std::vector<FejerRow>& rows);
Json to_json(const GarnettReport& report);
Json to_json(const FourierCheck& check);

/// Comma-separated table with a header row; numbers are printed round-trip exact.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
/// Whitespace-separated two-column data for plotting.
void write_columns(std::ostream& out, std::span<const double> x, std::span<const double> y);

std::string format_number(double x);

}  // namespace carleson::io
