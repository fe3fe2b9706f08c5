#pragma once

// File formats: representation and graph documents (JSON), spectrum CSV and
// patch reports. Malformed input throws InvalidArgument.

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "ghlab/ads_metric.hpp"
#include "ghlab/spectrum.hpp"
#include "ghlab/surface_rep.hpp"
#include "ghlab/thermo.hpp"

namespace ghlab::io {

using Json = nlohmann::ordered_json;

/// {genus, generators: {name: [a, b, c, d]}, relator: [signed], residual}
Json representation_to_json(const rep::SurfaceRepresentation& rep);
rep::SurfaceRepresentation representation_from_json(const Json& j);

void write_representation(const std::string& path, const rep::SurfaceRepresentation& rep);
rep::SurfaceRepresentation read_representation(const std::string& path);

/// Header word,tr_L,tr_R,len_L,len_R,len; 12 significant digits.
void write_spectrum_csv(std::ostream& out, const spectrum::LengthSpectrum& spec);
void write_spectrum_csv(const std::string& path, const spectrum::LengthSpectrum& spec);

/// Reads rows back. max_word_len is the longest word in the file and
/// min_generator_length the smallest len among one-letter rows (NaN if none).
spectrum::LengthSpectrum read_spectrum_csv(std::istream& in);
spectrum::LengthSpectrum read_spectrum_csv(const std::string& path);

struct GraphDocument {
  thermo::MarkovShift shift;
  std::optional<thermo::EdgeFunction> potential;
};

/// {vertices: n, edges: [{id, tail, head}], potential: {"id": value}}
GraphDocument graph_from_json(const Json& j);
GraphDocument read_graph(const std::string& path);
Json graph_to_json(const thermo::MarkovShift& shift,
                   const std::optional<thermo::EdgeFunction>& potential = std::nullopt);

/// {patch, h, residual_d_max, residual_delta_max, convergence_ratio, ...}
Json patch_report_to_json(const ads::PatchReport& r);

/// Reads a whole file; throws InvalidArgument if it cannot be opened.
std::string read_file(const std::string& path);
Json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace ghlab::io
