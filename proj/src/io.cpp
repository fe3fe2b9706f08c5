#include "ghlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace ghlab::io {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

Json representation_to_json(const rep::SurfaceRepresentation& r) {
  const auto& p = r.presentation();
  Json gens = Json::object();
  for (int k = 0; k < r.generator_count(); ++k) {
    const auto& m = r.generators()[k].mat();
    gens[p.generator_names[k]] = {m.a, m.b, m.c, m.d};
  }
  Json rel = Json::array();
  for (int l : p.relator) rel.push_back(rep::signed_from_letter(l, p.generator_count()));
  return Json{{"genus", p.genus}, {"generators", gens}, {"relator", rel}, {"residual", r.residual()}};
}

rep::SurfaceRepresentation representation_from_json(const Json& j) {
  try {
    rep::Presentation p;
    p.genus = j.at("genus").get<int>();
    std::vector<lie::SL2Element> mats;
    for (const auto& [name, v] : j.at("generators").items()) {
      const auto e = v.get<std::vector<double>>();
      if (e.size() != 4) throw InvalidArgument("generator " + name + " needs 4 entries");
      p.generator_names.push_back(name);
      mats.emplace_back(e[0], e[1], e[2], e[3]);
    }
    const int n = p.generator_count();
    for (int s : j.at("relator").get<std::vector<int>>())
      p.relator.push_back(rep::letter_from_signed(s, n));
    p.validate();
    return rep::SurfaceRepresentation(p, mats);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("representation document: ") + e.what());
  } catch (const ValidationError& e) {
    throw InvalidArgument(std::string("representation document: ") + e.what());
  }
}

void write_representation(const std::string& path, const rep::SurfaceRepresentation& r) {
  write_text(path, representation_to_json(r).dump(2) + "\n");
}

rep::SurfaceRepresentation read_representation(const std::string& path) {
  return representation_from_json(read_json(path));
}

namespace {

std::string g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_spectrum_csv(std::ostream& out, const spectrum::LengthSpectrum& spec) {
  out << "word,tr_L,tr_R,len_L,len_R,len\n";
  for (const auto& e : spec.entries) {
    out << words::format_word(e.word, spec.generator_names) << ',' << g12(e.tr_left) << ','
        << g12(e.tr_right) << ',' << g12(e.len_left) << ',' << g12(e.len_right) << ','
        << g12(e.len) << '\n';
  }
}

void write_spectrum_csv(const std::string& path, const spectrum::LengthSpectrum& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  write_spectrum_csv(out, spec);
}

spectrum::LengthSpectrum read_spectrum_csv(std::istream& in) {
  spectrum::LengthSpectrum spec;
  spec.generator_names = rep::standard_presentation(2).generator_names;
  std::string line;
  if (!std::getline(in, line) || line.rfind("word,tr_L,tr_R,len_L,len_R,len", 0) != 0)
    throw InvalidArgument("spectrum CSV: missing header");
  double cmin = std::numeric_limits<double>::infinity();
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string word, cell;
    std::getline(ss, word, ',');
    spectrum::SpectrumEntry e;
    double* fields[] = {&e.tr_left, &e.tr_right, &e.len_left, &e.len_right, &e.len};
    for (double* f : fields) {
      if (!std::getline(ss, cell, ',')) throw InvalidArgument("spectrum CSV: short row " + std::to_string(row));
      try {
        std::size_t used = 0;
        *f = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw InvalidArgument("spectrum CSV: bad number in row " + std::to_string(row));
      }
    }
    e.word = words::parse_word(word, spec.generator_names);
    spec.max_word_len = std::max(spec.max_word_len, static_cast<int>(e.word.size()));
    if (e.word.size() == 1) cmin = std::min(cmin, e.len);
    spec.entries.push_back(std::move(e));
  }
  if (std::isfinite(cmin)) spec.min_generator_length = cmin;
  return spec;
}

spectrum::LengthSpectrum read_spectrum_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return read_spectrum_csv(in);
}

GraphDocument graph_from_json(const Json& j) {
  try {
    const int n = j.at("vertices").get<int>();
    std::vector<thermo::Edge> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({e.at("id").get<int>(), e.at("tail").get<int>(), e.at("head").get<int>()});
    }
    GraphDocument doc{thermo::MarkovShift(n, std::move(edges)), std::nullopt};
    if (j.contains("potential")) {
      thermo::EdgeFunction g = thermo::EdgeFunction::Zero(doc.shift.edge_count());
      std::vector<char> seen(g.size(), 0);
      for (const auto& [key, v] : j.at("potential").items()) {
        int id = 0;
        try {
          id = std::stoi(key);
        } catch (const std::exception&) {
          throw InvalidArgument("graph document: potential key is not an edge id: " + key);
        }
        const int i = doc.shift.index_of(id);
        g[i] = v.get<double>();
        seen[i] = 1;
      }
      for (char s : seen)
        if (!s) throw InvalidArgument("graph document: potential misses an edge");
      doc.potential = g;
    }
    return doc;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("graph document: ") + e.what());
  } catch (const ValidationError& e) {
    throw InvalidArgument(std::string("graph document: ") + e.what());
  }
}

GraphDocument read_graph(const std::string& path) { return graph_from_json(read_json(path)); }

Json graph_to_json(const thermo::MarkovShift& shift,
                   const std::optional<thermo::EdgeFunction>& potential) {
  Json edges = Json::array();
  for (const auto& e : shift.edges()) edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
  Json j{{"vertices", shift.vertex_count()}, {"edges", edges}};
  if (potential) {
    Json pot = Json::object();
    for (int i = 0; i < shift.edge_count(); ++i) pot[std::to_string(shift.edges()[i].id)] = (*potential)[i];
    j["potential"] = pot;
  }
  return j;
}

Json patch_report_to_json(const ads::PatchReport& r) {
  auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  return Json{{"patch", {r.patch.x0(), r.patch.x1(), r.patch.y0(), r.patch.y1()}},
              {"phi", r.phi},
              {"h", r.patch.h()},
              {"residual_d_max", num(r.residual_d_max)},
              {"residual_delta_max", num(r.residual_delta_max)},
              {"residual_d_refined", num(r.residual_d_refined)},
              {"residual_delta_refined", num(r.residual_delta_refined)},
              {"convergence_ratio_d", num(r.convergence_ratio_d)},
              {"convergence_ratio", num(r.convergence_ratio)}};
}

}  // namespace ghlab::io
