#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "ghlab/io.hpp"

using namespace ghlab;

TEST_CASE("representation round trip") {
  const auto r = rep::octagon_fuchsian();
  const auto back = io::representation_from_json(io::Json::parse(io::representation_to_json(r).dump(2)));
  CHECK(back.presentation() == r.presentation());
  for (int k = 0; k < 4; ++k) CHECK(back.generators()[k].mat() == r.generators()[k].mat());

  const auto path = std::filesystem::temp_directory_path() / "ghlab_io_rep.json";
  io::write_representation(path.string(), r);
  const auto file = io::read_representation(path.string());
  CHECK(file.generators()[3].mat() == r.generators()[3].mat());
  std::filesystem::remove(path);
}

TEST_CASE("malformed representation documents") {
  auto j = io::representation_to_json(rep::octagon_fuchsian());
  auto bad = j;
  bad["generators"]["g0"] = {1, 2, 3};
  CHECK_THROWS_AS(io::representation_from_json(bad), InvalidArgument);
  bad = j;
  bad["generators"]["g0"] = {2, 0, 0, 2};
  CHECK_THROWS_AS(io::representation_from_json(bad), InvalidArgument);
  bad = j;
  bad.erase("relator");
  CHECK_THROWS_AS(io::representation_from_json(bad), InvalidArgument);
  CHECK_THROWS_AS(io::read_representation("/nonexistent/rep.json"), InvalidArgument);
}

TEST_CASE("spectrum CSV") {
  const auto r = rep::octagon_fuchsian();
  const auto s = spectrum::enumerate_classes(spectrum::GHPair(r, r), 3);
  std::stringstream buf;
  io::write_spectrum_csv(buf, s);
  const std::string text = buf.str();
  CHECK(text.rfind("word,tr_L,tr_R,len_L,len_R,len\n", 0) == 0);

  const auto back = io::read_spectrum_csv(buf);
  REQUIRE(back.entries.size() == s.entries.size());
  CHECK(back.max_word_len == 3);
  CHECK(back.min_generator_length == doctest::Approx(s.min_generator_length).epsilon(1e-11));
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    CHECK(back.entries[i].word == s.entries[i].word);
    CHECK(back.entries[i].len == doctest::Approx(s.entries[i].len).epsilon(1e-11));
  }
  std::stringstream again;
  io::write_spectrum_csv(again, back);
  CHECK(again.str() == text);

  std::stringstream bad("word,tr_L,tr_R,len_L,len_R,len\ng0,1,2,x,4,5\n");
  CHECK_THROWS_AS(io::read_spectrum_csv(bad), InvalidArgument);
  std::stringstream header("nope\n");
  CHECK_THROWS_AS(io::read_spectrum_csv(header), InvalidArgument);
}

TEST_CASE("graph documents") {
  const auto j = io::Json::parse(R"({"vertices": 1, "edges": [{"id": 4, "tail": 0, "head": 0},
                                     {"id": 9, "tail": 0, "head": 0}], "potential": {"9": -1, "4": 0.5}})");
  const auto doc = io::graph_from_json(j);
  CHECK(doc.shift.edge_count() == 2);
  REQUIRE(doc.potential.has_value());
  CHECK((*doc.potential)[doc.shift.index_of(4)] == 0.5);
  CHECK((*doc.potential)[doc.shift.index_of(9)] == -1);
  const auto again = io::graph_from_json(io::graph_to_json(doc.shift, doc.potential));
  CHECK(*again.potential == *doc.potential);

  auto bad = j;
  bad["potential"].erase("9");
  CHECK_THROWS_AS(io::graph_from_json(bad), InvalidArgument);
  bad = j;
  bad["edges"][0]["head"] = 3;
  CHECK_THROWS_AS(io::graph_from_json(bad), InvalidArgument);
  CHECK_THROWS_AS(io::graph_from_json(io::Json::parse(R"({"vertices": 2, "edges": [{"id": 0, "tail": 0, "head": 1}]})")),
                  InvalidArgument);
}

TEST_CASE("patch report document") {
  const auto r = ads::harmonicity_report(ads::GridPatch::unit(8), ads::Polynomial{{ads::Complex(1)}});
  const auto j = io::patch_report_to_json(r);
  CHECK(j.at("h").get<double>() == 0.125);
  CHECK(j.contains("convergence_ratio"));
  CHECK(j.at("phi").get<std::string>() == r.phi);
}
