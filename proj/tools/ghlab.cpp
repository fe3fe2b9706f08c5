// ghlab: batch front end. Exit codes: 0 ok, 1 check failed, 2 usage or data
// error, 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ghlab/ads_metric.hpp"
#include "ghlab/errors.hpp"
#include "ghlab/io.hpp"
#include "ghlab/spectrum.hpp"
#include "ghlab/surface_rep.hpp"
#include "ghlab/thermo.hpp"
#include "ghlab/verify.hpp"

using namespace ghlab;
using io::Json;

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidArgument("not a number list: " + s);
    }
  }
  return out;
}

spectrum::Window parse_window(const std::string& s) {
  const auto pos = s.find(':');
  if (pos == std::string::npos) throw InvalidArgument("window must be lo:hi");
  try {
    return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
  } catch (const std::exception&) {
    throw InvalidArgument("window must be lo:hi");
  }
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

struct PairSource {
  std::string rep;
  std::string right;
  double bend = 0;
  std::uint64_t seed = 0;

  void add(CLI::App* app) {
    app->add_option("--rep", rep, "representation file (left factor)")->required();
    app->add_option("--right", right, "right factor (default: same as --rep)");
    app->add_option("--bend", bend, "pure bending of --rep by this amount");
    app->add_option("--seed", seed, "seed of the bending direction");
  }

  rep::GHPair load() const {
    const auto left = io::read_representation(rep);
    if (bend != 0) {
      if (!right.empty()) throw InvalidArgument("--bend and --right are exclusive");
      return rep::pure_bending_path(left, rep::random_direction(left, seed), bend);
    }
    return rep::GHPair(left, right.empty() ? left : io::read_representation(right));
  }
};

thermo::EdgeFunction edge_values(const thermo::MarkovShift& shift, const std::string& list) {
  const auto v = parse_list(list);
  if (static_cast<int>(v.size()) != shift.edge_count())
    throw InvalidArgument("expected " + std::to_string(shift.edge_count()) + " edge values");
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ghlab: length spectra, entropy and metric identities for GH pairs"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  // rep
  auto* rep_cmd = app.add_subcommand("rep", "build or deform representations");
  rep_cmd->require_subcommand(1);
  std::string rep_type = "octagon", rep_out, rep_in;
  double rep_t = 0;
  std::uint64_t rep_seed = 0;
  auto* build = rep_cmd->add_subcommand("build", "Fuchsian base point");
  build->add_option("--type", rep_type)->check(CLI::IsMember({"octagon"}));
  build->add_option("-o,--output", rep_out)->required();
  auto* deform = rep_cmd->add_subcommand("deform", "Newton-projected deformation");
  deform->add_option("--input", rep_in)->required();
  deform->add_option("--t", rep_t)->required();
  deform->add_option("--seed", rep_seed);
  deform->add_option("-o,--output", rep_out)->required();

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "enumerate the marked length spectrum");
  PairSource spec_src;
  spec_src.add(spec_cmd);
  int max_len = 8;
  std::string spec_out;
  spec_cmd->add_option("--max-len", max_len, "maximal word length")->check(CLI::Range(0, 12));
  spec_cmd->add_option("-o,--output", spec_out)->required();

  // entropy
  auto* ent_cmd = app.add_subcommand("entropy", "entropy estimate from a spectrum CSV");
  std::string ent_in, ent_window;
  int samples = 41;
  ent_cmd->add_option("--spectrum", ent_in)->required();
  ent_cmd->add_option("--window", ent_window, "lo:hi (default: cutoff rule)");
  ent_cmd->add_option("--samples", samples);

  // bending-test
  auto* bend_cmd = app.add_subcommand("bending-test", "length derivatives along pure bending");
  std::string bend_rep;
  std::uint64_t bend_seed = 0;
  int directions = 5, bend_len = 6;
  double eps = 1e-4;
  bend_cmd->add_option("--rep", bend_rep)->required();
  bend_cmd->add_option("--seed", bend_seed, "first direction seed");
  bend_cmd->add_option("--directions", directions);
  bend_cmd->add_option("--eps", eps);
  bend_cmd->add_option("--max-len", bend_len)->check(CLI::Range(0, 12));

  // proportionality-test
  auto* prop_cmd = app.add_subcommand("proportionality-test", "fit dlen = k len along a path");
  PairSource prop_src;
  prop_src.add(prop_cmd);
  std::uint64_t prop_seed = 0;
  double prop_eps = 1e-3;
  int prop_len = 6;
  prop_cmd->add_option("--direction-seed", prop_seed, "seed of the tangent directions");
  prop_cmd->add_option("--eps", prop_eps);
  prop_cmd->add_option("--max-len", prop_len)->check(CLI::Range(0, 12));

  // thermo
  auto* th_cmd = app.add_subcommand("thermo", "pressure and entropy on a Markov shift");
  std::string graph, roof, form_dir;
  bool solve_entropy = false, brute = false, project = false;
  th_cmd->add_option("--graph", graph)->required();
  th_cmd->add_option("--roof", roof, "roof function values, edge order");
  th_cmd->add_flag("--solve-entropy", solve_entropy);
  th_cmd->add_flag("--brute-force", brute, "entropy by counting periodic points");
  th_cmd->add_option("--form-direction", form_dir,
                     "pressure form at F = -h f (or the file potential) in this direction");
  th_cmd->add_flag("--project", project, "project the direction onto the tangent space first");

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "identity and acceptance checks");
  std::string suite = "identities";
  std::vector<int> only;
  std::uint64_t ver_seed = 0;
  ver_cmd->add_option("--suite", suite);
  ver_cmd->add_option("--criterion", only, "run these criteria instead of a suite");
  ver_cmd->add_option("--seed", ver_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*rep_cmd) {
      if (*build) {
        const auto r = rep::octagon_fuchsian();
        io::write_representation(rep_out, r);
        std::printf("residual %.3e\n", r.residual());
      } else {
        const auto base = io::read_representation(rep_in);
        const auto r = rep::deform(base, rep::random_direction(base, rep_seed), rep_t);
        io::write_representation(rep_out, r);
        std::printf("residual %.3e\n", r.residual());
      }
    } else if (*spec_cmd) {
      const auto s = spectrum::enumerate_classes(spec_src.load(), max_len, threads);
      io::write_spectrum_csv(spec_out, s);
      std::printf("classes %zu\n", s.entries.size());
    } else if (*ent_cmd) {
      const auto s = io::read_spectrum_csv(ent_in);
      const auto w = ent_window.empty() ? spectrum::suggest_window(s) : parse_window(ent_window);
      const auto e = spectrum::entropy_estimate(s, w, samples);
      print(Json{{"value", e.value}, {"stderr", e.slope_stderr}, {"window", {e.window.lo, e.window.hi}},
                 {"samples", e.sample_count}});
    } else if (*bend_cmd) {
      const auto base = io::read_representation(bend_rep);
      Json rows = Json::array();
      double worst = 0;
      for (int k = 0; k < directions; ++k) {
        const auto r = spectrum::bending_derivative_test(
            base, rep::random_direction(base, bend_seed + k), eps, bend_len);
        worst = std::max(worst, r.max_rel_derivative);
        rows.push_back({{"seed", bend_seed + k}, {"max_rel_derivative", r.max_rel_derivative},
                        {"classes", r.class_count}});
      }
      print(Json{{"max_rel_derivative", worst}, {"directions", rows}});
    } else if (*prop_cmd) {
      const auto pair = prop_src.load();
      const auto vl = rep::random_direction(pair.left, prop_seed + 1000);
      const auto vr = rep::random_direction(pair.right, prop_seed + 2000);
      const rep::PairPath path = [&](double e) {
        if (e == 0) return pair;
        return rep::GHPair(rep::deform(pair.left, vl, e), rep::deform(pair.right, vr, e));
      };
      const auto r = spectrum::proportionality_test(path, prop_eps, prop_len);
      print(Json{{"k_fit", r.k_fit}, {"rel_residual", r.rel_residual}, {"fd_error", r.fd_error},
                 {"classes", r.class_count}});
    } else if (*th_cmd) {
      const auto doc = io::read_graph(graph);
      const auto& shift = doc.shift;
      Json out;
      std::optional<thermo::EdgeFunction> f;
      if (!roof.empty()) f = edge_values(shift, roof);
      if (doc.potential) out["pressure"] = thermo::pressure(shift, *doc.potential);
      if (solve_entropy || brute || !form_dir.empty()) {
        if (!f) throw InvalidArgument("--roof is required for entropy and the pressure form");
      }
      double h = 0;
      if (f) {
        h = thermo::entropy_root(shift, *f);
        if (solve_entropy) out["entropy"] = h;
      }
      if (brute) {
        const double t = thermo::brute_force_horizon(shift, *f);
        out["brute_force_entropy"] = thermo::brute_force_entropy(shift, *f, t);
        out["horizon"] = t;
      }
      if (!form_dir.empty()) {
        const thermo::EdgeFunction big = doc.potential ? *doc.potential : thermo::EdgeFunction(-h * *f);
        thermo::EdgeFunction g = edge_values(shift, form_dir);
        if (project) g = thermo::tangent_projection(shift, big, g);
        out["pressure_form"] = thermo::pressure_form(shift, big, g);
      }
      if (!f && !doc.potential) out["pressure_zero_potential"] =
          thermo::pressure(shift, thermo::EdgeFunction::Zero(shift.edge_count()));
      std::cout << out.dump(2) << '\n';
    } else if (*ver_cmd) {
      const auto ids = only.empty() ? verify::suite_ids(suite) : only;
      verify::Options opt{ver_seed, threads};
      bool ok = true;
      for (int id : ids) {
        const auto c = verify::run_criterion(id, opt);
        std::printf("[%2d] %s  %s  (%.2f s)\n", c.id, c.passed() ? "PASS" : "FAIL", c.title.c_str(),
                    c.seconds);
        std::fputs(verify::format_rows(c).c_str(), stdout);
        ok = ok && c.passed();
      }
      return ok ? 0 : 1;
    }
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const Overflow& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
