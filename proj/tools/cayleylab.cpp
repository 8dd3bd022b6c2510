#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lab/report.hpp"
#include "lab/zoo.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

lab::Constants load_constants(const std::string& path) {
  lab::Constants c;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constants file: " + path);
  json doc = json::parse(in);
  if (doc.contains("a_pad")) c.a_pad = doc["a_pad"];
  if (doc.contains("k_cover")) c.k_cover = doc["k_cover"];
  if (doc.contains("k_mult")) c.k_mult = doc["k_mult"];
  if (doc.contains("k_ksc")) c.k_ksc = doc["k_ksc"];
  if (doc.contains("meassym")) c.meassym = doc["meassym"];
  if (doc.contains("k_rep")) c.k_rep = doc["k_rep"];
  if (doc.contains("minmax_tripwire")) c.minmax_tripwire = doc["minmax_tripwire"];
  if (doc.contains("tol_cluster")) c.tol_cluster = doc["tol_cluster"];
  return c;
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

std::vector<std::pair<std::string, json>> load_zoo(const std::string& dir) {
  if (dir.empty()) return lab::builtin_zoo();
  std::vector<std::pair<std::string, json>> zoo;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    std::ifstream in(p);
    zoo.emplace_back(p.stem().string(), json::parse(in));
  }
  if (zoo.empty()) throw std::runtime_error("no .json group specs in " + dir);
  return zoo;
}

int run_analyze(const std::string& spec_path, const lab::AnalyzeOptions& opt,
                const std::string& out_dir) {
  lab::GroupSpec spec = lab::parse_group_spec_file(spec_path);
  json report = lab::analyze_group(spec, opt);
  const std::string body = report.dump(2) + "\n";
  if (out_dir.empty()) {
    std::cout << body;
  } else {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_file(dir / "report.json", body);

    // Recompute the cheap artifacts for the CSV sidecars.
    lab::BuiltGroup built = lab::build_group(spec);
    lab::CayleyGraph x = lab::build_cayley(built.group, built.gens);
    lab::DoublingProfile prof = lab::doubling_profile(x.graph);
    write_file(dir / "ball_profile.csv", lab::ball_profile_csv(prof));
    lab::Spectrum sp =
        lab::full_spectrum(lab::assemble_laplacian(x.graph), opt.constants.tol_cluster);
    write_file(dir / "spectrum.csv", lab::spectrum_csv(sp));
    lab::PoincareEstimate pest =
        lab::global_poincare(x.graph, lab::default_radius_grid(x.graph), {0});
    write_file(dir / "poincare.csv", lab::poincare_csv(pest));
    if (x.graph.diameter >= 8) {
      lab::PaddingReport pad = lab::padding_probability_test(
          x.graph, x.graph.diameter / 2.0, opt.constants.a_pad, opt.samples, opt.seed,
          prof.c_real);
      write_file(dir / "padding.csv", lab::padding_csv(pad));
    }
    std::cout << "wrote " << (dir / "report.json").string() << "\n";
  }
  return report["all_pass"].get<bool>() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley graph analysis laboratory"};
  app.require_subcommand(1);

  std::string spec_path, out_dir, constants_path, suite, zoo_dir, emit_dir, zoo_cmd;
  lab::AnalyzeOptions opt;

  auto* analyze = app.add_subcommand("analyze", "full report for one group spec");
  analyze->add_option("spec", spec_path, "group spec json file")->required();
  analyze->add_option("--seed", opt.seed, "prng seed");
  analyze->add_option("--k", opt.cert_k, "eigenvalue cluster for the certificate");
  analyze->add_option("--delta", opt.delta, "fixed cover scale (0 = halving search)");
  analyze->add_option("--samples", opt.samples, "monte carlo samples");
  analyze->add_option("--constants", constants_path, "json file overriding constants");
  analyze->add_option("--out", out_dir, "directory for report.json + csv sidecars");

  auto* verify = app.add_subcommand("verify", "invariant suite over a spec batch");
  verify->add_option("suite", suite,
                     "stokes | reverse-poincare | padding | minmax | action | all")
      ->required();
  verify->add_option("zoo_dir", zoo_dir, "directory of spec json files (default: builtin)");
  verify->add_option("--seed", opt.seed, "prng seed");
  verify->add_option("--samples", opt.samples, "monte carlo samples");
  verify->add_option("--constants", constants_path, "json file overriding constants");

  auto* zoo = app.add_subcommand("zoo", "builtin spec batch");
  zoo->add_option("action", zoo_cmd, "list | emit")->required();
  zoo->add_option("dir", emit_dir, "target directory for emit");

  CLI11_PARSE(app, argc, argv);

  try {
    opt.constants = load_constants(constants_path);
    if (analyze->parsed()) return run_analyze(spec_path, opt, out_dir);
    if (verify->parsed()) {
      json out = lab::verify_suite(suite, load_zoo(zoo_dir), opt);
      std::cout << out.dump(2) << "\n";
      return out["pass"].get<bool>() ? 0 : 2;
    }
    // zoo
    auto entries = lab::builtin_zoo();
    if (zoo_cmd == "list") {
      for (const auto& [name, doc] : entries) std::cout << name << "\n";
      return 0;
    }
    if (zoo_cmd == "emit") {
      if (emit_dir.empty()) throw std::runtime_error("zoo emit needs a directory");
      fs::create_directories(emit_dir);
      for (const auto& [name, doc] : entries)
        write_file(fs::path(emit_dir) / (name + ".json"), doc.dump(2) + "\n");
      std::cout << "wrote " << entries.size() << " specs to " << emit_dir << "\n";
      return 0;
    }
    throw std::runtime_error("unknown zoo action: " + zoo_cmd);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
