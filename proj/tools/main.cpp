#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "latefuse/bench.hpp"

namespace {

std::string render_eval(const latefuse::EvalReport& report, const std::string& format) {
  if (format == "json") {
    return latefuse::eval_report_json("eval", "-", report) + "\n";
  }
  if (format == "md") {
    latefuse::ExperimentResult single;
    single.cells.push_back({"-", "eval", report});
    return latefuse::results_markdown(single);
  }
  return latefuse::eval_csv_header() + "\n" + latefuse::eval_csv_row("eval", "-", report) +
         "\n";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Late collaborative 3D object fusion benchmark"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed/--out-dir/--format may follow the subcommand

  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  app.add_option("--seed", seed, "Override the seed from the config or scene spec");
  app.add_option("--out-dir", out_dir, "Override the output directory");
  app.add_option("--format", format, "Table format for stdout and result files")
      ->check(CLI::IsMember({"csv", "md", "json"}));

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the benchmark grid described by a config file");
  run->add_option("config", config_path, "Experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);

  std::string scene_path;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a pseudo-collaborative dataset");
  gen->add_option("scene-spec", scene_path, "Scene spec (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  gen->add_option("out", gen_out, "Output directory for gt/agent JSONL files");

  std::string pred_path;
  std::string gt_path;
  auto* eval = app.add_subcommand("eval", "Evaluate fused predictions against annotations");
  eval->add_option("pred", pred_path, "Fused predictions (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("gt", gt_path, "Ground-truth annotations (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      latefuse::ExperimentConfig cfg = latefuse::config_from_json_file(config_path);
      if (seed) cfg.seed = *seed;
      if (out_dir) cfg.out_dir = *out_dir;
      if (format) cfg.format = *format;
      const latefuse::ExperimentResult result = latefuse::run_experiment(cfg);
      latefuse::write_results(result, cfg);
      if (cfg.format == "md") {
        std::cout << latefuse::results_markdown(result);
      } else if (cfg.format == "json") {
        std::cout << latefuse::results_json(result);
      } else {
        std::cout << latefuse::results_csv(result);
      }
    } else if (*gen) {
      latefuse::GenRequest req = latefuse::gen_request_from_json_file(scene_path);
      if (seed) req.seed = *seed;
      std::string dir = gen_out;
      if (dir.empty()) dir = out_dir.value_or(".");
      latefuse::write_dataset_files(req, dir);
    } else if (*eval) {
      const latefuse::EvalReport report = latefuse::evaluate_files(pred_path, gt_path);
      const std::string text = render_eval(report, format.value_or("csv"));
      std::cout << text;
      if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        const std::string ext = format.value_or("csv") == "md" ? "md" : format.value_or("csv");
        write_file(std::filesystem::path(*out_dir) / ("eval." + ext), text);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
