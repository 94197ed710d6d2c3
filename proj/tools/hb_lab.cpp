// hb-lab: run space specs and reproduce the built-in examples.
// Exit codes: 0 all expectations met, 1 mathematical mismatch, 2 input error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hblab/corpus.hpp"
#include "hblab/runner.hpp"
#include "hblab/spec_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw hblab::ParseError("cannot write '" + path.string() + "'");
  out << text;
}

int analyze(const std::string& spec_path, const std::string& out_dir, const hblab::RunOptions& options) {
  const hblab::SpaceSpec spec = hblab::load_space_spec(spec_path);
  const nlohmann::json report = hblab::run_spec(spec, options);
  const std::string summary = hblab::summarize(report);
  if (out_dir.empty()) {
    std::cout << report.dump(2) << "\n";
    return kOk;
  }
  std::filesystem::create_directories(out_dir);
  write_file(std::filesystem::path(out_dir) / "report.json", report.dump(2) + "\n");
  write_file(std::filesystem::path(out_dir) / "summary.txt", summary);
  std::cout << summary;
  return kOk;
}

int reproduce(const std::string& id, bool as_json, const hblab::RunOptions& options) {
  std::vector<const hblab::Example*> chosen;
  if (id == "all") {
    for (const auto& e : hblab::corpus()) chosen.push_back(&e);
  } else {
    chosen.push_back(&hblab::find_example(id));
  }
  bool all_pass = true;
  nlohmann::json runs = nlohmann::json::array();
  for (const auto* e : chosen) {
    const hblab::Reproduction r = hblab::reproduce(*e, options);
    all_pass = all_pass && r.pass();
    if (as_json) {
      runs.push_back(r.to_json());
      continue;
    }
    std::size_t passed = 0;
    for (const auto& c : r.checks) {
      passed += c.pass;
      if (c.pass) continue;
      std::cout << "  mismatch task " << c.expectation.task << " " << c.expectation.pointer << ": expected "
                << c.expectation.expected.dump() << ", got " << c.actual.dump() << "\n";
      if (!c.expectation.note.empty()) std::cout << "    note: " << c.expectation.note << "\n";
    }
    std::cout << (r.pass() ? "PASS " : "FAIL ") << r.id << " (" << passed << "/" << r.checks.size() << " checks)\n";
  }
  if (as_json) std::cout << nlohmann::json{{"seed", options.seed}, {"samples", options.samples}, {"runs", runs}}.dump(2) << "\n";
  return all_pass ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hahn-Banach extension lab: seminorm families, extension uniqueness and SNP probes"};
  app.require_subcommand(1);
  hblab::RunOptions options;

  std::string spec_path, out_dir;
  auto* analyze_cmd = app.add_subcommand("analyze", "run the tasks of a space spec");
  analyze_cmd->add_option("spec", spec_path, "space spec file")->required();
  analyze_cmd->add_option("--out", out_dir, "directory for report.json and summary.txt");
  analyze_cmd->add_option("--seed", options.seed, "seed for sampled quantifiers");
  analyze_cmd->add_option("--samples", options.samples, "functionals sampled when dim Y > 1");

  std::string id;
  bool as_json = false;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "run a built-in example against its expected table");
  reproduce_cmd->add_option("id", id, "example id or 'all'")->required();
  reproduce_cmd->add_flag("--json", as_json, "print the full reports as JSON");
  reproduce_cmd->add_option("--seed", options.seed, "seed for sampled quantifiers");
  reproduce_cmd->add_option("--samples", options.samples, "functionals sampled when dim Y > 1");

  auto* list_cmd = app.add_subcommand("list-examples", "list the built-in example ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze_cmd) return analyze(spec_path, out_dir, options);
    if (*reproduce_cmd) return reproduce(id, as_json, options);
    if (*list_cmd) {
      for (const auto& e : hblab::corpus()) std::cout << e.id << "\t" << e.title << "\n";
      return kOk;
    }
  } catch (const hblab::InternalError& e) {
    // failed internal identities (for instance the annihilator distance check)
    std::cerr << "check failed: " << e.what() << "\n";
    return kMismatch;
  } catch (const hblab::Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
