#include "holosym/acceptance.hpp"
#include "holosym/classify.hpp"
#include "holosym/curvature_spaces.hpp"
#include "holosym/error.hpp"
#include "holosym/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace holosym;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot read " + path, 0);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct FileResult {
  std::string path;
  std::string text;
  std::string error;
  bool input_error = false;
  bool passed = false;
};

int run_analyze(const std::vector<std::string> &files, const std::string &out_dir) {
  std::vector<FileResult> results(files.size());
  // Each analysis is independent; output is written afterwards in input order.
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < files.size(); ++i) {
    FileResult &r = results[i];
    r.path = files[i];
    try {
      const AnalysisReport rep = analyze(parse_request(read_file(files[i])));
      r.text = render(to_json(rep));
      r.passed = rep.passed();
    } catch (const ParseError &e) {
      r.error = e.what();
      r.input_error = true;
    } catch (const DescriptorError &e) {
      r.error = e.what();
      r.input_error = true;
    } catch (const SizeCapError &e) {
      r.error = e.what();
      r.input_error = true;
    } catch (const PreconditionError &e) {
      r.error = e.what();
      r.input_error = true;
    } catch (const std::exception &e) {
      r.error = e.what();
    }
  }

  int code = kExitPass;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
  }
  for (const auto &r : results) {
    if (!r.error.empty()) {
      std::cerr << r.path << ": " << r.error << "\n";
      code = r.input_error ? kExitInput : std::max(code, kExitFail);
      continue;
    }
    if (out_dir.empty()) {
      std::cout << r.text;
    } else {
      const fs::path target = fs::path(out_dir) / (fs::path(r.path).stem().string() + ".report.json");
      std::ofstream(target, std::ios::binary) << r.text;
      std::cerr << r.path << " -> " << target.string() << (r.passed ? "" : " (verification failed)") << "\n";
    }
    if (!r.passed && code == kExitPass) {
      code = kExitFail;
    }
  }
  return code;
}

int run_spaces(const std::string &descriptor) {
  const HolonomyAlgebra g = build_algebra(descriptor);
  const NablaRSpace sp = space_nablaR(g);
  json out = {{"algebra", g.descriptor},
              {"type", to_string(g.type)},
              {"dim_g", g.dimension()},
              {"dim_R", sp.R.dimension()},
              {"dim_nablaR", sp.dimension()},
              {"orthogonal_part", g.h.name()},
              {"dim_P_h", space_P(g.h).dimension()}};
  std::cout << render(out);
  return kExitPass;
}

int run_annihilator(const std::string &descriptor, const std::string &restrict_to) {
  const HolonomyAlgebra g = build_algebra(descriptor);
  if (!restrict_to.empty() && restrict_to != "pE") {
    throw DescriptorError("--restrict accepts only pE");
  }
  const bool pe = restrict_to == "pE";
  const AnnihilatorResult r = annihilator(g, pe ? ModuleKind::pe_nablaR : ModuleKind::v_nablaR);
  json out = {{"algebra", g.descriptor},
              {"module", pe ? "(Rp+E)(x)nablaR" : "V(x)nablaR"},
              {"module_dimension", r.module.dim},
              {"dimension", r.dimension()}};
  int code = kExitPass;
  if (pe && g.type == HolonomyType::type2) {
    const std::size_t want =
        invariant_symmetric_tensors(g.h, 2).dimension() + invariant_symmetric_tensors(g.h, 3).dimension();
    std::size_t normal = 0;
    for (const auto &t : r.tensors) {
      normal += lt2_normal_form_check(t, g).passed() ? 1 : 0;
    }
    out["expected_dimension"] = want;
    out["normal_form_passed"] = normal;
    if (want != r.dimension() || normal != r.dimension()) {
      code = kExitFail;
    }
  }
  std::cout << render(out);
  return code;
}

int run_equivariant(const std::string &descriptor) {
  const HolonomyAlgebra g = build_algebra(descriptor);
  const NablaRSpace sp = space_nablaR(g);
  const Module m = nablaR_module(g, sp);
  const InvariantReport inv = invariant_vectors(g, tensor_product(vector_module(g), m));
  json out = {{"algebra", g.descriptor},
              {"hom_dimension", equivariant_multiplicity(g, m)},
              {"invariant_dimension", inv.dimension()},
              {"nondegenerate", inv.nondegenerate},
              {"gram", to_json(inv.gram)}};
  std::cout << render(out);
  return kExitPass;
}

int run_selftest(std::uint64_t seed, bool budgets) {
  AcceptanceOptions opt;
  opt.seed = seed;
  opt.enforce_budgets = budgets;
  const auto results = run_acceptance(opt, [](const CriterionResult &r) { std::cout << format_result(r) << std::endl; });
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto &r) { return !r.passed; });
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact curvature and holonomy computations for Brinkmann-type Lorentzian metrics"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string out_dir;
  auto *analyze_cmd = app.add_subcommand("analyze", "Analyze metric spec files");
  analyze_cmd->add_option("files", files, "Spec JSON files")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--out", out_dir, "Directory for <name>.report.json files");

  std::string algebra;
  std::string restrict_to;
  auto *spaces_cmd = app.add_subcommand("spaces", "Dimensions of curvature spaces of an algebra");
  spaces_cmd->add_option("--algebra", algebra, "Algebra descriptor, e.g. type1:so(2):n=2")->required();
  auto *ann_cmd = app.add_subcommand("annihilator", "Annihilated elements of V (x) nabla R");
  ann_cmd->add_option("--algebra", algebra, "Algebra descriptor")->required();
  ann_cmd->add_option("--restrict", restrict_to, "Restrict the first factor to Rp + E")->check(CLI::IsMember({"pE"}));
  auto *eq_cmd = app.add_subcommand("equivariant", "Multiplicity of V in nabla R");
  eq_cmd->add_option("--algebra", algebra, "Algebra descriptor")->required();

  std::uint64_t seed = kDefaultSeed;
  bool no_budgets = false;
  auto *self_cmd = app.add_subcommand("selftest", "Run the acceptance suite");
  self_cmd->add_option("--seed", seed, "Seed for randomized criteria");
  self_cmd->add_flag("--no-budgets", no_budgets, "Do not fail criteria that exceed their time budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*analyze_cmd) {
      return run_analyze(files, out_dir);
    }
    if (*spaces_cmd) {
      return run_spaces(algebra);
    }
    if (*ann_cmd) {
      return run_annihilator(algebra, restrict_to);
    }
    if (*eq_cmd) {
      return run_equivariant(algebra);
    }
    if (*self_cmd) {
      return run_selftest(seed, !no_budgets);
    }
  } catch (const DescriptorError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SizeCapError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitInput;
}
