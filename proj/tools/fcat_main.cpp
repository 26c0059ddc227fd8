#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "fcat/interface.hpp"

namespace {

struct Options {
  std::string file;
  std::string emit;
  std::string output;
  bool json = false;
  std::string seed_order = "canonical";
};

int fail_usage(const Options& o, const std::string& message) {
  if (o.json) {
    fcat::CommandReport r;
    r.checks.push_back({"usage", "", "error", message});
    std::cout << fcat::to_json(r);
  } else {
    std::cerr << "fcat: " << message << "\n";
  }
  return 2;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite model categories: integral structures, model fibrations and their checks"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  fcat::Command cmd;
  app.add_flag("--json", o.json, "Print the JSON report");
  app.add_option("--seed-order", o.seed_order, "Search order (only 'canonical')")->capture_default_str();
  app.add_option("--shape-bound", cmd.shape_bound, "Largest number of non-identity arrows to enumerate over")
      ->capture_default_str();
  app.add_flag("--timing", cmd.timing, "Record elapsed time in the report");

  auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", o.file, ".fcat workspace")->required();
    return sub;
  };
  auto named = [&](CLI::App* sub, const std::string& key, const std::string& help) {
    sub->add_option("--" + key, cmd.options[key], help);
  };

  with_file(app.add_subcommand("validate", "Load a workspace and report every definition"));
  named(with_file(app.add_subcommand("model-check", "Check MC1-MC5 for a model")), "model", "Model name");
  {
    auto* s = with_file(app.add_subcommand("enumerate-models", "Every model structure on a category"));
    named(s, "category", "Category name");
    s->add_option("--emit", o.emit, "Write the structures as .fcat models");
  }
  {
    auto* s = with_file(app.add_subcommand("integrate", "Build the integral model structure"));
    named(s, "functor", "modcat-functor name");
    s->add_flag("--force", cmd.force, "Check the axioms even when the functor is not proper and relative");
    s->add_option("--emit", o.emit, "Write the total, its model and the projection");
  }
  named(with_file(app.add_subcommand("check-proper-relative", "Properness and relativeness of a functor")), "functor",
        "modcat-functor name");
  {
    auto* s = with_file(app.add_subcommand("straighten", "Straighten a model fibration"));
    named(s, "fibration", "Fibration name");
    s->add_option("--emit", o.emit, "Write the straightened functor");
  }
  {
    auto* s = app.add_subcommand("verify-theorem", "Run one theorem suite on a workspace");
    s->add_option("theorem", cmd.theorem, "integral|invariance|fubini|correspondence|example44|slice")
        ->required()
        ->check(CLI::IsMember({"integral", "invariance", "fubini", "correspondence", "example44", "slice"}));
    with_file(s);
    for (const char* key : {"functor", "target", "adjunction", "kind", "family", "left", "right", "fiber", "fibration",
                            "model"})
      named(s, key, std::string("--") + key + " argument");
  }
  {
    auto* s = with_file(app.add_subcommand("export-dot", "Graphviz view of a category, model or integral"));
    named(s, "name", "Object to export");
    s->add_option("--output", o.output, "Write DOT here instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (o.seed_order != "canonical") return fail_usage(o, "--seed-order supports only 'canonical'");
  cmd.verb = app.get_subcommands().front()->get_name();
  for (auto it = cmd.options.begin(); it != cmd.options.end();)
    it = it->second.empty() ? cmd.options.erase(it) : std::next(it);

  fcat::CommandReport report;
  try {
    const fcat::Workspace ws = fcat::load_spec_file(o.file);
    report = fcat::run_command(ws, cmd);
  } catch (const fcat::Error& e) {
    return fail_usage(o, e.what());
  }

  if (!report.output.empty()) {
    if (!o.emit.empty() && !write_file(o.emit, report.output)) return fail_usage(o, "cannot write '" + o.emit + "'");
    if (!o.output.empty() && !write_file(o.output, report.output))
      return fail_usage(o, "cannot write '" + o.output + "'");
    if (cmd.verb == "export-dot" && o.output.empty() && !o.json) {
      std::cout << report.output;
      return report.exit_code;
    }
  }
  std::cout << (o.json ? fcat::to_json(report) : fcat::to_text(report));
  return report.exit_code;
}
