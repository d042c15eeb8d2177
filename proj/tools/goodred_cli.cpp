#include <iostream>
#include <map>
#include <memory>

#include "CLI11.hpp"

#include "goodred/cli.hpp"

using goodred::cli::CommandSpec;

int main(int argc, char** argv) {
  CLI::App app{"Good-reduction diagnostics for Brauer classes on surfaces over local fields"};
  app.require_subcommand(1);
  app.fallthrough();
  int indent = 2;
  app.add_option("--indent", indent, "JSON indentation; -1 for a single line");

  struct Bound {
    std::string command;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::vector<std::string> positional;
    CLI::App* sub = nullptr;
  };
  std::vector<std::unique_ptr<Bound>> bound;

  for (const auto& info : goodred::cli::commandTable()) {
    auto b = std::make_unique<Bound>();
    b->command = info.name;
    b->sub = app.add_subcommand(info.name, info.help);
    for (const auto& f : info.flags) {
      std::string help = f.help;
      if (!f.defaultValue.empty()) help += " [default " + f.defaultValue + "]";
      if (f.boolean)
        b->options[f.name] = b->sub->add_flag("--" + f.name, help);
      else
        b->options[f.name] = b->sub->add_option("--" + f.name, b->values[f.name], help);
    }
    if (info.takesPositional) {
      std::string ids;
      for (const auto& id : goodred::cli::reproduceIds()) ids += (ids.empty() ? "" : ", ") + id;
      b->sub->add_option("id", b->positional, "one of " + ids)->required();
    }
    bound.push_back(std::move(b));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return goodred::cli::kInputError;
  }

  for (const auto& b : bound) {
    if (!b->sub->parsed()) continue;
    CommandSpec spec;
    spec.command = b->command;
    spec.positional = b->positional;
    for (const auto& [name, opt] : b->options)
      if (opt->count() > 0) spec.flags[name] = opt->get_expected_min() == 0 ? "true" : b->values[name];
    const auto report = goodred::cli::runCommand(spec);
    std::cout << report.doc.dump(indent) << "\n";
    if (report.exitCode == goodred::cli::kInputError && report.doc.contains("error"))
      std::cerr << "error: " << report.doc["error"]["message"].get<std::string>() << "\n";
    return report.exitCode;
  }
  return goodred::cli::kInputError;
}
