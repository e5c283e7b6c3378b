#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

void add_common(CLI::App& sub, onerel::cli::RunConfig& cfg) {
  static const std::map<std::string, onerel::cli::Format> formats{
      {"json", onerel::cli::Format::Json}, {"dot", onerel::cli::Format::Dot}, {"text", onerel::cli::Format::Text}};
  sub.add_option("presentation", cfg.presentation, "presentation text like \"<a,b;a^2b^-3>\", or a file holding it")
      ->required();
  sub.add_option("--radius", cfg.radius, "ball radius")->check(CLI::PositiveNumber);
  sub.add_option("--budget-states", cfg.budget_states, "search states per word query (env MAGNUS_BUDGET_STATES)")
      ->check(CLI::PositiveNumber);
  sub.add_option("--budget-length", cfg.budget_length, "longest intermediate word in the search")
      ->check(CLI::PositiveNumber);
  sub.add_option("--depth-limit", cfg.depth_limit, "Magnus hierarchy depth limit")->check(CLI::PositiveNumber);
  sub.add_option("--format", cfg.format, "json, dot or text")->transform(CLI::CheckedTransformer(formats));
  sub.add_flag("--strict", cfg.strict, "exit 2 when a verdict stays Unknown");
  sub.add_option("--seed", cfg.seed, "seed for sampled finite quotients");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations with one-relator presentations"};
  app.require_subcommand(1);
  onerel::cli::RunConfig cfg;

  for (const std::string& name : onerel::cli::commands()) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(*sub, cfg);
    if (name == "ends") sub->add_option("--inner", cfg.inner, "smallest removed ball")->check(CLI::PositiveNumber);
    if (name == "freiheitssatz") sub->add_option("--subset", cfg.subset, "generator names")->delimiter(',');
    if (name == "pro-pi1" || name == "semistable") {
      sub->add_option("--radii", cfg.radii, "filtration radii, increasing")->delimiter(',');
      sub->add_option("--ray", cfg.ray, "base ray: max or min")->check(CLI::IsMember({"max", "min"}));
    }
    sub->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return onerel::cli::run(cfg, std::cout, std::cerr);
}
