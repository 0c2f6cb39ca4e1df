#include <iostream>

#include "CLI11.hpp"
#include "picentlab/cli.hpp"

int main(int argc, char** argv) {
  picent::CliCommand cmd;
  CLI::App app{"picentlab: exact verification of class-preserving self-equivalence witnesses"};
  app.require_subcommand(1);

  const auto common = [&cmd](CLI::App* sub) {
    sub->add_option("--out", cmd.out, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out-file", cmd.out_file, "Write the report to this file");
    sub->add_option("--max-order", cmd.max_order, "Refuse groups larger than this");
    sub->add_option("--cache-dir", cmd.cache_dir, "Character table cache directory");
    sub->add_flag("--no-cache", cmd.no_cache, "Do not read or write the table cache");
  };
  const auto group_source = [&cmd](CLI::App* sub) {
    sub->add_option("--spec", cmd.spec_path, "Group description file (JSON)");
    sub->add_option("--fixture", cmd.fixture, "Built-in fixture name");
  };

  auto* chartable = app.add_subcommand("chartable", "Exact character table of a group");
  group_source(chartable);
  auto* outc = app.add_subcommand("outc", "Class-preserving outer automorphisms by brute force");
  group_source(outc);
  auto* st = app.add_subcommand("verify-st", "Verify the F_{p^{nt}} x| E family");
  st->add_option("--p", cmd.p, "Prime p");
  st->add_option("--t", cmd.t, "Integer t > 1 coprime to p");
  st->add_option("--mutate", cmd.mutate, "Structured mutation to inject");
  auto* ell = app.add_subcommand("verify-ell", "Verify the (D1 x D2) x| E family");
  ell->add_option("--ell", cmd.ell, "Prime ell");
  ell->add_option("--p", cmd.p, "Prime p different from ell");
  ell->add_option("--mutate", cmd.mutate, "Structured mutation to inject");
  auto* thm = app.add_subcommand("verify-thm32", "Check the selected-character construction");
  thm->add_option("--ell", cmd.ell, "Use the ell family with this ell");
  thm->add_option("--p", cmd.p, "Prime p");
  thm->add_option("--q", cmd.q, "Order of the acting group for --synthetic cyclic");
  thm->add_option("--synthetic", cmd.synthetic, "inversions | cyclic");
  group_source(thm);
  auto* lemmas = app.add_subcommand("verify-lemmas", "Randomized coprime-action corpus");
  lemmas->add_option("--seed", cmd.seed, "Corpus seed");
  lemmas->add_option("--instances", cmd.instances, "Number of valid instances");
  auto* bridge = app.add_subcommand("bridge-example41", "Out_c of a p-group as Picent(OP)");
  group_source(bridge);
  for (auto* sub : app.get_subcommands({})) common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return picent::kExitError;
  }
  for (auto* sub : app.get_subcommands()) cmd.subcommand = sub->get_name();
  return picent::run(cmd, std::cout, std::cerr);
}
