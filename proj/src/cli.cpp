#include "picentlab/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "picentlab/error.hpp"
#include "picentlab/families.hpp"
#include "picentlab/fixtures.hpp"
#include "picentlab/numtheory.hpp"
#include "picentlab/spec_json.hpp"
#include "picentlab/table_cache.hpp"

namespace picent {
namespace {

[[noreturn]] void usage(const std::string& why) { throw Error(ErrorCode::BadParameters, why); }

void require(const std::optional<std::uint64_t>& v, const char* flag, const std::string& sub) {
  if (!v) usage(sub + " requires " + flag);
}

void require_prime(const std::optional<std::uint64_t>& v, const char* what) {
  if (v && !nt::is_prime(*v)) usage(std::string(what) + " must be prime");
}

BuildOptions build_options(const CliCommand& cmd) {
  BuildOptions o;
  o.max_order = cmd.max_order;
  return o;
}

CacheOptions cache_options(const CliCommand& cmd) {
  CacheOptions c;
  c.enabled = !cmd.no_cache;
  if (cmd.cache_dir) c.dir = *cmd.cache_dir;
  return c;
}

// The group named by --spec or --fixture, with a display name.
std::pair<GroupPtr, std::string> named_group(const CliCommand& cmd, const std::string& fallback) {
  const BuildOptions options = build_options(cmd);
  if (cmd.spec_path) {
    return {build_group(parse_group_spec(*cmd.spec_path, options), options), *cmd.spec_path};
  }
  const std::string name = cmd.fixture.value_or(fallback);
  return {build_group(fixture(name), options), name};
}

void record_cache(VerificationReport& rep, const CacheResult& cached, std::ostream& err) {
  rep.timing["cache"] = cached.status;
  if (cached.warning) err << "warning: " << *cached.warning << "\n";
}

VerificationReport chartable(const CliCommand& cmd, std::ostream& err) {
  Stopwatch total;
  auto [G, name] = named_group(cmd, "s3");
  const CacheResult cached = cache_get_or_compute(G, cache_options(cmd));
  const CharacterTable& table = cached.table;
  const auto& conj = *table.conj;

  VerificationReport rep;
  rep.command = "chartable";
  rep.params = Json{{"group", name}, {"order", G->order()}, {"classes", conj.count()}};
  rep.run_check("row and column orthogonality, sum of squared degrees", "character table validity",
                [&](Json& w) {
                  const auto why = validate_table(table);
                  if (why) w = *why;
                  return !why;
                });
  rep.run_check("the row set is closed under Galois conjugation", "character table validity",
                [&](Json& w) {
                  const auto why = check_galois_stable(table);
                  if (why) w = *why;
                  return !why;
                });
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json values = Json::array();
    for (const auto& v : row.values) values.push_back(v.to_string());
    rows.push_back(std::move(values));
  }
  Json sizes = Json::array();
  for (std::size_t i = 0; i < conj.count(); ++i) sizes.push_back(conj.class_size(i));
  rep.data = Json{{"conductor", table.conductor}, {"class_sizes", sizes},
                  {"representatives", conj.reps}, {"degrees", table.degrees},
                  {"rows", std::move(rows)}};
  record_cache(rep, cached, err);
  if (!cached.key.empty()) rep.timing["cache_key"] = cached.key;
  rep.timing["total_millis"] = total.millis();
  return rep;
}

VerificationReport outc(const CliCommand& cmd) {
  Stopwatch total;
  auto [G, name] = named_group(cmd, "d8");
  const auto conj = conjugacy_classes(G);
  const OutCReport oc = out_c(G, *conj);
  VerificationReport rep;
  rep.command = "outc";
  rep.params = Json{{"group", name}, {"order", G->order()}};
  rep.run_check("|Aut_c| = |Out_c| |Inn| and |Inn| = |G| / |Z(G)|", "automorphism census",
                [&](Json& w) {
                  w = Json{{"aut", oc.aut_order}, {"aut_c", oc.aut_c_order},
                           {"inn", oc.inn_order}, {"out_c", oc.out_c_order}};
                  return oc.aut_c_order == oc.out_c_order * oc.inn_order &&
                         oc.inn_order * center(G).size() == G->order();
                });
  rep.run_check("a nontrivial Out_c comes with a class-preserving non-inner witness",
                "witness automorphism", [&](Json& w) {
                  if (oc.out_c_order == 1) return !oc.witness.has_value();
                  if (!oc.witness) return false;
                  Json gens = Json::array();
                  for (Elem x : G->generators()) gens.push_back(Json{{"x", x}, {"image", (*oc.witness)(x)}});
                  w = Json{{"generator_images", gens}};
                  return !check_automorphism(*oc.witness) && is_class_preserving(*conj, *oc.witness) &&
                         !find_inner(*oc.witness);
                });
  rep.data = Json{{"out_c_order", oc.out_c_order}};
  rep.timing["total_millis"] = total.millis();
  return rep;
}

VerificationReport verify_st(const CliCommand& cmd) {
  const auto inst = build_st(*cmd.p, *cmd.t, build_options(cmd), *parse_st_mutation(cmd.mutate));
  return verify_prop42(inst);
}

VerificationReport verify_ell(const CliCommand& cmd, std::ostream& err) {
  const auto inst = build_ell(*cmd.ell, *cmd.p, build_options(cmd), *parse_ell_mutation(cmd.mutate));
  const CacheResult cached = cache_get_or_compute(inst.G, cache_options(cmd));
  auto rep = verify_prop44(inst, &cached.table);
  record_cache(rep, cached, err);
  return rep;
}

VerificationReport verify_thm32(const CliCommand& cmd) {
  if (cmd.synthetic) {
    if (*cmd.synthetic == "inversions") return verify_thm32_skeleton(synthetic_inversions(*cmd.p));
    return verify_thm32_skeleton(synthetic_cyclic(*cmd.p, *cmd.q));
  }
  if (cmd.ell) return verify_thm32_skeleton(as_normal_defect(build_ell(*cmd.ell, *cmd.p, build_options(cmd))));
  auto [G, name] = named_group(cmd, "");
  return verify_thm32_skeleton(normal_defect_from_group(G, name));
}

VerificationReport verify_lemmas_cmd(const CliCommand& cmd) {
  LemmaCorpusOptions o;
  o.seed = cmd.seed;
  o.valid_instances = cmd.instances;
  return verify_lemmas(o);
}

VerificationReport bridge(const CliCommand& cmd) {
  auto [G, name] = named_group(cmd, "wall32");
  return outc_picent_bridge(G, name);
}

std::string render(const VerificationReport& rep, const CliCommand& cmd) {
  if (cmd.out == "json") return rep.to_json().dump(2) + "\n";
  std::string text = rep.to_text();
  if (rep.command == "chartable" && rep.data.is_object()) {
    const auto& d = rep.data;
    text += "class sizes: " + d["class_sizes"].dump() + "\n";
    for (std::size_t i = 0; i < d["rows"].size(); ++i) {
      text += "  chi_" + std::to_string(i) + ":";
      for (const auto& v : d["rows"][i]) text += " " + v.get<std::string>();
      text += "\n";
    }
  }
  return text;
}

}  // namespace

std::vector<std::string> subcommands() {
  return {"chartable", "outc", "verify-st", "verify-ell", "verify-thm32", "verify-lemmas",
          "bridge-example41"};
}

void validate_command(const CliCommand& cmd) {
  const auto& sub = cmd.subcommand;
  const auto subs = subcommands();
  if (std::find(subs.begin(), subs.end(), sub) == subs.end()) usage("unknown subcommand \"" + sub + "\"");
  if (cmd.out != "text" && cmd.out != "json") usage("--out must be text or json");
  if (cmd.max_order == 0) usage("--max-order must be positive");
  if (cmd.spec_path && cmd.fixture) usage("--spec and --fixture are mutually exclusive");
  if (cmd.spec_path && !std::filesystem::is_regular_file(*cmd.spec_path)) {
    usage("spec file " + *cmd.spec_path + " does not exist");
  }
  if (cmd.fixture) fixture(*cmd.fixture);
  if (cmd.mutate != "none" && sub != "verify-st" && sub != "verify-ell") {
    usage("--mutate applies to verify-st and verify-ell only");
  }

  if (sub == "verify-st") {
    require(cmd.p, "--p", sub);
    require(cmd.t, "--t", sub);
    require_prime(cmd.p, "p");
    if (*cmd.t < 2) usage("t must be at least 2");
    if (nt::gcd(*cmd.p, *cmd.t) != 1) usage("t must be coprime to p");
    if (!parse_st_mutation(cmd.mutate)) usage("unknown mutation \"" + cmd.mutate + "\" for verify-st");
  } else if (sub == "verify-ell") {
    require(cmd.ell, "--ell", sub);
    require(cmd.p, "--p", sub);
    require_prime(cmd.ell, "ell");
    require_prime(cmd.p, "p");
    if (*cmd.ell == *cmd.p) usage("ell must differ from p");
    if (!parse_ell_mutation(cmd.mutate)) usage("unknown mutation \"" + cmd.mutate + "\" for verify-ell");
  } else if (sub == "verify-thm32") {
    const int sources = (cmd.synthetic ? 1 : 0) + (cmd.ell ? 1 : 0) + (cmd.spec_path || cmd.fixture ? 1 : 0);
    if (sources != 1) usage("verify-thm32 needs exactly one of --synthetic, --ell, --spec or --fixture");
    if (cmd.synthetic) {
      require(cmd.p, "--p", sub);
      require_prime(cmd.p, "p");
      if (*cmd.synthetic == "cyclic") {
        require(cmd.q, "--q", sub);
        require_prime(cmd.q, "q");
        if ((*cmd.p - 1) % *cmd.q != 0) usage("q must divide p - 1");
      } else if (*cmd.synthetic == "inversions") {
        if (*cmd.p == 2) usage("inversions need an odd p");
      } else {
        usage("--synthetic must be inversions or cyclic");
      }
    }
    if (cmd.ell) {
      require(cmd.p, "--p", sub);
      require_prime(cmd.ell, "ell");
      require_prime(cmd.p, "p");
      if (*cmd.ell == *cmd.p) usage("ell must differ from p");
    }
  } else if (sub == "verify-lemmas") {
    if (cmd.instances == 0) usage("--instances must be positive");
  }
}

int run(const CliCommand& cmd, std::ostream& out, std::ostream& err) {
  VerificationReport rep;
  try {
    validate_command(cmd);
    const auto& sub = cmd.subcommand;
    if (sub == "chartable") rep = chartable(cmd, err);
    else if (sub == "outc") rep = outc(cmd);
    else if (sub == "verify-st") rep = verify_st(cmd);
    else if (sub == "verify-ell") rep = verify_ell(cmd, err);
    else if (sub == "verify-thm32") rep = verify_thm32(cmd);
    else if (sub == "verify-lemmas") rep = verify_lemmas_cmd(cmd);
    else rep = bridge(cmd);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  const std::string body = render(rep, cmd);
  if (cmd.out_file) {
    std::ofstream f(*cmd.out_file, std::ios::binary | std::ios::trunc);
    if (!f || !(f << body)) {
      err << "error: cannot write " << *cmd.out_file << "\n";
      return kExitError;
    }
    if (cmd.out == "json") out << (rep.verdict() ? "PASS" : "FAIL") << " -> " << *cmd.out_file << "\n";
  } else {
    out << body;
  }
  return rep.verdict() ? kExitPass : kExitCheckFailed;
}

}  // namespace picent
