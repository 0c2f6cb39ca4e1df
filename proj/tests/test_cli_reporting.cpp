#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "picentlab/cli.hpp"
#include "picentlab/error.hpp"
#include "picentlab/fixtures.hpp"
#include "picentlab/spec_json.hpp"
#include "picentlab/table_cache.hpp"

using namespace picent;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = PICENTLAB_SOURCE_DIR;

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("picentlab-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ErrorCode code_of(const std::function<void()>& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::PreconditionFailed;
}

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(const CliCommand& cmd) {
  std::ostringstream out, err;
  const int code = run(cmd, out, err);
  return {code, out.str(), err.str()};
}

CliCommand command(const std::string& sub) {
  CliCommand c;
  c.subcommand = sub;
  c.no_cache = true;
  return c;
}

}  // namespace

TEST(SpecJson, CyclicSix) {
  const auto spec = parse_group_spec_text(R"({"type":"cyclic","order":6})");
  const auto* c = std::get_if<CyclicSpec>(&spec.node);
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->order, 6u);
  EXPECT_EQ(build_group(parse_group_spec(kSource / "tests/data/cyclic6.json"))->order(), 6u);
}

TEST(SpecJson, EllFixtureFileBuildsOrder400) {
  const auto spec = parse_group_spec(kSource / "fixtures/ell_2_5.json");
  EXPECT_EQ(build_group(spec)->order(), 400u);
}

TEST(SpecJson, NonBijectiveActionNamesGenerator) {
  std::string msg;
  EXPECT_EQ(code_of([] { parse_group_spec(kSource / "tests/data/bad_action.json"); }, &msg),
            ErrorCode::ValidationError);
  EXPECT_NE(msg.find("generator 0"), std::string::npos) << msg;
}

TEST(SpecJson, ParseErrorCarriesPosition) {
  std::string msg;
  EXPECT_EQ(code_of([] { parse_group_spec(kSource / "tests/data/malformed.json"); }, &msg),
            ErrorCode::ParseError);
  EXPECT_NE(msg.find("at byte"), std::string::npos) << msg;
}

TEST(SpecJson, StructuralValidation) {
  for (const char* text : {R"({"type":"cyclic","order":0})", R"({"type":"cyclic"})",
                           R"({"type":"cyclic","order":6,"extra":1})", R"({"type":"dihedral","n":4})",
                           R"({"type":"abelianP","p":2,"exponents":[0]})",
                           R"({"type":"cyclic","order":-3})", R"([1,2])",
                           R"({"type":"semidirect","normal":{"type":"cyclic","order":3},
                              "actor":{"type":"cyclic","order":2},
                              "action":[{"gen":0,"auto":{"kind":"rotate"}}]})",
                           R"({"type":"abelianP","p":4,"exponents":[1]})",
                           R"({"type":"permutation","degree":3,"generators":[[0,0,1]]})"}) {
    EXPECT_EQ(code_of([&] { parse_group_spec_text(text); }), ErrorCode::ValidationError) << text;
  }
}

TEST(SpecJson, RoundTripIsByteIdentical) {
  std::vector<GroupSpec> specs;
  for (const auto& name : fixture_names()) specs.push_back(fixture(name));
  for (const auto& file : fs::directory_iterator(kSource / "fixtures")) {
    specs.push_back(parse_group_spec(file.path()));
  }
  // Out-of-order action entries canonicalize.
  specs.push_back(GroupSpec::semidirect(GroupSpec::cyclic(8), GroupSpec::abelian_p(2, {1, 1}),
                                        {ActionEntry{1, exponent_matrix({{5}})},
                                         ActionEntry{0, compose({exponent_matrix({{3}})})}}));
  for (const auto& spec : specs) {
    const std::string once = canonical_spec(spec);
    const std::string twice = canonical_spec(parse_group_spec_text(once));
    EXPECT_EQ(once, twice);
  }
}

TEST(SpecJson, FixtureFilesMatchBuiltins) {
  for (const auto& name : fixture_names()) {
    const fs::path file = kSource / "fixtures" / (name + ".json");
    if (!fs::exists(file)) continue;
    EXPECT_EQ(canonical_spec(parse_group_spec(file)), canonical_spec(fixture(name))) << name;
  }
  EXPECT_TRUE(fs::exists(kSource / "fixtures/wall32.json"));
  EXPECT_TRUE(fs::exists(kSource / "fixtures/q8.json"));
}

TEST(SpecJson, FamilyHeaderIsAccepted) {
  const auto doc = family_document(Json{{"family", "demo"}}, GroupSpec::cyclic(4));
  EXPECT_EQ(build_group(parse_group_spec_text(doc.dump()))->order(), 4u);
}

TEST(Cache, KeyDependsOnSpecAndIsHex) {
  const auto a = cache_key(fixture("s3"));
  EXPECT_EQ(a.size(), 64u);
  EXPECT_EQ(a, cache_key(fixture("s3")));
  EXPECT_NE(a, cache_key(fixture("d8")));
  // Known SHA-256 test vector.
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cache, ColdWarmAndTampered) {
  const auto dir = fresh_dir("cache");
  const auto G = build_group(fixture("s3"));
  CacheOptions o{dir, true};
  const auto cold = cache_get_or_compute(G, o);
  EXPECT_EQ(cold.status, "miss");
  ASSERT_TRUE(cold.file.has_value());
  EXPECT_TRUE(fs::exists(*cold.file));

  const auto warm = cache_get_or_compute(G, o);
  EXPECT_EQ(warm.status, "hit");
  ASSERT_EQ(warm.table.rows.size(), cold.table.rows.size());
  for (std::size_t i = 0; i < warm.table.rows.size(); ++i) EXPECT_EQ(warm.table.rows[i], cold.table.rows[i]);

  // Flip one byte inside the row data.
  std::string bytes = slurp(*cold.file);
  const auto pos = bytes.find("\"rows\"") + 10;
  bytes[pos] ^= 1;
  std::ofstream(*cold.file, std::ios::binary | std::ios::trunc) << bytes;
  const auto recovered = cache_get_or_compute(G, o);
  EXPECT_EQ(recovered.status, "recomputed");
  ASSERT_TRUE(recovered.warning.has_value());
  EXPECT_NE(recovered.warning->find("CacheCorrupt"), std::string::npos);
  for (std::size_t i = 0; i < recovered.table.rows.size(); ++i) {
    EXPECT_EQ(recovered.table.rows[i], cold.table.rows[i]);
  }
  EXPECT_EQ(cache_get_or_compute(G, o).status, "hit");
  fs::remove_all(dir);
}

TEST(Cache, EveryByteFlipIsCaughtOrHarmless) {
  const auto dir = fresh_dir("flip");
  const auto G = build_group(fixture("c4"));
  CacheOptions o{dir, true};
  const auto cold = cache_get_or_compute(G, o);
  const std::string original = slurp(*cold.file);
  for (std::size_t i = 0; i < original.size(); i += 3) {
    std::string bytes = original;
    bytes[i] ^= 0x04;
    std::ofstream(*cold.file, std::ios::binary | std::ios::trunc) << bytes;
    const auto r = cache_get_or_compute(G, o);
    EXPECT_FALSE(validate_table(r.table).has_value());
    for (std::size_t k = 0; k < r.table.rows.size(); ++k) EXPECT_EQ(r.table.rows[k], cold.table.rows[k]);
  }
  fs::remove_all(dir);
}

TEST(Cache, ConcurrentWritersLeaveAWholeFile) {
  const auto dir = fresh_dir("concurrent");
  const auto G = build_group(fixture("heis27"));
  CacheOptions o{dir, true};
  std::vector<std::thread> threads;
  std::vector<std::string> statuses(4);
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&, i] { statuses[i] = cache_get_or_compute(G, o).status; });
  }
  for (auto& t : threads) t.join();
  std::size_t entries = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++entries;
    EXPECT_EQ(e.path().extension(), ".json") << e.path();
  }
  EXPECT_EQ(entries, 1u);
  EXPECT_EQ(cache_get_or_compute(G, o).status, "hit");
  fs::remove_all(dir);
}

TEST(Cache, DisabledAndEnvironmentOverride) {
  const auto G = build_group(fixture("s3"));
  EXPECT_EQ(cache_get_or_compute(G, CacheOptions{{}, false}).status, "disabled");
  const auto dir = fresh_dir("env");
  ::setenv("PICENTLAB_CACHE_DIR", dir.c_str(), 1);
  EXPECT_EQ(default_cache_dir(), dir);
  EXPECT_EQ(cache_get_or_compute(G).status, "miss");
  EXPECT_TRUE(fs::exists(dir));
  fs::remove_all(dir);
}

TEST(Cli, VerifyStPassesWithJson) {
  auto c = command("verify-st");
  c.p = 5;
  c.t = 2;
  c.out = "json";
  const auto r = run_cli(c);
  EXPECT_EQ(r.code, kExitPass) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["command"], "verify-st");
  EXPECT_EQ(j["version"], std::string(kVersion));
}

TEST(Cli, VerifyEllPasses) {
  auto c = command("verify-ell");
  c.ell = 2;
  c.p = 5;
  EXPECT_EQ(run_cli(c).code, kExitPass);
}

TEST(Cli, NonPrimeIsUsageError) {
  auto c = command("verify-st");
  c.p = 4;
  c.t = 2;
  const auto r = run_cli(c);
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("p must be prime"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, MutationsExitOne) {
  for (const auto* m : {"altered-relation", "swapped-kernel", "wrong-psi", "psi-frobenius", "psi-in-E"}) {
    auto c = command("verify-st");
    c.p = 5;
    c.t = 2;
    c.mutate = m;
    EXPECT_EQ(run_cli(c).code, kExitCheckFailed) << m;
  }
  for (const auto* m : {"altered-relation", "swapped-kernel", "wrong-omega", "wrong-lambda", "wrong-phi"}) {
    auto c = command("verify-ell");
    c.ell = 2;
    c.p = 5;
    c.mutate = m;
    EXPECT_EQ(run_cli(c).code, kExitCheckFailed) << m;
  }
}

TEST(Cli, InvalidParametersHaveNoSideEffects) {
  const auto dir = fresh_dir("sidefx");
  std::vector<CliCommand> bad;
  auto a = command("verify-st");
  a.p = 4;
  a.t = 2;
  bad.push_back(a);
  auto b = command("verify-ell");
  b.ell = 2;
  b.p = 5;
  b.mutate = "no-such-mutation";
  bad.push_back(b);
  auto c = command("chartable");
  c.fixture = "no-such-group";
  bad.push_back(c);
  auto d = command("verify-thm32");
  bad.push_back(d);
  auto e = command("verify-st");
  e.p = 5;
  e.t = 2;
  e.out = "yaml";
  bad.push_back(e);
  auto f = command("verify-ell");
  f.ell = 3;
  f.p = 2;
  bad.push_back(f);
  for (auto cmd : bad) {
    cmd.no_cache = false;
    cmd.cache_dir = (dir / "cache").string();
    cmd.out_file = (dir / "report.json").string();
    const auto r = run_cli(cmd);
    EXPECT_EQ(r.code, kExitError) << cmd.subcommand;
    EXPECT_FALSE(r.err.empty());
    EXPECT_FALSE(fs::exists(dir / "cache")) << cmd.subcommand;
    EXPECT_FALSE(fs::exists(dir / "report.json")) << cmd.subcommand;
  }
}

TEST(Cli, HypothesisFailureExitsTwo) {
  auto c = command("verify-thm32");
  c.ell = 2;
  c.p = 5;
  const auto r = run_cli(c);
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("HypothesisFailed"), std::string::npos);
}

TEST(Cli, OtherSubcommands) {
  auto thm = command("verify-thm32");
  thm.synthetic = "inversions";
  thm.p = 5;
  EXPECT_EQ(run_cli(thm).code, kExitPass);

  auto lem = command("verify-lemmas");
  lem.seed = 4;
  lem.instances = 40;
  lem.out = "json";
  const auto r = run_cli(lem);
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_EQ(Json::parse(r.out)["seed"], 4);

  auto bridge = command("bridge-example41");
  const auto br = run_cli(bridge);
  EXPECT_EQ(br.code, kExitPass);
  EXPECT_NE(br.out.find("|Picent(OP)| = 2"), std::string::npos);

  auto outc = command("outc");
  outc.spec_path = (kSource / "fixtures/q8.json").string();
  EXPECT_EQ(run_cli(outc).code, kExitPass);

  auto table = command("chartable");
  table.fixture = "d8";
  const auto t = run_cli(table);
  EXPECT_EQ(t.code, kExitPass);
  EXPECT_NE(t.out.find("chi_4"), std::string::npos);
}

TEST(Cli, JsonToFile) {
  const auto dir = fresh_dir("outfile");
  fs::create_directories(dir);
  auto c = command("verify-st");
  c.p = 5;
  c.t = 2;
  c.out = "json";
  c.out_file = (dir / "r.json").string();
  EXPECT_EQ(run_cli(c).code, kExitPass);
  EXPECT_EQ(Json::parse(slurp(dir / "r.json"))["verdict"], "pass");
  fs::remove_all(dir);
}

TEST(Cli, ChartableReportsCacheStatus) {
  const auto dir = fresh_dir("clicache");
  auto c = command("chartable");
  c.fixture = "s3";
  c.no_cache = false;
  c.cache_dir = dir.string();
  c.out = "json";
  EXPECT_EQ(Json::parse(run_cli(c).out)["timing"]["cache"], "miss");
  EXPECT_EQ(Json::parse(run_cli(c).out)["timing"]["cache"], "hit");
  fs::remove_all(dir);
}
