// One PASS/FAIL line per acceptance criterion. All comparisons are exact;
// the only numeric tolerances are the wall-clock budgets pinned below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "picentlab/cli.hpp"
#include "picentlab/families.hpp"
#include "picentlab/fixtures.hpp"
#include "picentlab/numtheory.hpp"

using namespace picent;

namespace {

constexpr double kBudgetSt52 = 60.0;
constexpr double kBudgetSt32 = 600.0;
constexpr double kBudgetEll25 = 120.0;
constexpr double kBudgetEll23 = 900.0;
constexpr int kReciprocityTriples = 100;
constexpr std::uint64_t kCorpusSeed = 20240601;

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion(int n, const std::string& title, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
  }
  if (!ok) ++failures;
  std::cout << "criterion " << n << " " << (ok ? "PASS" : "FAIL") << ": " << title << " [" << detail.str()
            << "]" << std::endl;
}

std::string failing_checks(const VerificationReport& rep) {
  std::string s;
  for (const auto& c : rep.checks) {
    if (!c.passed) s += (s.empty() ? "" : "; ") + c.name;
  }
  return s;
}

bool family_run(std::ostringstream& d, const std::function<VerificationReport()>& make, double budget,
                std::size_t expected_checks) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = make();
  const double secs = seconds_since(t0);
  d << rep.checks.size() << " checks, " << secs << " s of " << budget << " s";
  if (!rep.verdict()) d << ", failing: " << failing_checks(rep);
  return rep.verdict() && rep.checks.size() == expected_checks && secs < budget;
}

Json strip_timing(Json j) {
  j.erase("timing");
  for (auto& c : j["checks"]) c.erase("millis");
  return j;
}

struct CliRun {
  int code;
  Json report;
};

CliRun cli(CliCommand cmd) {
  cmd.out = "json";
  cmd.no_cache = true;
  std::ostringstream out, err;
  const int code = run(cmd, out, err);
  return {code, out.str().empty() ? Json() : Json::parse(out.str())};
}

}  // namespace

int main() {
  std::cout << "tolerances: exact equality for all mathematical comparisons; budgets st(5,2) "
            << kBudgetSt52 << " s, st(3,2) " << kBudgetSt32 << " s, ell(2,5) " << kBudgetEll25
            << " s, ell(2,3) " << kBudgetEll23 << " s" << std::endl;

  // (a)-(h) plus the instance invariants and the agreement of (b) with (c).
  criterion(1, "st family at (p, t) = (5, 2), |G| = 300", [](auto& d) {
    bool agree = false;
    const bool ok = family_run(d, [&] {
      auto rep = verify_prop42(build_st(5, 2));
      for (const auto& c : rep.checks) {
        if (c.name == "formula and orbit routes agree") agree = c.passed;
      }
      return rep;
    }, kBudgetSt52, 10);
    d << ", (b) = (c) elementwise: " << (agree ? "yes" : "no");
    return ok && agree;
  });

  criterion(2, "st family at (p, t) = (3, 2), |G| = 1620", [](auto& d) {
    return family_run(d, [] { return verify_prop42(build_st(3, 2)); }, kBudgetSt32, 10);
  });

  criterion(3, "ell family at (ell, p) = (2, 5), |G| = 400", [](auto& d) {
    return family_run(d, [] { return verify_prop44(build_ell(2, 5)); }, kBudgetEll25, 7);
  });

  criterion(4, "ell family at (ell, p) = (2, 3), |G| = 1296", [](auto& d) {
    return family_run(d, [] { return verify_prop44(build_ell(2, 3)); }, kBudgetEll23, 7);
  });

  criterion(5, "character tables of the oracle corpus and Frobenius reciprocity", [](auto& d) {
    std::vector<std::string> names;
    for (std::uint64_t n = 1; n <= 12; ++n) names.push_back("c" + std::to_string(n));
    for (const auto* n : {"s3", "d8", "q8", "c4sdc4", "heis27"}) names.push_back(n);
    struct Entry {
      GroupPtr G;
      ConjPtr conj;
      CharacterTable table;
    };
    std::vector<Entry> corpus;
    int bad = 0;
    for (const auto& name : names) {
      const auto G = build_group(fixture(name));
      const auto conj = conjugacy_classes(G);
      auto table = dixon_table(conj);
      Rational sum = 0;
      for (auto deg : table.degrees) sum += Rational(static_cast<unsigned long>(deg * deg));
      if (validate_table(table) || check_galois_stable(table) ||
          sum != Rational(static_cast<unsigned long>(G->order())) ||
          table.rows.size() != oracle::conjugacy_classes(*G).size()) {
        ++bad;
        d << name << " table invalid; ";
      }
      corpus.push_back({G, conj, std::move(table)});
    }
    std::mt19937_64 rng(kCorpusSeed);
    int triples = 0;
    while (triples < kReciprocityTriples) {
      const auto& e = corpus[rng() % corpus.size()];
      const Elem a = static_cast<Elem>(rng() % e.G->order());
      const auto H = as_group(generate_subgroup(e.G, std::span<const Elem>(&a, 1)));
      const auto hconj = conjugacy_classes(H.group);
      const auto htable = dixon_table(hconj);
      const auto& chi = htable.rows[rng() % htable.rows.size()];
      const auto& psi = e.table.rows[rng() % e.table.rows.size()];
      if (inner_product(induce(chi, H, e.conj), psi) != inner_product(chi, restrict_to(psi, H, hconj))) ++bad;
      ++triples;
    }
    d << corpus.size() << " groups, " << triples << " reciprocity triples, " << bad << " failures";
    return bad == 0;
  });

  criterion(6, "coprime-action lemma corpus with hyperplane selection", [](auto& d) {
    LemmaCorpusOptions o;
    o.seed = kCorpusSeed;
    const auto rep = verify_lemmas(o);
    d << o.valid_instances << " valid and " << o.invalid_instances << " invalid instances, "
      << rep.checks.size() << " checks";
    if (!rep.verdict()) d << ", failing: " << failing_checks(rep);
    return rep.verdict() && o.valid_instances >= 200;
  });

  criterion(7, "Out_c trivial on abelian, dihedral and quaternion fixtures; nontrivial on the order-32 fixture",
            [](auto& d) {
              int bad = 0;
              for (const auto& name : fixture_names()) {
                if (!fixture_is_abelian(name) && name != "d8" && name != "q8") continue;
                const auto G = build_group(fixture(name));
                std::uint64_t p = 0;
                const bool p_group = G->order() == 1 || nt::is_prime_power(G->order(), &p);
                const bool trivial = p_group ? outc_picent_bridge(G, name).labels[0].text == "|Picent(OP)| = 1"
                                             : out_c(G, *conjugacy_classes(G)).out_c_order == 1;
                if (!trivial) {
                  ++bad;
                  d << name << " wrong; ";
                }
                if (G->order() <= 8) {
                  const auto classes = oracle::conjugacy_classes(*G);
                  for (const auto& a : oracle::all_automorphisms(*G)) {
                    if (oracle::preserves_classes(classes, a) && !oracle::is_inner(*G, a)) {
                      ++bad;
                      d << name << " oracle disagrees; ";
                    }
                  }
                }
              }
              const auto W = build_group(fixture("wall32"));
              const auto wall = outc_picent_bridge(W, "wall32");
              const auto oc = out_c(W, *conjugacy_classes(W));
              const bool nontrivial = wall.verdict() && oc.out_c_order > 1 && oc.witness &&
                                      oracle::is_automorphism(*W, oc.witness->images) &&
                                      oracle::preserves_classes(oracle::conjugacy_classes(*W), oc.witness->images) &&
                                      !oracle::is_inner(*W, oc.witness->images);
              d << "trivial-case failures " << bad << ", order-32 fixture |Out_c| = " << oc.out_c_order;
              return bad == 0 && nontrivial;
            });

  criterion(8, "each structured mutation exits 1 with a concrete witness", [](auto& d) {
    int ok = 0, total = 0;
    const auto check = [&](CliCommand cmd) {
      ++total;
      const auto r = cli(cmd);
      bool witnessed = false;
      for (const auto& c : r.report["checks"]) witnessed |= c["status"] == "fail" && !c["witness"].is_null();
      if (r.code == kExitCheckFailed && witnessed) {
        ++ok;
      } else {
        d << cmd.subcommand << " " << cmd.mutate << " exit " << r.code << "; ";
      }
    };
    for (const auto* m : {"altered-relation", "swapped-kernel", "wrong-psi", "psi-frobenius", "psi-in-E"}) {
      CliCommand c;
      c.subcommand = "verify-st";
      c.p = 5;
      c.t = 2;
      c.mutate = m;
      check(c);
    }
    for (const auto* m : {"altered-relation", "swapped-kernel", "wrong-omega", "wrong-lambda", "wrong-phi"}) {
      CliCommand c;
      c.subcommand = "verify-ell";
      c.ell = 2;
      c.p = 5;
      c.mutate = m;
      check(c);
    }
    d << ok << "/" << total << " mutations caught";
    return ok == total;
  });

  criterion(9, "repeated runs give byte-identical JSON apart from timing", [](auto& d) {
    std::vector<CliCommand> cmds(4);
    cmds[0].subcommand = "verify-st";
    cmds[0].p = 5;
    cmds[0].t = 2;
    cmds[1].subcommand = "verify-ell";
    cmds[1].ell = 2;
    cmds[1].p = 5;
    cmds[2].subcommand = "verify-lemmas";
    cmds[2].seed = 17;
    cmds[3].subcommand = "bridge-example41";
    int same = 0;
    for (const auto& c : cmds) {
      const auto a = strip_timing(cli(c).report).dump();
      const auto b = strip_timing(cli(c).report).dump();
      same += a == b && a != "null";
    }
    d << same << "/" << cmds.size() << " commands identical";
    return same == static_cast<int>(cmds.size());
  });

  std::cout << (failures == 0 ? "all criteria PASS" : std::to_string(failures) + " criteria FAIL")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
