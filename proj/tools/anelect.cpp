// Command line front end: generate, inspect, advise, simulate, verify.
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "anelect/advice.hpp"
#include "anelect/families.hpp"
#include "anelect/sim.hpp"

using namespace anelect;

namespace {

PortGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  PortGraph g = read_graph(in);
  validate(g);
  return g;
}

BitString load_bits(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_bits_file(in);
}

void save_graph(const std::string& path, const PortGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_graph(out, g);
}

void save_outcome(const std::string& path, const ElectionOutcome& o) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_outcome(out, o);
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

// counter-based splitmix64, the only randomness source in the tool
uint64_t mix(uint64_t seed, uint64_t counter) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<int> seeded_perm_2_to_k(int k, uint64_t seed) {
  std::vector<int> perm;
  for (int i = 2; i <= k; ++i) perm.push_back(i);
  uint64_t counter = 0;
  for (int i = (int)perm.size() - 1; i > 0; --i)
    std::swap(perm[i], perm[mix(seed, counter++) % (uint64_t)(i + 1)]);
  return perm;
}

// one line per run: machine greppable, human readable
void report(const std::string& algo, const PortGraph& g, const ElectionOutcome& o,
            const VerifyReport& rep, size_t advice_bits) {
  std::cout << "algo=" << algo << " n=" << g.node_count() << " rounds=" << o.rounds
            << " advice_bits=" << advice_bits
            << " verdict=" << (rep.ok ? "ok" : "fail");
  if (rep.ok) std::cout << " leader=" << rep.leader;
  if (!rep.ok && !rep.error.empty()) std::cout << " error=\"" << rep.error << '"';
  std::cout << '\n';
  for (const auto& nr : o.nodes)
    if (!nr.note.empty()) {
      std::cout << "note: " << nr.note << '\n';
      break;
    }
}

int run_verified(const std::string& algo, const PortGraph& g, const ElectionOutcome& o,
                 size_t advice_bits, const std::string& outcome_path) {
  VerifyReport rep = verify_outcome(g, o);
  report(algo, g, o, rep, advice_bits);
  if (!outcome_path.empty()) save_outcome(outcome_path, o);
  return rep.ok ? 0 : 1;
}

struct BenchRow {
  std::string graph;
  int n = 0;
  int diam = 0;
  std::string phi = "infeasible";
  std::string variant = "elect";
  uint64_t rounds = 0;
  size_t advice_bits = 0;
  std::string verdict = "infeasible";
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anonymous network leader election toolkit"};
  app.require_subcommand(1);

  std::string graph_path, advice_path, out_path, outcome_path, format = "bits";
  std::string family, code_csv, stars_csv, csv_path, dir_path;
  uint64_t x_depth = 1;
  int variant = 1, cvalue = 2;
  int gk = 4, gx = 3, gphi = 2, gring = 3, ggamma = 2;
  uint64_t gt = 1, seed = 1;

  auto* cmd_index = app.add_subcommand("index", "print n, diameter and election index");
  cmd_index->add_option("graph", graph_path)->required();

  auto* cmd_advise = app.add_subcommand("advise", "compute the advice string for a graph");
  cmd_advise->add_option("graph", graph_path)->required();
  cmd_advise->add_option("out", out_path)->required();
  cmd_advise->add_option("--format", format)->check(CLI::IsMember({"bits", "hex"}));

  auto* cmd_elect = app.add_subcommand("elect", "run the minimum time election");
  cmd_elect->add_option("graph", graph_path)->required();
  cmd_elect->add_option("advice", advice_path)->required();
  cmd_elect->add_option("--out", outcome_path, "write the outcome file");

  auto* cmd_generic = app.add_subcommand("generic", "run the waiting protocol at depth x");
  cmd_generic->add_option("graph", graph_path)->required();
  cmd_generic->add_option("x", x_depth)->required();
  cmd_generic->add_option("--out", outcome_path, "write the outcome file");

  auto* cmd_large = app.add_subcommand("elect_large", "run a large time variant");
  cmd_large->add_option("graph", graph_path)->required();
  cmd_large->add_option("variant", variant)->required()->check(CLI::Range(1, 4));
  cmd_large->add_option("c", cvalue)->required()->check(CLI::Range(2, 16));
  cmd_large->add_option("--out", outcome_path, "write the outcome file");

  auto* cmd_gen = app.add_subcommand("gen", "generate a family member");
  cmd_gen->add_option("family", family)
      ->required()
      ->check(CLI::IsMember({"clique", "ring-cliques", "necklace", "hairy-ring", "stretch"}));
  cmd_gen->add_option("out", out_path)->required();
  cmd_gen->add_option("--k", gk, "joint count");
  cmd_gen->add_option("--x", gx, "clique parameter");
  cmd_gen->add_option("--phi", gphi, "election index (necklace)");
  cmd_gen->add_option("--t", gt, "clique member index");
  cmd_gen->add_option("--code", code_csv, "necklace code, comma separated");
  cmd_gen->add_option("--ring", gring, "ring length (hairy-ring, stretch)");
  cmd_gen->add_option("--stars", stars_csv, "star counts, comma separated");
  cmd_gen->add_option("--gamma", ggamma, "copy count (stretch)");
  cmd_gen->add_option("--seed", seed, "seed for the joint permutation");

  auto* cmd_verify = app.add_subcommand("verify", "check an outcome file against a graph");
  cmd_verify->add_option("graph", graph_path)->required();
  cmd_verify->add_option("outcome", advice_path)->required();

  auto* cmd_bench = app.add_subcommand("bench", "advise and elect over a graph directory");
  cmd_bench->add_option("dir", dir_path)->required();
  cmd_bench->add_option("csv", csv_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_index->parsed()) {
      PortGraph g = load_graph(graph_path);
      auto idx = election_index(g);
      if (!idx.has_value()) {
        std::cout << "infeasible\n";
      } else {
        std::cout << "n=" << g.node_count() << " D=" << diameter(g) << " phi=" << *idx
                  << '\n';
      }
      return 0;
    }

    if (cmd_advise->parsed()) {
      PortGraph g = load_graph(graph_path);
      OracleStats st;
      Advice adv = compute_advice(g, &st);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      write_bits_file(out, adv.bits, format == "hex" ? BitFormat::hex : BitFormat::bits);
      std::cout << "phi=" << st.phi << " advice_bits=" << adv.bits.size()
                << " leader=" << adv.leader << '\n';
      return 0;
    }

    if (cmd_elect->parsed()) {
      PortGraph g = load_graph(graph_path);
      BitString bits = load_bits(advice_path);
      return run_verified("elect", g, run_elect(g, bits), bits.size(), outcome_path);
    }

    if (cmd_generic->parsed()) {
      PortGraph g = load_graph(graph_path);
      return run_verified("generic", g, run_generic(g, x_depth), 0, outcome_path);
    }

    if (cmd_large->parsed()) {
      PortGraph g = load_graph(graph_path);
      auto idx = election_index(g);
      if (!idx.has_value()) throw std::runtime_error("graph is infeasible");
      BitString bits = variant_advice_bits(variant, (uint64_t)*idx);
      ElectionOutcome o = run_election_variant(g, variant, cvalue, bits);
      uint64_t budget = variant_t(variant, cvalue, (uint64_t)diameter(g), (uint64_t)*idx);
      std::cout << "budget=" << budget << '\n';
      return run_verified("variant" + std::to_string(variant), g, o, bits.size(),
                          outcome_path);
    }

    if (cmd_gen->parsed()) {
      PortGraph g;
      if (family == "clique") {
        g = gen_clique_member(gx, gt).g;
      } else if (family == "ring-cliques") {
        g = gen_ring_cliques(gk, gx, seeded_perm_2_to_k(gk, seed)).g;
      } else if (family == "necklace") {
        NecklaceSpec sp;
        sp.k = gk;
        sp.x = gx;
        sp.phi = gphi;
        sp.code = code_csv.empty() ? std::vector<int>(gk, 0) : parse_int_list(code_csv);
        NecklaceResult r = gen_necklace(sp);
        if (!certify_necklace(r, sp)) throw std::runtime_error("necklace failed its certificate");
        g = r.g;
      } else if (family == "hairy-ring" || family == "stretch") {
        HairyRingSpec sp;
        sp.ring = gring;
        if (stars_csv.empty()) {
          sp.stars.assign(gring, 0);
          for (int i = 0; i < gring; ++i) sp.stars[i] = (int)(mix(seed, i) % 3);
          sp.stars[(int)(mix(seed, gring) % (uint64_t)gring)] = 4;
        } else {
          sp.stars = parse_int_list(stars_csv);
        }
        HairyRingResult r = gen_hairy_ring(sp);
        g = family == "stretch" ? gamma_stretch(cut(r), ggamma).g : r.g;
      }
      validate(g);
      save_graph(out_path, g);
      std::cout << "n=" << g.node_count() << " -> " << out_path << '\n';
      return 0;
    }

    if (cmd_verify->parsed()) {
      PortGraph g = load_graph(graph_path);
      std::ifstream in(advice_path);
      if (!in) throw std::runtime_error("cannot open " + advice_path);
      ElectionOutcome o = read_outcome(in);
      VerifyReport rep = verify_outcome(g, o);
      if (rep.ok) {
        std::cout << "verdict=ok leader=" << rep.leader << '\n';
        return 0;
      }
      std::cout << "verdict=fail error=\"" << rep.error << '"';
      if (rep.offender >= 0) std::cout << " offender=" << rep.offender;
      std::cout << '\n';
      return 1;
    }

    if (cmd_bench->parsed()) {
      std::vector<std::string> paths;
      for (const auto& de : std::filesystem::directory_iterator(dir_path))
        if (de.is_regular_file() && de.path().extension() == ".graph")
          paths.push_back(de.path().string());
      std::sort(paths.begin(), paths.end());
      std::vector<BenchRow> rows(paths.size());
      bool all_ok = true;
      #pragma omp parallel for schedule(dynamic)
      for (size_t i = 0; i < paths.size(); ++i) {
        BenchRow row;
        row.graph = paths[i];
        try {
          PortGraph g = load_graph(paths[i]);
          row.n = g.node_count();
          row.diam = diameter(g, ExecMode::serial);
          auto idx = election_index(g);
          if (idx.has_value()) {
            row.phi = std::to_string(*idx);
            Advice adv = compute_advice(g);
            ElectionOutcome o = run_elect(g, adv.bits);
            row.rounds = o.rounds;
            row.advice_bits = adv.bits.size();
            row.verdict = verify_outcome(g, o).ok ? "ok" : "fail";
          }
        } catch (const std::exception& e) {
          row.phi = "error";
          row.verdict = "error";
        }
        rows[i] = std::move(row);
      }
      std::ofstream csv(csv_path);
      if (!csv) throw std::runtime_error("cannot write " + csv_path);
      csv << "graph,n,D,phi,variant,rounds,advice_bits,verdict\n";
      for (const auto& row : rows) {
        csv << row.graph << ',' << row.n << ',' << row.diam << ',' << row.phi << ','
            << row.variant << ',' << row.rounds << ',' << row.advice_bits << ','
            << row.verdict << '\n';
        if (row.verdict != "ok") all_ok = false;
      }
      std::cout << rows.size() << " graphs -> " << csv_path << '\n';
      return all_ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
