// targetum — targeted high-utility itemset mining with a queryable index.
//
// Subcommands:
//   mine   build the index once, report mining stats, optionally dump it
//   query  one targeted query against a freshly built index
//   shell  build once, answer many queries interactively
//   bench  grid of (min-util, target-min-util, target, variant) cells

#include <sys/resource.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "targetum/dataset.hpp"
#include "targetum/errors.hpp"
#include "targetum/miner.hpp"
#include "targetum/oracle.hpp"
#include "targetum/query.hpp"
#include "targetum/tptree.hpp"

namespace {

using namespace targetum;
using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

long peak_rss_kb() {
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return ru.ru_maxrss;  // kilobytes on Linux; best-effort, approximate
}

std::vector<ItemId> parse_ids(const std::string& text) {
  std::vector<ItemId> ids;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    ItemId v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size() || v < 0)
      throw UsageError("bad item id '" + tok + "'");
    ids.push_back(v);
  }
  return ids;
}

StrategySet parse_mask(const std::string& mask) {
  StrategySet s{false, false, false};
  if (mask == "-" || mask == "0" || mask == "none") return s;
  for (char c : mask) {
    switch (c) {
      case '1': s.s1 = true; break;
      case '2': s.s2 = true; break;
      case '3': s.s3 = true; break;
      default:
        throw UsageError("bad strategy mask '" + mask +
                         "' (use characters 1, 2, 3, or 0 for none)");
    }
  }
  return s;
}

std::string mask_string(const StrategySet& s) {
  std::string out;
  if (s.s1) out += '1';
  if (s.s2) out += '2';
  if (s.s3) out += '3';
  return out.empty() ? "-" : out;
}

struct Pipeline {
  QuantDatabase db;
  RevisedDatabase rdb;
  TPTree tree;
  MiningStats stats;
  ItemsetTable huis;  // id-sorted; only filled when collect is set
  double parse_ms = 0;
  double build_ms = 0;
};

Pipeline build_pipeline(const std::string& input, Money sigma, bool collect) {
  auto t0 = Clock::now();
  QuantDatabase db = parse_database_file(input);
  auto t1 = Clock::now();
  RevisedDatabase rdb = revise_database(db, sigma);
  TPTree tree(rdb.order, sigma, rdb.twu);
  ItemsetTable huis;
  MiningStats stats = mine(rdb, sigma, [&](const HuiEmission& h) {
    tree.insert_hui(h.itemset, h.ius, h.rus, h.twus);
    if (collect) {
      std::vector<ItemId> ids(h.itemset.begin(), h.itemset.end());
      std::sort(ids.begin(), ids.end());
      huis.emplace(std::move(ids), h.utility());
    }
  });
  auto t2 = Clock::now();
  return {std::move(db),    std::move(rdb),      std::move(tree),
          stats,            std::move(huis),     ms_between(t0, t1),
          ms_between(t1, t2)};
}

void print_thuis_tsv(std::ostream& out, const std::vector<Thui>& thuis) {
  for (const auto& t : thuis) {
    for (std::size_t i = 0; i < t.itemset.size(); ++i) {
      if (i) out << ' ';
      out << t.itemset[i];
    }
    out << '\t' << t.utility << '\n';
  }
}

int run_mine(const std::string& input, Money sigma,
             const std::string& dump_path) {
  Pipeline p = build_pipeline(input, sigma, false);
  if (!dump_path.empty()) {
    std::ofstream out(dump_path);
    if (!out) throw IoError("cannot write " + dump_path);
    dump_tree(p.tree, out);
  }
  std::cout << "huis " << p.stats.hui_count << '\n'
            << "nodes " << p.tree.node_count() << '\n'
            << "order_items " << p.rdb.order.size() << '\n'
            << "candidates " << p.stats.candidate_count << '\n'
            << "joins " << p.stats.join_count << '\n'
            << "db_scans " << p.stats.db_scans << '\n';
  std::cout.setf(std::ios::fixed);
  std::cout.precision(3);
  std::cout << "parse_ms " << p.parse_ms << '\n'
            << "build_ms " << p.build_ms << '\n';
  return 0;
}

int run_query(const std::string& input, Money sigma,
              std::optional<Money> xi_opt, const std::string& target_text,
              const std::string& mask, const std::string& format,
              bool want_stats, const std::string& sort_key) {
  Money xi = xi_opt.value_or(sigma);  // default: same bar as the index
  StrategySet flags = parse_mask(mask);
  std::vector<ItemId> raw = parse_ids(target_text);

  Pipeline p = build_pipeline(input, sigma, false);
  TargetQuery q = normalize_query(raw, xi, p.rdb.order);
  auto t0 = Clock::now();
  QueryResult res = ::targetum::run_query(p.tree, q, flags);
  auto t1 = Clock::now();
  double query_ms = ms_between(t0, t1);

  if (sort_key == "utility")
    std::stable_sort(res.thuis.begin(), res.thuis.end(),
                     [](const Thui& a, const Thui& b) {
                       return a.utility > b.utility;
                     });

  if (format == "json") {
    nlohmann::json j;
    j["thuis"] = nlohmann::json::array();
    for (const auto& t : res.thuis)
      j["thuis"].push_back({{"items", t.itemset}, {"utility", t.utility}});
    j["huis"] = p.stats.hui_count;
    j["visited_nodes"] = res.visited_nodes;
    j["db_scans"] = p.stats.db_scans;
    j["strategies"] = mask_string(flags);
    if (want_stats) {
      j["parse_ms"] = p.parse_ms;
      j["build_ms"] = p.build_ms;
      j["query_ms"] = query_ms;
    }
    std::cout << j.dump(2) << '\n';
  } else {
    print_thuis_tsv(std::cout, res.thuis);
    if (want_stats) {
      std::cout << "# huis " << p.stats.hui_count << '\n'
                << "# thuis " << res.thuis.size() << '\n'
                << "# visited_nodes " << res.visited_nodes << '\n'
                << "# db_scans " << p.stats.db_scans << '\n'
                << "# strategies " << mask_string(flags) << '\n';
      std::cout.setf(std::ios::fixed);
      std::cout.precision(3);
      std::cout << "# parse_ms " << p.parse_ms << '\n'
                << "# build_ms " << p.build_ms << '\n'
                << "# query_ms " << query_ms << '\n';
    }
  }
  return 0;
}

int run_shell(const std::string& input, Money sigma) {
  Pipeline p = build_pipeline(input, sigma, false);
  const bool tty = isatty(fileno(stdin)) != 0;
  std::cout << "# ready huis=" << p.stats.hui_count
            << " nodes=" << p.tree.node_count()
            << " db_scans=" << p.stats.db_scans << '\n';

  StrategySet flags;
  std::uint64_t queries = 0, last_visited = 0;
  std::string line;
  for (;;) {
    if (tty) std::cout << "targetum> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    std::istringstream in(line);
    std::string cmd;
    if (!(in >> cmd)) continue;

    try {
      if (cmd == "quit" || cmd == "exit") break;
      if (cmd == "help") {
        std::cout << "commands: query <min-util> <item> [item...] | stats | "
                     "strategies <mask> | quit\n";
      } else if (cmd == "stats") {
        std::cout << "# db_scans=" << p.stats.db_scans
                  << " huis=" << p.stats.hui_count
                  << " nodes=" << p.tree.node_count() << " queries=" << queries
                  << " last_visited=" << last_visited << '\n';
      } else if (cmd == "strategies") {
        std::string mask;
        if (!(in >> mask)) throw UsageError("usage: strategies <mask>");
        flags = parse_mask(mask);
        std::cout << "# strategies=" << mask_string(flags) << '\n';
      } else if (cmd == "query") {
        std::string rest;
        std::getline(in, rest);
        std::istringstream args(rest);
        std::string xi_tok;
        if (!(args >> xi_tok))
          throw UsageError("usage: query <min-util> <item> [item...]");
        Money xi = 0;
        auto [ptr, ec] =
            std::from_chars(xi_tok.data(), xi_tok.data() + xi_tok.size(), xi);
        if (ec != std::errc{} || ptr != xi_tok.data() + xi_tok.size() || xi < 0)
          throw UsageError("bad min-util '" + xi_tok + "'");
        std::string items_text;
        std::getline(args, items_text);
        std::vector<ItemId> raw = parse_ids(items_text);
        TargetQuery q = normalize_query(raw, xi, p.rdb.order);
        auto t0 = Clock::now();
        QueryResult res = ::targetum::run_query(p.tree, q, flags);
        auto t1 = Clock::now();
        ++queries;
        last_visited = res.visited_nodes;
        print_thuis_tsv(std::cout, res.thuis);
        std::cout << "# thuis=" << res.thuis.size()
                  << " visited=" << res.visited_nodes << " query_ms=";
        std::cout.setf(std::ios::fixed);
        std::cout.precision(3);
        std::cout << ms_between(t0, t1) << '\n';
        std::cout.unsetf(std::ios::fixed);
      } else {
        throw UsageError("unknown command '" + cmd + "' (try help)");
      }
    } catch (const UsageError& e) {
      std::cout << "error: " << e.what() << '\n';
    }
  }
  return 0;
}

std::vector<std::vector<ItemId>> load_targets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::vector<ItemId>> targets;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    targets.push_back(parse_ids(line));
  }
  if (targets.empty()) throw ParseError("no targets in " + path);
  return targets;
}

int run_bench(const std::string& input, std::vector<Money> sigmas,
              std::vector<Money> xis, const std::string& targets_path,
              std::vector<std::string> variant_names,
              const std::string& out_path) {
  auto targets = load_targets(targets_path);
  std::vector<std::pair<std::string, StrategySet>> variants;
  for (const auto& name : variant_names) {
    if (name == "full")
      variants.push_back({name, {true, true, true}});
    else if (name == "s13")
      variants.push_back({name, {true, false, true}});
    else if (name == "s23")
      variants.push_back({name, {false, true, true}});
    else if (name == "s3")
      variants.push_back({name, {false, false, true}});
    else
      throw UsageError("unknown variant '" + name +
                       "' (expected full, s13, s23, s3)");
  }

  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write " + out_path);

  std::printf("%8s %8s %-12s %-8s %8s %10s %9s %10s\n", "min_util", "tgt_util",
              "target", "variant", "thuis", "thuis_mp", "visited", "query_ms");
  for (Money sigma : sigmas) {
    Pipeline p = build_pipeline(input, sigma, true);
    std::printf("# min_util %lld: huis %llu nodes %zu build_ms %.3f\n",
                static_cast<long long>(sigma),
                static_cast<unsigned long long>(p.stats.hui_count),
                p.tree.node_count(), p.build_ms);
    std::vector<Money> xi_list = xis.empty() ? std::vector<Money>{sigma} : xis;
    for (Money xi : xi_list) {
      for (const auto& target : targets) {
        std::vector<ItemId> sorted_target = target;
        std::sort(sorted_target.begin(), sorted_target.end());
        sorted_target.erase(
            std::unique(sorted_target.begin(), sorted_target.end()),
            sorted_target.end());
        std::size_t mp = post_process_huis(p.huis, sorted_target, xi).size();
        for (const auto& [vname, vflags] : variants) {
          TargetQuery q = normalize_query(target, xi, p.rdb.order);
          auto t0 = Clock::now();
          QueryResult res = ::targetum::run_query(p.tree, q, vflags);
          auto t1 = Clock::now();
          double query_ms = ms_between(t0, t1);

          std::string tstr;
          for (std::size_t i = 0; i < target.size(); ++i)
            tstr += (i ? "," : "") + std::to_string(target[i]);
          std::printf("%8lld %8lld %-12s %-8s %8zu %10zu %9llu %10.3f\n",
                      static_cast<long long>(sigma),
                      static_cast<long long>(xi), tstr.c_str(), vname.c_str(),
                      res.thuis.size(), mp,
                      static_cast<unsigned long long>(res.visited_nodes),
                      query_ms);

          nlohmann::json row;
          row["min_util"] = sigma;
          row["target_min_util"] = xi;
          row["target"] = target;
          row["variant"] = vname;
          row["huis"] = p.stats.hui_count;
          row["thuis"] = res.thuis.size();
          row["thuis_mp"] = mp;
          row["visited_nodes"] = res.visited_nodes;
          row["candidates"] = p.stats.candidate_count;
          row["joins"] = p.stats.join_count;
          row["db_scans"] = p.stats.db_scans;
          row["nodes"] = p.tree.node_count();
          row["build_ms"] = p.build_ms;
          row["query_ms"] = query_ms;
          row["peak_rss_kb_approx"] = peak_rss_kb();
          out << row.dump() << '\n';
        }
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"targeted high-utility itemset mining"};
  app.require_subcommand(1);

  std::string input, dump_path, target_text, mask = "123", format = "tsv";
  std::string sort_key, targets_path, out_path = "bench.jsonl";
  Money sigma = 0;
  std::optional<Money> xi;
  bool want_stats = false;
  std::vector<Money> sigmas, xis;
  std::vector<std::string> variant_names = {"full", "s13", "s23", "s3"};

  auto* mine_cmd = app.add_subcommand("mine", "mine and index one database");
  mine_cmd->add_option("--input", input, "transaction database")->required();
  mine_cmd->add_option("--min-util", sigma, "minimum utility")->required();
  mine_cmd->add_option("--dump-tree", dump_path, "write the index as text");

  auto* query_cmd = app.add_subcommand("query", "run one targeted query");
  query_cmd->add_option("--input", input, "transaction database")->required();
  query_cmd->add_option("--min-util", sigma, "minimum utility")->required();
  query_cmd->add_option("--target-min-util", xi,
                        "target minimum utility (default: --min-util)");
  query_cmd->add_option("--target", target_text, "target item ids, quoted")
      ->required();
  query_cmd->add_option("--strategies", mask, "pruning mask, subset of 123");
  query_cmd->add_option("--format", format, "tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));
  query_cmd->add_option("--sort", sort_key, "re-sort results")
      ->check(CLI::IsMember({"utility"}));
  query_cmd->add_flag("--stats", want_stats, "print run statistics");

  auto* shell_cmd = app.add_subcommand("shell", "interactive query session");
  shell_cmd->add_option("--input", input, "transaction database")->required();
  shell_cmd->add_option("--min-util", sigma, "minimum utility")->required();

  auto* bench_cmd = app.add_subcommand("bench", "batch measurement grid");
  bench_cmd->add_option("--input", input, "transaction database")->required();
  bench_cmd->add_option("--min-util", sigmas, "minimum utility values")
      ->required();
  bench_cmd->add_option("--target-min-util", xis,
                        "target minimum utility values (default: --min-util)");
  bench_cmd->add_option("--targets", targets_path, "file of target itemsets")
      ->required();
  bench_cmd->add_option("--variants", variant_names,
                        "strategy variants: full, s13, s23, s3");
  bench_cmd->add_option("--out", out_path, "JSONL report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (mine_cmd->parsed()) return run_mine(input, sigma, dump_path);
    if (query_cmd->parsed())
      return run_query(input, sigma, xi, target_text, mask, format, want_stats,
                       sort_key);
    if (shell_cmd->parsed()) return run_shell(input, sigma);
    if (bench_cmd->parsed())
      return run_bench(input, sigmas, xis, targets_path, variant_names,
                       out_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 70;
  }
  return 0;
}
